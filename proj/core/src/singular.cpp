#include "nullfront/singular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nullfront::singular {

namespace {

int wrap(int k, int n) { return ((k % n) + n) % n; }

}  // namespace

SingularLocus singular_locus(const frontgen::NullFront& front) {
    const auto& gen = front.generator();
    const geometry::CurvatureData data = geometry::curvature(gen);
    const double sg = frontgen::sign_of(front.sigma());

    SingularLocus locus;
    const bool closed = gen.closed();
    for (int i = 0; i < data.branches(); ++i) {
        const double max_abs = data.lambda.row(i).cwiseAbs().maxCoeff();
        const double floor = 1e-6 * max_abs;
        const int nn = data.nodes();
        for (int k = 0; k < nn; ++k) {
            const double lam = data.lambda(i, k);
            if (max_abs == 0.0 || std::abs(lam) <= floor) {
                locus.unbounded.emplace_back(k, i);
                continue;
            }
            // a sign change against a grid neighbor brackets a zero of
            // lambda, so the branch escapes to infinity on this arc
            const int next = closed ? wrap(k + 1, nn) : std::min(k + 1, nn - 1);
            const int prev = closed ? wrap(k - 1, nn) : std::max(k - 1, 0);
            if (lam * data.lambda(i, next) < 0.0 || lam * data.lambda(i, prev) < 0.0)
                locus.unbounded.emplace_back(k, i);
            LocusPoint p;
            p.x_index = k;
            p.branch = i;
            // F(t,x) is singular where t + shift = sigma / lambda_i(x).
            p.t = sg / lam - front.t_shift();
            p.image = front.point(p.t, k);
            locus.points.push_back(std::move(p));
        }
    }

    if (gen.ambient_dim() == 2) {
        const geometry::VertexSet vs = geometry::vertices(gen, data);
        locus.constant_curvature = vs.constant_curvature;
    }
    return locus;
}

SingularLocus classify(SingularLocus locus, const frontgen::NullFront& front) {
    const auto& gen = front.generator();
    if (gen.ambient_dim() != 2)
        throw std::invalid_argument("classification criteria are available for n = 2 only");

    if (locus.constant_curvature) {
        for (auto& p : locus.points) p.cls = PointClass::NonCuspidal;
        return locus;
    }

    const geometry::CurvatureData data = geometry::curvature(gen);
    const geometry::VertexSet vs = geometry::vertices(gen, data);
    const int n = gen.node_count();
    const bool closed = gen.kind() == geometry::FrontKind::ClosedCurve;
    const double h = gen.param_step();
    const double span = closed ? h * n : gen.param(n - 1) - gen.param(0);

    // kappa'' in arc length, for the swallowtail / degenerate-vertex notes
    Eigen::VectorXd kpp(n);
    for (int k = 0; k < n; ++k) {
        const int a = closed ? wrap(k - 1, n) : std::max(k - 1, 0);
        const int b = closed ? wrap(k + 1, n) : std::min(k + 1, n - 1);
        kpp(k) = (data.kappa_prime_arc(b) - data.kappa_prime_arc(a)) /
                 ((b == a ? 1.0 : 2.0) * h * gen.speed(k));
    }
    const double max_kpp = kpp.cwiseAbs().maxCoeff();
    // kappa'' comes from a second-order stencil; treat it as zero below the
    // truncation scale
    const double eps_kpp = std::max(1e-6, 50.0 * h * h) * std::max(1.0, max_kpp);

    // Velocity of the singular-set image C(s), by 4th order differences of
    // the locus points along s.  This is the independent cross-check.
    std::vector<const LocusPoint*> by_node(n, nullptr);
    for (const auto& p : locus.points)
        if (p.branch == 0) by_node[p.x_index] = &p;
    Eigen::VectorXd vel = Eigen::VectorXd::Constant(n, -1.0);
    auto img = [&](int k) -> const Eigen::VectorXd& {
        return by_node[closed ? wrap(k, n) : std::clamp(k, 0, n - 1)]->image;
    };
    for (int k = 0; k < n; ++k) {
        if (!by_node[k]) continue;
        bool stencil_ok = true;
        for (int d = -2; d <= 2; ++d) {
            const int j = closed ? wrap(k + d, n) : k + d;
            if (j < 0 || j >= n || !by_node[j]) stencil_ok = false;
        }
        if (!stencil_ok) continue;
        const Eigen::VectorXd c =
            (-img(k + 2) + 8.0 * img(k + 1) - 8.0 * img(k - 1) + img(k - 2)) / (12.0 * h);
        vel(k) = c.norm();
    }
    const double max_vel = vel.maxCoeff();

    const double max_kdot = data.kappa_dot.cwiseAbs().maxCoeff();
    const double eps_kappa = 1e-8 * max_kdot;
    // matched threshold for the finite-difference velocity test; the h^4
    // term absorbs the stencil truncation error at vertices
    const double eps_vel = std::max(1e-6, 50.0 * h * h * h * h) * std::max(max_vel, 0.0);

    auto near_vertex = [&](double s) {
        for (const auto& v : vs.items) {
            double d = std::abs(s - v.param);
            if (closed) d = std::min(d, std::abs(span - d));
            if (d <= 0.5 * h) return true;
        }
        return false;
    };

    for (auto& p : locus.points) {
        if (p.branch != 0) continue;
        const int k = p.x_index;
        p.kappa_dot = data.kappa_dot(k);
        p.velocity_norm = vel(k);

        const bool zero_kappa = std::abs(p.kappa_dot) <= eps_kappa;
        if (vel(k) < 0.0) {
            // no complete velocity stencil (locus gap); fall back on kappa'
            p.cls = zero_kappa ? PointClass::NonCuspidal : PointClass::CuspidalEdge;
        } else {
            const bool zero_vel = vel(k) <= eps_vel;
            if (zero_kappa != zero_vel) {
                p.cls = PointClass::Undetermined;
                continue;
            }
            p.cls = zero_kappa ? PointClass::NonCuspidal : PointClass::CuspidalEdge;
        }
        if (p.cls == PointClass::NonCuspidal) {
            if (!near_vertex(gen.param(k))) {
                p.cls = PointClass::Undetermined;
                continue;
            }
            if (std::abs(kpp(k)) > eps_kpp)
                p.swallowtail_expected = true;
            else
                p.degenerate_vertex = true;
        }
    }
    return locus;
}

CompletenessReport completeness_check(const frontgen::NullFront& front) {
    const auto& gen = front.generator();
    const geometry::CurvatureData data = geometry::curvature(gen);

    CompletenessReport rep;
    rep.domain_compact = gen.closed();
    if (!rep.domain_compact) rep.reasons.push_back("parameter domain not compact");

    double global_max = 0.0;
    for (int i = 0; i < data.branches(); ++i)
        global_max = std::max(global_max, data.lambda.row(i).cwiseAbs().maxCoeff());
    const double active_floor = 1e-12 * (1.0 + global_max);

    bool all_bounded = true;
    int positive = 0, negative = 0;
    for (int i = 0; i < data.branches(); ++i) {
        BranchReport br;
        br.max_abs = data.lambda.row(i).cwiseAbs().maxCoeff();
        br.min_abs = data.lambda.row(i).cwiseAbs().minCoeff();
        br.active = br.max_abs > active_floor;
        const double mn = data.lambda.row(i).minCoeff();
        const double mx = data.lambda.row(i).maxCoeff();
        if (mn > 0.0)
            br.sign = 1;
        else if (mx < 0.0)
            br.sign = -1;
        else
            br.sign = 0;
        // a sign change crosses zero between grid nodes even when every node
        // value clears the threshold
        br.bounded_away = br.active && br.sign != 0 && br.min_abs >= 1e-6 * br.max_abs;
        if (br.sign == 1) ++positive;
        if (br.sign == -1) ++negative;
        if (!br.bounded_away) {
            all_bounded = false;
            std::string why = ": identically flat (no singular points)";
            if (br.active)
                why = br.sign == 0 ? ": unbounded singular set (lambda changes sign)"
                                   : ": unbounded singular set (lambda approaches 0)";
            rep.reasons.push_back("branch " + std::to_string(i) + why);
        }
        rep.branches.push_back(br);
        rep.singular_nonempty = rep.singular_nonempty || br.active;
    }
    if (!rep.singular_nonempty) rep.reasons.push_back("singular set empty");

    rep.all_same_sign = (positive == static_cast<int>(rep.branches.size())) ||
                        (negative == static_cast<int>(rep.branches.size()));
    rep.complete = rep.domain_compact && rep.singular_nonempty && all_bounded;
    return rep;
}

FourVertexReport four_vertex_audit(const frontgen::NullFront& front) {
    const auto& gen = front.generator();
    if (gen.ambient_dim() != 2)
        throw std::invalid_argument("four-vertex audit applies to curve-generated fronts");

    FourVertexReport rep;
    SingularLocus locus = singular_locus(front);
    if (locus.constant_curvature) {
        rep.excluded_constant_curvature = true;
        rep.note = "constant curvature generator; audit not applicable";
        return rep;
    }
    locus = classify(std::move(locus), front);

    rep.embedded = geometry::embedded(gen);
    rep.complete = completeness_check(front).complete;
    for (const auto& p : locus.points)
        if (p.cls == PointClass::NonCuspidal) ++rep.non_cuspidal_count;

    rep.hypothesis_met = rep.embedded && rep.complete;
    if (rep.hypothesis_met) {
        rep.implication_holds = rep.non_cuspidal_count >= 4;
        rep.note = rep.implication_holds ? "embedded complete front has >= 4 non-cuspidal points"
                                         : "four-vertex implication VIOLATED";
    } else {
        rep.note = "hypothesis not met (front not embedded or not complete)";
    }
    return rep;
}

}  // namespace nullfront::singular
