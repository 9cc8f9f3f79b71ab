#include "nullfront/frontgen.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "nullfront/lorentz.hpp"

namespace nullfront::frontgen {

namespace {

int svd_rank(const Eigen::MatrixXd& m, double tol, double* smin_ratio = nullptr) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (smin_ratio) *smin_ratio = sv(0) > 0 ? sv(sv.size() - 1) / sv(0) : 0.0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++r;
    return r;
}

}  // namespace

NullFront::NullFront(geometry::GeneratingFront generator, Sigma sigma, TWindow window,
                     int t_count)
    : generator_(std::move(generator)), sigma_(sigma), window_(window), t_count_(t_count) {
    if (!window_.valid()) throw std::invalid_argument("empty t_window");
    if (t_count_ < 2) throw std::invalid_argument("t_count must be >= 2");
}

double NullFront::t_value(int j) const {
    return window_.lo + (window_.hi - window_.lo) * j / (t_count_ - 1);
}

Eigen::VectorXd NullFront::point(double t, int k) const {
    const double teff = t + shift_;
    const int n = space_dim();
    Eigen::VectorXd p(n + 1);
    if (sigma_ == Sigma::Plus) {
        p(0) = teff;
        p.tail(n) = generator_.position(k) + teff * generator_.normal(k);
    } else {
        // time reflection of the plus front at -t
        const double s = -teff;
        p(0) = -s;
        p.tail(n) = generator_.position(k) + s * generator_.normal(k);
    }
    return p;
}

Eigen::VectorXd NullFront::xi_hat(int k) const {
    const int n = space_dim();
    Eigen::VectorXd xi(n + 1);
    xi(0) = 1.0;
    xi.tail(n) = sign_of(sigma_) * generator_.normal(k);
    return xi;
}

std::vector<int> NullFront::jet_nodes() const {
    std::vector<int> nodes;
    for (int k = 0; k < x_count(); ++k)
        if (generator_.node_interior(k)) nodes.push_back(k);
    return nodes;
}

NullFront normal_form(const geometry::GeneratingFront& generator, Sigma sigma, TWindow window,
                      int t_count) {
    return NullFront(generator, sigma, window, t_count);
}

Eigen::MatrixXd e_normalized_field(const NullFront& front) {
    const int n = front.space_dim();
    Eigen::MatrixXd xi(n + 1, front.x_count());
    for (int k = 0; k < front.x_count(); ++k) {
        const Eigen::VectorXd x = front.xi_hat(k);
        const double enorm2 = lorentz::euclidean_inner(x, x);
        const double mink = lorentz::minkowski_inner(x, x);
        if (std::abs(enorm2 - 2.0) > 1e-8 || std::abs(mink) > 1e-8 || !(x(0) > 0.0))
            throw std::runtime_error("E-normalization violated: generator normal is not unit");
        xi.col(k) = x;
    }
    return xi;
}

FrontJet jet(const NullFront& front, double t, int k) {
    const int n = front.space_dim();
    if (!front.generator().node_interior(k))
        throw std::invalid_argument("jet requested at a non-interior grid node");

    FrontJet out;
    out.dF.resize(n + 1, n);
    out.Mt.resize(2 * (n + 1), n);
    const double teff = t + front.t_shift();
    const double sg = sign_of(front.sigma());
    const auto& gen = front.generator();

    out.dF.col(0) = front.xi_hat(k);  // F_t = xi_hat exactly
    Eigen::MatrixXd xi_u(n + 1, n - 1);

    if (n == 2) {
        const Eigen::Vector2d fu = gen.curve_d1(k);
        const Eigen::Vector2d nu_u = gen.normal_d1(k);
        out.dF(0, 1) = 0.0;
        out.dF.col(1).tail(2) = fu + teff * (sg * nu_u);
        xi_u(0, 0) = 0.0;
        xi_u.col(0).tail(2) = sg * nu_u;
    } else {
        const Eigen::Vector3d fu = gen.surface_du(k);
        const Eigen::Vector3d fv = gen.surface_dv(k);
        const Eigen::Vector3d nu_u = gen.normal_du(k);
        const Eigen::Vector3d nu_v = gen.normal_dv(k);
        out.dF(0, 1) = 0.0;
        out.dF(0, 2) = 0.0;
        out.dF.col(1).tail(3) = fu + teff * (sg * nu_u);
        out.dF.col(2).tail(3) = fv + teff * (sg * nu_v);
        xi_u.setZero();
        xi_u.col(0).tail(3) = sg * nu_u;
        xi_u.col(1).tail(3) = sg * nu_v;
    }

    out.Mt.topRows(n + 1) = out.dF;
    out.Mt.block(n + 1, 0, n + 1, 1).setZero();  // xi_hat_t = 0
    out.Mt.block(n + 1, 1, n + 1, n - 1) = xi_u;

    out.rank_dF = svd_rank(out.dF, 1e-8, &out.smin_ratio_dF);
    out.rank_Mt = svd_rank(out.Mt, 1e-8);
    return out;
}

bool is_singular_sample(const NullFront& front, double t, int k, double tol) {
    const FrontJet j = jet(front, t, k);
    return j.smin_ratio_dF <= tol;
}

Eigen::MatrixXd induced_metric(const NullFront& front, double t, int k) {
    const FrontJet j = jet(front, t, k);
    const int n = front.space_dim();
    Eigen::MatrixXd g(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            g(a, b) = lorentz::minkowski_inner(Eigen::VectorXd(j.dF.col(a)),
                                               Eigen::VectorXd(j.dF.col(b)));
            g(b, a) = g(a, b);
        }
    return g;
}

Eigen::VectorXd induced_metric_eigenvalues(const NullFront& front, double t, int k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(induced_metric(front, t, k));
    return es.eigenvalues();
}

NullFront parallel_front(const NullFront& front, double delta) {
    NullFront out = front;
    out.shift_ = front.shift_ + delta;
    out.window_.lo = front.window_.lo - delta;
    out.window_.hi = front.window_.hi - delta;
    return out;
}

LiftCheck lift_embedding_check(const NullFront& front, double tol) {
    const auto& gen = front.generator();
    const int n = gen.ambient_dim();
    const int count = gen.node_count();
    Eigen::MatrixXd l(2 * n, count);
    for (int k = 0; k < count; ++k) {
        l.col(k).head(n) = gen.position(k);
        l.col(k).tail(n) = gen.normal(k);
    }
    LiftCheck res;
    res.ok = true;
    res.min_separation = std::numeric_limits<double>::infinity();
    for (int a = 0; a < count; ++a)
        for (int b = a + 1; b < count; ++b) {
            if (gen.nodes_adjacent(a, b, 2)) continue;
            const double d = (l.col(a) - l.col(b)).norm();
            if (d < res.min_separation) {
                res.min_separation = d;
                res.worst_a = a;
                res.worst_b = b;
            }
        }
    if (res.min_separation <= tol) res.ok = false;
    return res;
}

Eigen::MatrixXd slice_polyline(const NullFront& front, double c) {
    const int n = front.space_dim();
    Eigen::MatrixXd pts(n + 1, front.x_count());
    for (int k = 0; k < front.x_count(); ++k) pts.col(k) = front.point(c, k);
    return pts;
}

}  // namespace nullfront::frontgen
