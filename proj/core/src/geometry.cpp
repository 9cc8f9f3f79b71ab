#include "nullfront/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nullfront::geometry {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Vector2d rot90(const Eigen::Vector2d& v) { return {-v.y(), v.x()}; }

int wrap(int k, int n) { return ((k % n) + n) % n; }

int cyclic_distance(int a, int b, int n) {
    int d = std::abs(a - b);
    return std::min(d, n - d);
}

// Proper / improper intersection test for 2D segments.
bool segments_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2,
                        const Eigen::Vector2d& q1, const Eigen::Vector2d& q2) {
    auto orient = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                     const Eigen::Vector2d& c) {
        const double v = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
        const double scale = (b - a).norm() * ((c - a).norm() + (c - b).norm());
        if (std::abs(v) <= 1e-14 * scale) return 0;
        return v > 0 ? 1 : -1;
    };
    const int o1 = orient(p1, p2, q1);
    const int o2 = orient(p1, p2, q2);
    const int o3 = orient(q1, q2, p1);
    const int o4 = orient(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    auto on_segment = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                         const Eigen::Vector2d& c) {
        return c.x() >= std::min(a.x(), b.x()) - 1e-14 && c.x() <= std::max(a.x(), b.x()) + 1e-14 &&
               c.y() >= std::min(a.y(), b.y()) - 1e-14 && c.y() <= std::max(a.y(), b.y()) + 1e-14;
    };
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

GeneratingFront GeneratingFront::build_curve(const CurveEvaluator& ev, int grid_size, double t0,
                                             double t1) {
    if (grid_size < 8) throw std::invalid_argument("curve grid size must be >= 8");
    if (!(t1 > t0)) throw std::invalid_argument("empty parameter interval");
    GeneratingFront f;
    f.kind_ = FrontKind::ClosedCurve;
    f.n_ = 2;
    f.step_ = (t1 - t0) / grid_size;
    f.params_.resize(grid_size);
    f.positions_.resize(2, grid_size);
    f.normals_.resize(2, grid_size);
    f.speeds_.resize(grid_size);
    f.curve_ev_ = ev;
    double max_speed = 0.0;
    for (int k = 0; k < grid_size; ++k) {
        const double t = t0 + f.step_ * k;
        f.params_(k) = t;
        f.positions_.col(k) = ev.pos(t);
        const Eigen::Vector2d d1 = ev.d1(t);
        const double sp = d1.norm();
        f.speeds_(k) = sp;
        max_speed = std::max(max_speed, sp);
        if (sp > 0.0) f.normals_.col(k) = rot90(d1 / sp);
    }
    for (int k = 0; k < grid_size; ++k)
        if (f.speeds_(k) <= 1e-10 * max_speed)
            throw std::runtime_error("not an immersion: |gamma'| vanishes at a grid node");
    return f;
}

GeneratingFront GeneratingFront::build_open_curve(const CurveEvaluator& ev, int grid_size,
                                                  double t0, double t1) {
    if (grid_size < 8) throw std::invalid_argument("curve grid size must be >= 8");
    if (!(t1 > t0)) throw std::invalid_argument("empty parameter interval");
    GeneratingFront f;
    f.kind_ = FrontKind::OpenCurve;
    f.n_ = 2;
    f.step_ = (t1 - t0) / (grid_size - 1);
    f.params_.resize(grid_size);
    f.positions_.resize(2, grid_size);
    f.normals_.resize(2, grid_size);
    f.speeds_.resize(grid_size);
    f.curve_ev_ = ev;
    double max_speed = 0.0;
    for (int k = 0; k < grid_size; ++k) {
        const double t = t0 + f.step_ * k;
        f.params_(k) = t;
        f.positions_.col(k) = ev.pos(t);
        const Eigen::Vector2d d1 = ev.d1(t);
        const double sp = d1.norm();
        f.speeds_(k) = sp;
        max_speed = std::max(max_speed, sp);
        if (sp > 0.0) f.normals_.col(k) = rot90(d1 / sp);
    }
    for (int k = 0; k < grid_size; ++k)
        if (f.speeds_(k) <= 1e-10 * max_speed)
            throw std::runtime_error("not an immersion: |gamma'| vanishes at a grid node");
    return f;
}

GeneratingFront GeneratingFront::from_curve_samples(Eigen::Matrix2Xd positions,
                                                    Eigen::Matrix2Xd normals, bool closed,
                                                    Eigen::VectorXd params) {
    const int n = static_cast<int>(positions.cols());
    if (n < 4) throw std::invalid_argument("need at least 4 curve samples");
    if (normals.cols() != n) throw std::invalid_argument("positions/normals size mismatch");
    GeneratingFront f;
    f.kind_ = closed ? FrontKind::ClosedCurve : FrontKind::OpenCurve;
    f.n_ = 2;
    f.positions_ = positions;
    f.normals_ = normals;
    if (params.size() == n) {
        f.params_ = std::move(params);
        f.step_ = n > 1 ? f.params_(1) - f.params_(0) : 1.0;
    } else {
        f.step_ = closed ? kTwoPi / n : 1.0;
        f.params_.resize(n);
        for (int k = 0; k < n; ++k) f.params_(k) = f.step_ * k;
    }
    f.speeds_.resize(n);
    for (int k = 0; k < n; ++k) f.speeds_(k) = f.fd_curve(k, 1).norm();
    return f;
}

GeneratingFront GeneratingFront::build_surface_patch(const SurfaceEvaluator& ev, int nu_count,
                                                     int nv_count, double u0, double u1,
                                                     double v0, double v1) {
    if (nu_count < 8 || nv_count < 8) throw std::invalid_argument("surface grid must be >= 8x8");
    GeneratingFront f;
    f.kind_ = FrontKind::SurfacePatch;
    f.n_ = 3;
    f.nu_count_ = nu_count;
    f.nv_count_ = nv_count;
    f.surf_ev_ = ev;
    f.params_u_.setLinSpaced(nu_count, u0, u1);
    f.params_v_.setLinSpaced(nv_count, v0, v1);
    f.positions_.resize(3, nu_count * nv_count);
    f.normals_.resize(3, nu_count * nv_count);
    for (int iu = 0; iu < nu_count; ++iu)
        for (int iv = 0; iv < nv_count; ++iv) {
            const int k = f.node_index(iu, iv);
            const double u = f.params_u_(iu), v = f.params_v_(iv);
            f.positions_.col(k) = ev.pos(u, v);
            if (ev.nu) {
                f.normals_.col(k) = ev.nu(u, v);
            } else {
                Eigen::Vector3d cr = ev.du(u, v).cross(ev.dv(u, v));
                const double nn = cr.norm();
                if (nn <= 0.0) throw std::runtime_error("metric singular at node");
                f.normals_.col(k) = cr / nn;
            }
        }
    return f;
}

GeneratingFront GeneratingFront::build_closed_surface(const SurfaceEvaluator& ev, int n_lat,
                                                      int n_lon) {
    if (n_lat < 8 || n_lon < 8) throw std::invalid_argument("surface grid must be >= 8x8");
    GeneratingFront f;
    f.kind_ = FrontKind::ClosedSurface;
    f.n_ = 3;
    f.nu_count_ = n_lat;
    f.nv_count_ = n_lon;
    f.v_periodic_ = true;
    f.pole_rows_ = true;
    f.surf_ev_ = ev;
    // Latitude rows include the poles; the pole rows collapse to points.
    f.params_u_.setLinSpaced(n_lat, 0.0, std::numbers::pi);
    f.params_v_.resize(n_lon);
    for (int iv = 0; iv < n_lon; ++iv) f.params_v_(iv) = kTwoPi * iv / n_lon;
    f.positions_.resize(3, n_lat * n_lon);
    f.normals_.resize(3, n_lat * n_lon);
    for (int iu = 0; iu < n_lat; ++iu)
        for (int iv = 0; iv < n_lon; ++iv) {
            const int k = f.node_index(iu, iv);
            const double u = f.params_u_(iu), v = f.params_v_(iv);
            f.positions_.col(k) = ev.pos(u, v);
            if (ev.nu) {
                f.normals_.col(k) = ev.nu(u, v);
            } else {
                Eigen::Vector3d cr = ev.du(u, v).cross(ev.dv(u, v));
                const double nn = cr.norm();
                if (nn <= 0.0 && iu != 0 && iu != n_lat - 1)
                    throw std::runtime_error("metric singular at node");
                f.normals_.col(k) = nn > 0 ? Eigen::Vector3d(cr / nn) : Eigen::Vector3d::Zero();
            }
        }
    // Pole normals from the evaluator when the cross product degenerates.
    if (!ev.nu)
        for (int iv = 0; iv < n_lon; ++iv) {
            f.normals_.col(f.node_index(0, iv)) = f.normals_.col(f.node_index(1, iv));
            f.normals_.col(f.node_index(n_lat - 1, iv)) = f.normals_.col(f.node_index(n_lat - 2, iv));
        }
    return f;
}

GeneratingFront GeneratingFront::flipped() const {
    GeneratingFront f = *this;
    f.normals_ *= -1.0;
    f.normal_sign_ *= -1.0;
    return f;
}

bool GeneratingFront::has_analytic() const {
    return curve_ev_.has_value() || surf_ev_.has_value();
}

// ---------------------------------------------------------------------------
// curve derivatives

Eigen::VectorXd GeneratingFront::fd_curve(int k, int order) const {
    const int n = node_count();
    const double h = step_;
    auto p = [&](int i) -> Eigen::Vector2d {
        if (kind_ == FrontKind::ClosedCurve) return positions_.col(wrap(i, n));
        return positions_.col(std::clamp(i, 0, n - 1));
    };
    const bool interior = (kind_ == FrontKind::ClosedCurve) || (k >= 2 && k <= n - 3);
    if (order == 1) {
        if (interior)
            return (-p(k + 2) + 8.0 * p(k + 1) - 8.0 * p(k - 1) + p(k - 2)) / (12.0 * h);
        if (k == 0) return (-3.0 * p(0) + 4.0 * p(1) - p(2)) / (2.0 * h);
        if (k == n - 1) return (3.0 * p(n - 1) - 4.0 * p(n - 2) + p(n - 3)) / (2.0 * h);
        return (p(k + 1) - p(k - 1)) / (2.0 * h);
    }
    if (interior)
        return (-p(k + 2) + 16.0 * p(k + 1) - 30.0 * p(k) + 16.0 * p(k - 1) - p(k - 2)) /
               (12.0 * h * h);
    if (k == 0) return (2.0 * p(0) - 5.0 * p(1) + 4.0 * p(2) - p(3)) / (h * h);
    if (k == n - 1)
        return (2.0 * p(n - 1) - 5.0 * p(n - 2) + 4.0 * p(n - 3) - p(n - 4)) / (h * h);
    return (p(k + 1) - 2.0 * p(k) + p(k - 1)) / (h * h);
}

Eigen::Vector2d GeneratingFront::curve_d1(int k) const {
    if (curve_ev_) return curve_ev_->d1(params_(k));
    return fd_curve(k, 1);
}

Eigen::Vector2d GeneratingFront::curve_d2(int k) const {
    if (curve_ev_) return curve_ev_->d2(params_(k));
    return fd_curve(k, 2);
}

bool GeneratingFront::has_curve_d3() const {
    return curve_ev_.has_value() && static_cast<bool>(curve_ev_->d3);
}

Eigen::Vector2d GeneratingFront::curve_d3(int k) const {
    if (!has_curve_d3()) throw std::logic_error("third derivative only available analytically");
    return curve_ev_->d3(params_(k));
}

Eigen::Vector2d GeneratingFront::position_at(double t) const {
    if (!curve_ev_) throw std::logic_error("analytic evaluator required");
    return curve_ev_->pos(t);
}

Eigen::Vector2d GeneratingFront::curve_d1_at(double t) const {
    if (!curve_ev_) throw std::logic_error("analytic evaluator required");
    return curve_ev_->d1(t);
}

Eigen::Vector2d GeneratingFront::normal_at(double t) const {
    if (!curve_ev_) throw std::logic_error("analytic evaluator required");
    const Eigen::Vector2d d1 = curve_ev_->d1(t);
    return normal_sign_ * rot90(d1.normalized());
}

double GeneratingFront::kappa(int k) const {
    if (curve_ev_) return kappa_at(params_(k));
    const Eigen::Vector2d d1 = fd_curve(k, 1);
    const Eigen::Vector2d d2 = fd_curve(k, 2);
    return d2.dot(normals_.col(k)) / d1.squaredNorm();
}

double GeneratingFront::kappa_at(double t) const {
    const Eigen::Vector2d d1 = curve_ev_->d1(t);
    const Eigen::Vector2d nu = normal_sign_ * rot90(d1.normalized());
    return curve_ev_->d2(t).dot(nu) / d1.squaredNorm();
}

double GeneratingFront::kappa_dot_at(double t) const {
    if (!has_curve_d3()) throw std::logic_error("kappa_dot_at needs the third derivative");
    const Eigen::Vector2d d1 = curve_ev_->d1(t);
    const Eigen::Vector2d d2 = curve_ev_->d2(t);
    const Eigen::Vector2d d3 = curve_ev_->d3(t);
    const Eigen::Vector2d nu = normal_sign_ * rot90(d1.normalized());
    const double s2 = d1.squaredNorm();
    const double kap = d2.dot(nu) / s2;
    return (d3.dot(nu) - 3.0 * kap * d2.dot(d1)) / s2;
}

Eigen::Vector2d GeneratingFront::normal_d1(int k) const {
    if (curve_ev_) return -kappa(k) * Eigen::Vector2d(curve_ev_->d1(params_(k)));
    // finite differences of the stored normal field
    const int n = node_count();
    const double h = step_;
    auto p = [&](int i) -> Eigen::Vector2d {
        if (kind_ == FrontKind::ClosedCurve) return normals_.col(wrap(i, n));
        return normals_.col(std::clamp(i, 0, n - 1));
    };
    const bool interior = (kind_ == FrontKind::ClosedCurve) || (k >= 2 && k <= n - 3);
    if (interior)
        return (-p(k + 2) + 8.0 * p(k + 1) - 8.0 * p(k - 1) + p(k - 2)) / (12.0 * h);
    if (k == 0) return (-3.0 * p(0) + 4.0 * p(1) - p(2)) / (2.0 * h);
    if (k == n - 1) return (3.0 * p(n - 1) - 4.0 * p(n - 2) + p(n - 3)) / (2.0 * h);
    return (p(k + 1) - p(k - 1)) / (2.0 * h);
}

// ---------------------------------------------------------------------------
// surface derivatives

bool GeneratingFront::node_interior(int k) const {
    if (n_ == 2) return true;
    const int iu = k / nv_count_;
    const int iv = k % nv_count_;
    if (iu == 0 || iu == nu_count_ - 1) return false;
    if (!v_periodic_ && (iv == 0 || iv == nv_count_ - 1)) return false;
    return true;
}

Eigen::Vector3d GeneratingFront::surface_du(int k) const {
    const int iu = k / nv_count_, iv = k % nv_count_;
    if (surf_ev_ && surf_ev_->du) return surf_ev_->du(params_u_(iu), params_v_(iv));
    const double h = params_u_(1) - params_u_(0);
    const int a = std::clamp(iu - 1, 0, nu_count_ - 1), b = std::clamp(iu + 1, 0, nu_count_ - 1);
    return (positions_.col(node_index(b, iv)) - positions_.col(node_index(a, iv))) /
           ((b - a) * h);
}

Eigen::Vector3d GeneratingFront::surface_dv(int k) const {
    const int iu = k / nv_count_, iv = k % nv_count_;
    if (surf_ev_ && surf_ev_->dv) return surf_ev_->dv(params_u_(iu), params_v_(iv));
    const double h = params_v_(1) - params_v_(0);
    if (v_periodic_) {
        const int a = wrap(iv - 1, nv_count_), b = wrap(iv + 1, nv_count_);
        return (positions_.col(node_index(iu, b)) - positions_.col(node_index(iu, a))) / (2 * h);
    }
    const int a = std::clamp(iv - 1, 0, nv_count_ - 1), b = std::clamp(iv + 1, 0, nv_count_ - 1);
    return (positions_.col(node_index(iu, b)) - positions_.col(node_index(iu, a))) /
           ((b - a) * h);
}

Eigen::Vector3d GeneratingFront::normal_du(int k) const {
    const int iu = k / nv_count_, iv = k % nv_count_;
    if (surf_ev_ && surf_ev_->nu_du) return surf_ev_->nu_du(params_u_(iu), params_v_(iv));
    const double h = params_u_(1) - params_u_(0);
    const int a = std::clamp(iu - 1, 0, nu_count_ - 1), b = std::clamp(iu + 1, 0, nu_count_ - 1);
    return (normals_.col(node_index(b, iv)) - normals_.col(node_index(a, iv))) / ((b - a) * h);
}

Eigen::Vector3d GeneratingFront::normal_dv(int k) const {
    const int iu = k / nv_count_, iv = k % nv_count_;
    if (surf_ev_ && surf_ev_->nu_dv) return surf_ev_->nu_dv(params_u_(iu), params_v_(iv));
    const double h = params_v_(1) - params_v_(0);
    if (v_periodic_) {
        const int a = wrap(iv - 1, nv_count_), b = wrap(iv + 1, nv_count_);
        return (normals_.col(node_index(iu, b)) - normals_.col(node_index(iu, a))) / (2 * h);
    }
    const int a = std::clamp(iv - 1, 0, nv_count_ - 1), b = std::clamp(iv + 1, 0, nv_count_ - 1);
    return (normals_.col(node_index(iu, b)) - normals_.col(node_index(iu, a))) / ((b - a) * h);
}

Eigen::Vector3d GeneratingFront::surface_second(int k, int a, int b) const {
    const int iu = k / nv_count_, iv = k % nv_count_;
    const double u = params_u_(iu), v = params_v_(iv);
    if (surf_ev_) {
        if (a == 0 && b == 0 && surf_ev_->duu) return surf_ev_->duu(u, v);
        if (a != b && surf_ev_->duv) return surf_ev_->duv(u, v);
        if (a == 1 && b == 1 && surf_ev_->dvv) return surf_ev_->dvv(u, v);
    }
    const double hu = params_u_(1) - params_u_(0);
    const double hv = params_v_(1) - params_v_(0);
    auto pos = [&](int ju, int jv) -> Eigen::Vector3d {
        ju = std::clamp(ju, 0, nu_count_ - 1);
        jv = v_periodic_ ? wrap(jv, nv_count_) : std::clamp(jv, 0, nv_count_ - 1);
        return positions_.col(node_index(ju, jv));
    };
    if (a == 0 && b == 0)
        return (pos(iu + 1, iv) - 2.0 * pos(iu, iv) + pos(iu - 1, iv)) / (hu * hu);
    if (a == 1 && b == 1)
        return (pos(iu, iv + 1) - 2.0 * pos(iu, iv) + pos(iu, iv - 1)) / (hv * hv);
    return (pos(iu + 1, iv + 1) - pos(iu + 1, iv - 1) - pos(iu - 1, iv + 1) +
            pos(iu - 1, iv - 1)) /
           (4.0 * hu * hv);
}

bool GeneratingFront::nodes_adjacent(int k, int l, int window) const {
    if (n_ == 2) {
        if (kind_ == FrontKind::ClosedCurve) return cyclic_distance(k, l, node_count()) <= window;
        return std::abs(k - l) <= window;
    }
    const int ku = k / nv_count_, kv = k % nv_count_;
    const int lu = l / nv_count_, lv = l % nv_count_;
    const int dv = v_periodic_ ? cyclic_distance(kv, lv, nv_count_) : std::abs(kv - lv);
    // Collapsed pole rows are mutually adjacent along the row.
    if (pole_rows_ && (ku == 0 || ku == nu_count_ - 1) && ku == lu) return true;
    return std::abs(ku - lu) <= window && dv <= window;
}

// ---------------------------------------------------------------------------
// curvature

CurvatureData curvature(const GeneratingFront& front) {
    CurvatureData data;
    data.analytic = front.has_analytic();
    const int n = front.node_count();

    if (front.ambient_dim() == 2) {
        data.lambda.resize(1, n);
        data.kappa_dot.resize(n);
        data.kappa_prime_arc.resize(n);
        for (int k = 0; k < n; ++k) {
            if (front.speed(k) <= 0.0) throw std::runtime_error("metric singular at node");
            data.lambda(0, k) = front.kappa(k);
        }
        if (front.has_curve_d3()) {
            for (int k = 0; k < n; ++k) data.kappa_dot(k) = front.kappa_dot_at(front.param(k));
        } else {
            // 4th-order differences of the kappa grid
            const double h = front.param_step();
            const bool closed = front.kind() == FrontKind::ClosedCurve;
            auto kap = [&](int i) {
                return closed ? data.lambda(0, wrap(i, n)) : data.lambda(0, std::clamp(i, 0, n - 1));
            };
            for (int k = 0; k < n; ++k) {
                const bool interior = closed || (k >= 2 && k <= n - 3);
                if (interior)
                    data.kappa_dot(k) =
                        (-kap(k + 2) + 8.0 * kap(k + 1) - 8.0 * kap(k - 1) + kap(k - 2)) /
                        (12.0 * h);
                else if (k == 0)
                    data.kappa_dot(k) = (-3.0 * kap(0) + 4.0 * kap(1) - kap(2)) / (2.0 * h);
                else if (k == n - 1)
                    data.kappa_dot(k) = (3.0 * kap(n - 1) - 4.0 * kap(n - 2) + kap(n - 3)) / (2.0 * h);
                else
                    data.kappa_dot(k) = (kap(k + 1) - kap(k - 1)) / (2.0 * h);
            }
        }
        for (int k = 0; k < n; ++k) data.kappa_prime_arc(k) = data.kappa_dot(k) / front.speed(k);
        return data;
    }

    // n = 3: eigenvalues of the shape operator from the fundamental forms
    data.lambda.resize(2, n);
    auto node_curvatures = [&](int k) -> Eigen::Vector2d {
        const Eigen::Vector3d fu = front.surface_du(k);
        const Eigen::Vector3d fv = front.surface_dv(k);
        const Eigen::Vector3d nu = front.normal(k);
        Eigen::Matrix2d I, II;
        I << fu.dot(fu), fu.dot(fv), fv.dot(fu), fv.dot(fv);
        II << front.surface_second(k, 0, 0).dot(nu), front.surface_second(k, 0, 1).dot(nu),
            front.surface_second(k, 0, 1).dot(nu), front.surface_second(k, 1, 1).dot(nu);
        if (I.determinant() <= 1e-14 * I.trace() * I.trace())
            throw std::runtime_error("metric singular at node");
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> es(II, I);
        return es.eigenvalues();
    };
    for (int k = 0; k < n; ++k)
        if (front.node_interior(k)) data.lambda.col(k) = node_curvatures(k);
    // pole rows / boundary rows take the values of the adjacent row
    for (int k = 0; k < n; ++k) {
        if (front.node_interior(k)) continue;
        const int nv = front.grid_v();
        const int iu = k / nv, iv = k % nv;
        const int ju = std::clamp(iu, 1, front.grid_u() - 2);
        int jv = iv;
        if (!(front.kind() == FrontKind::ClosedSurface))
            jv = std::clamp(iv, 1, nv - 2);
        data.lambda.col(k) = data.lambda.col(front.node_index(ju, jv));
    }
    return data;
}

// ---------------------------------------------------------------------------
// vertices

VertexSet vertices(const GeneratingFront& front, const CurvatureData& data) {
    if (front.ambient_dim() != 2)
        throw std::invalid_argument("vertices are defined for plane curves only");
    VertexSet out;
    const int n = front.node_count();
    const bool closed = front.kind() == FrontKind::ClosedCurve;
    const double max_dot = data.kappa_dot.cwiseAbs().maxCoeff();
    const double max_kap = data.lambda.row(0).cwiseAbs().maxCoeff();

    if (max_dot <= 1e-9 * std::max(1.0, max_kap)) {
        out.constant_curvature = true;
        return out;
    }

    const double eps_node = 1e-10 * max_dot;
    const double t_begin = front.param(0);
    const double span =
        closed ? front.param_step() * n : front.param(n - 1) - front.param(0);

    // kappa_dot as a function of the parameter: analytic when possible,
    // otherwise a periodic Catmull-Rom interpolant of the grid values.
    std::function<double(double)> kdot;
    if (front.has_curve_d3()) {
        kdot = [&](double t) { return front.kappa_dot_at(t); };
    } else {
        kdot = [&, n](double t) {
            const double h = front.param_step();
            const double t0 = front.param(0);
            double x = (t - t0) / h;
            int i = static_cast<int>(std::floor(x));
            const double u = x - i;
            auto val = [&](int j) {
                return closed ? data.kappa_dot(wrap(j, n)) : data.kappa_dot(std::clamp(j, 0, n - 1));
            };
            const double pm1 = val(i - 1), p0 = val(i), p1 = val(i + 1), p2 = val(i + 2);
            return p0 + 0.5 * u * (p1 - pm1 +
                                    u * (2 * pm1 - 5 * p0 + 4 * p1 - p2 +
                                         u * (3 * (p0 - p1) + p2 - pm1)));
        };
    }

    std::vector<Vertex> found;
    auto push_root = [&](double t, bool even) {
        for (const auto& v : found)
            if (std::abs(v.param - t) <= 1e-9 * span ||
                (closed && std::abs(std::abs(v.param - t) - span) <= 1e-9 * span))
                return;
        found.push_back({t, even});
    };

    const int last = closed ? n : n - 1;
    for (int k = 0; k < last; ++k) {
        const double dk = data.kappa_dot(k);
        if (std::abs(dk) <= eps_node) {
            const double prev = data.kappa_dot(closed ? wrap(k - 1, n) : std::max(k - 1, 0));
            const double next = data.kappa_dot(closed ? wrap(k + 1, n) : std::min(k + 1, n - 1));
            const bool even = prev * next > 0.0;
            push_root(front.param(k), even);
            continue;
        }
        const int k1 = closed ? wrap(k + 1, n) : k + 1;
        if (k1 >= n) break;
        const double dk1 = data.kappa_dot(k1);
        if (std::abs(dk1) <= eps_node) continue;  // handled as a node root
        if (dk * dk1 < 0.0) {
            double a = front.param(k);
            double b = closed && k1 == 0 ? front.param(k) + front.param_step() : front.param(k1);
            double fa = dk;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = kdot(m);
                if (std::abs(fm) <= 1e-10 * max_dot || (b - a) <= 1e-13 * span) {
                    a = b = m;
                    break;
                }
                if (fa * fm < 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            double root = 0.5 * (a + b);
            if (closed && root >= t_begin + span) root -= span;
            push_root(root, false);
        }
    }

    std::sort(found.begin(), found.end(),
              [](const Vertex& a, const Vertex& b) { return a.param < b.param; });
    out.items = std::move(found);
    return out;
}

// ---------------------------------------------------------------------------
// parallel hypersurfaces

ParallelResult parallel(const GeneratingFront& front, double t) {
    ParallelResult res{front, {}};
    const CurvatureData data = curvature(front);
    const int n = front.node_count();

    if (front.ambient_dim() == 2) {
        Eigen::Matrix2Xd pos(2, n), nrm(2, n);
        for (int k = 0; k < n; ++k) {
            pos.col(k) = front.position(k) + t * front.normal(k);
            nrm.col(k) = front.normal(k);
        }
        res.front = GeneratingFront::from_curve_samples(
            pos, nrm, front.kind() == FrontKind::ClosedCurve, front.params());
    } else {
        GeneratingFront f = front;
        for (int k = 0; k < n; ++k)
            f.positions_.col(k) = front.position(k) + t * front.normal(k);
        if (front.surf_ev_ && front.surf_ev_->nu) {
            SurfaceEvaluator base = *front.surf_ev_;
            SurfaceEvaluator ev;
            ev.pos = [base, t](double u, double v) {
                return Eigen::Vector3d(base.pos(u, v) + t * base.nu(u, v));
            };
            if (base.nu_du)
                ev.du = [base, t](double u, double v) {
                    return Eigen::Vector3d(base.du(u, v) + t * base.nu_du(u, v));
                };
            if (base.nu_dv)
                ev.dv = [base, t](double u, double v) {
                    return Eigen::Vector3d(base.dv(u, v) + t * base.nu_dv(u, v));
                };
            ev.nu = base.nu;
            f.surf_ev_ = ev;
        } else {
            f.surf_ev_.reset();
        }
        res.front = std::move(f);
    }

    for (int k = 0; k < n; ++k)
        for (int i = 0; i < data.branches(); ++i) {
            const double tl = t * data.lambda(i, k);
            if (std::abs(1.0 - tl) <= 1e-8 * std::max(1.0, std::abs(tl))) {
                res.singular_nodes.push_back(k);
                break;
            }
        }
    return res;
}

// ---------------------------------------------------------------------------
// embeddedness

bool embedded(const GeneratingFront& front, double tol) {
    const int n = front.node_count();
    double diam = 0.0;
    for (int k = 0; k < n; ++k)
        diam = std::max(diam, (front.position(k) - front.position(0)).norm());
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            if (front.nodes_adjacent(k, l, 2)) continue;
            if ((front.position(k) - front.position(l)).norm() <= tol * diam) return false;
        }
    if (front.ambient_dim() != 2) return true;

    // polyline segment intersection scan
    const bool closed = front.kind() == FrontKind::ClosedCurve;
    const int segs = closed ? n : n - 1;
    for (int k = 0; k < segs; ++k)
        for (int l = k + 2; l < segs; ++l) {
            if (closed && cyclic_distance(k, l, segs) < 2) continue;
            const Eigen::Vector2d p1 = front.position(k);
            const Eigen::Vector2d p2 = front.position((k + 1) % n);
            const Eigen::Vector2d q1 = front.position(l);
            const Eigen::Vector2d q2 = front.position((l + 1) % n);
            if (segments_intersect(p1, p2, q1, q2)) return false;
        }
    return true;
}

}  // namespace nullfront::geometry
