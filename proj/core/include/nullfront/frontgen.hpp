#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nullfront/geometry.hpp"

// The normal-form null wave front F(t,x) = (0, f(x)) + t (1, sigma nu(x))
// over a generating front, with its E-normalized null field, jets, induced
// metric and parallel fronts.

namespace nullfront::frontgen {

enum class Sigma { Plus, Minus };

inline double sign_of(Sigma s) { return s == Sigma::Plus ? 1.0 : -1.0; }

struct TWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool valid() const { return hi > lo; }
};

class NullFront {
public:
    NullFront(geometry::GeneratingFront generator, Sigma sigma, TWindow window, int t_count);

    const geometry::GeneratingFront& generator() const { return generator_; }
    Sigma sigma() const { return sigma_; }
    TWindow window() const { return window_; }
    int t_count() const { return t_count_; }
    double t_shift() const { return shift_; }
    int space_dim() const { return generator_.ambient_dim(); }  // n
    int x_count() const { return generator_.node_count(); }

    double t_value(int j) const;

    /// F(t, x_k) in R^{n+1}; sigma = minus is evaluated through the
    /// time-reflection of the plus front.
    Eigen::VectorXd point(double t, int k) const;

    /// xi_hat(x_k) = (1, sigma nu(x_k)).
    Eigen::VectorXd xi_hat(int k) const;

    /// Nodes at which jets are well defined (all nodes for curves, interior
    /// grid nodes for surfaces).
    std::vector<int> jet_nodes() const;

private:
    geometry::GeneratingFront generator_;
    Sigma sigma_ = Sigma::Plus;
    TWindow window_;
    int t_count_ = 2;
    double shift_ = 0.0;

    friend NullFront parallel_front(const NullFront&, double);
};

NullFront normal_form(const geometry::GeneratingFront& generator, Sigma sigma, TWindow window,
                      int t_count);

/// xi_hat per node, asserting the defining properties (null, future pointing,
/// Euclidean norm sqrt(2)) to 1e-8.
Eigen::MatrixXd e_normalized_field(const NullFront& front);

struct FrontJet {
    Eigen::MatrixXd dF;  // (n+1) x n, columns F_t, F_{u_1}, ..., F_{u_{n-1}}
    Eigen::MatrixXd Mt;  // (2n+2) x n, dF stacked over the xi_hat derivatives
    int rank_dF = 0;
    int rank_Mt = 0;
    double smin_ratio_dF = 0.0;  // smallest/largest singular value of dF
};

FrontJet jet(const NullFront& front, double t, int k);

/// A sample is singular when the smallest singular value of dF is at most
/// tol times the largest.
bool is_singular_sample(const NullFront& front, double t, int k, double tol = 1e-8);

/// Gram matrix of the Jacobian columns under the Lorentzian inner product.
Eigen::MatrixXd induced_metric(const NullFront& front, double t, int k);

/// Eigenvalues of the induced metric, ascending.
Eigen::VectorXd induced_metric_eigenvalues(const NullFront& front, double t, int k);

/// F^delta = F + delta xi_hat, realized as a shift of the t lattice, so that
/// F^delta(t,x) = F(t+delta,x) and the image set is unchanged.
NullFront parallel_front(const NullFront& front, double delta);

struct LiftCheck {
    bool ok = false;
    double min_separation = 0.0;
    int worst_a = -1, worst_b = -1;
};

/// Injectivity of l_f(x) = (f(x), nu(x)) on the x-grid; pairwise scan with
/// grid neighbors excluded.
LiftCheck lift_embedding_check(const NullFront& front, double tol = 1e-6);

/// Polyline of the slice {t = c} (one point per x node).
Eigen::MatrixXd slice_polyline(const NullFront& front, double c);

}  // namespace nullfront::frontgen
