#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

// Sampled generating hypersurfaces f: Sigma^{n-1} -> R^n with unit normal nu,
// curvature data, vertices, and parallel hypersurfaces.

namespace nullfront::geometry {

enum class FrontKind {
    ClosedCurve,    // n=2, parameter domain [0,2pi) on a uniform grid
    OpenCurve,      // n=2, parameter interval [a,b]
    SurfacePatch,   // n=3, rectangular (u1,u2) grid
    ClosedSurface,  // n=3, sphere-like lat-long grid with collapsed pole rows
};

/// Closed-form curve evaluators; d3 is optional and enables analytic
/// derivatives of the curvature.
struct CurveEvaluator {
    std::function<Eigen::Vector2d(double)> pos;
    std::function<Eigen::Vector2d(double)> d1;
    std::function<Eigen::Vector2d(double)> d2;
    std::function<Eigen::Vector2d(double)> d3;  // may be empty
};

struct SurfaceEvaluator {
    std::function<Eigen::Vector3d(double, double)> pos;
    std::function<Eigen::Vector3d(double, double)> du, dv;
    std::function<Eigen::Vector3d(double, double)> duu, duv, dvv;
    // Optional unit normal and its derivatives; when absent the normal is
    // du x dv normalized and its derivatives come from finite differences.
    std::function<Eigen::Vector3d(double, double)> nu;
    std::function<Eigen::Vector3d(double, double)> nu_du, nu_dv;
};

struct ParallelResult;

class GeneratingFront {
public:
    /// Closed curve sampled on [t0, t1) with t1 - t0 the period.
    static GeneratingFront build_curve(const CurveEvaluator& ev, int grid_size, double t0 = 0.0,
                                       double t1 = 2.0 * 3.14159265358979323846);
    static GeneratingFront build_open_curve(const CurveEvaluator& ev, int grid_size,
                                            double t0, double t1);
    /// Closed curve from raw samples (positions and unit normals per node).
    static GeneratingFront from_curve_samples(Eigen::Matrix2Xd positions,
                                              Eigen::Matrix2Xd normals, bool closed,
                                              Eigen::VectorXd params = {});
    static GeneratingFront build_surface_patch(const SurfaceEvaluator& ev, int nu_count,
                                               int nv_count, double u0, double u1, double v0,
                                               double v1);
    static GeneratingFront build_closed_surface(const SurfaceEvaluator& ev, int n_lat,
                                                int n_lon);

    FrontKind kind() const { return kind_; }
    int ambient_dim() const { return n_; }          // n: curve 2, surface 3
    int param_dim() const { return n_ - 1; }        // n-1
    bool closed() const {
        return kind_ == FrontKind::ClosedCurve || kind_ == FrontKind::ClosedSurface;
    }
    int node_count() const { return static_cast<int>(positions_.cols()); }
    bool has_analytic() const;

    Eigen::VectorXd position(int k) const { return positions_.col(k); }
    Eigen::VectorXd normal(int k) const { return normals_.col(k); }
    const Eigen::MatrixXd& positions() const { return positions_; }
    const Eigen::MatrixXd& normals() const { return normals_; }

    /// Returns a copy with nu replaced by -nu.
    GeneratingFront flipped() const;

    // --- curve access (kind ClosedCurve / OpenCurve) ---------------------
    double param(int k) const { return params_(k); }
    const Eigen::VectorXd& params() const { return params_; }
    double param_step() const { return step_; }
    double speed(int k) const { return speeds_(k); }
    Eigen::Vector2d curve_d1(int k) const;  // analytic if available, else FD
    Eigen::Vector2d curve_d2(int k) const;
    Eigen::Vector2d position_at(double t) const;  // analytic only
    Eigen::Vector2d curve_d1_at(double t) const;  // analytic only
    Eigen::Vector2d normal_at(double t) const;    // analytic only
    bool has_curve_d3() const;
    Eigen::Vector2d curve_d3(int k) const;
    Eigen::Vector2d normal_d1(int k) const;  // d nu / d param at node k
    /// Signed curvature w.r.t. the stored normal, at node k.
    double kappa(int k) const;
    /// Signed curvature / its param derivative as functions of the curve
    /// parameter; requires analytic evaluators (d3 for the derivative).
    double kappa_at(double t) const;
    double kappa_dot_at(double t) const;

    // --- surface access (kind SurfacePatch / ClosedSurface) --------------
    int grid_u() const { return nu_count_; }
    int grid_v() const { return nv_count_; }
    int node_index(int iu, int iv) const { return iu * nv_count_ + iv; }
    double param_u(int iu) const { return params_u_(iu); }
    double param_v(int iv) const { return params_v_(iv); }
    /// False on pole rows of a closed surface and on patch boundaries;
    /// jets and shape operators are evaluated on interior nodes.
    bool node_interior(int k) const;
    Eigen::Vector3d surface_du(int k) const;
    Eigen::Vector3d surface_dv(int k) const;
    Eigen::Vector3d normal_du(int k) const;
    Eigen::Vector3d normal_dv(int k) const;
    Eigen::Vector3d surface_second(int k, int a, int b) const;

    /// Grid-neighbor test used to exclude adjacent pairs in embedding scans.
    bool nodes_adjacent(int k, int l, int window) const;

private:
    FrontKind kind_ = FrontKind::ClosedCurve;
    int n_ = 2;
    Eigen::MatrixXd positions_;  // n x N
    Eigen::MatrixXd normals_;    // n x N
    double normal_sign_ = 1.0;   // -1 after flipped()

    // curves
    Eigen::VectorXd params_;
    Eigen::VectorXd speeds_;
    double step_ = 0.0;
    std::optional<CurveEvaluator> curve_ev_;

    // surfaces
    int nu_count_ = 0, nv_count_ = 0;
    Eigen::VectorXd params_u_, params_v_;
    bool v_periodic_ = false;
    bool pole_rows_ = false;
    std::optional<SurfaceEvaluator> surf_ev_;

    Eigen::VectorXd fd_curve(int k, int order) const;
    friend ParallelResult parallel(const GeneratingFront&, double);
};

struct CurvatureData {
    /// Principal curvatures, one row per branch, sorted ascending per node.
    Eigen::MatrixXd lambda;
    /// Curves only: d kappa / d param and the arc-length derivative kappa'.
    Eigen::VectorXd kappa_dot;
    Eigen::VectorXd kappa_prime_arc;
    bool analytic = false;

    int branches() const { return static_cast<int>(lambda.rows()); }
    int nodes() const { return static_cast<int>(lambda.cols()); }
};

CurvatureData curvature(const GeneratingFront& front);

struct Vertex {
    double param = 0.0;
    bool even_multiplicity = false;
};

struct VertexSet {
    std::vector<Vertex> items;
    bool constant_curvature = false;
};

/// Critical points of the curvature function of a closed curve, located by
/// sign-change bracketing of kappa' plus bisection refinement.
VertexSet vertices(const GeneratingFront& front, const CurvatureData& data);

struct ParallelResult {
    GeneratingFront front;
    /// Nodes where t hits 1/lambda_i within tolerance.
    std::vector<int> singular_nodes;
};

/// The parallel hypersurface f + t nu, keeping the normals of f.
ParallelResult parallel(const GeneratingFront& front, double t);

/// Pairwise self-intersection scan of the positions (grid neighbors excluded).
bool embedded(const GeneratingFront& front, double tol = 1e-8);

}  // namespace nullfront::geometry
