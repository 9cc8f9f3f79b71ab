#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

// Linear algebra on Lorentz-Minkowski space R^{n+1}_1 with signature
// (-,+,...,+).  Coordinate 0 is the time coordinate.

namespace nullfront::lorentz {

/// Relative threshold below which a Gram matrix counts as singular.
inline constexpr double kDegeneracyTol = 1e-10;

class LorentzVector {
public:
    LorentzVector() = default;
    explicit LorentzVector(Eigen::VectorXd coords);
    LorentzVector(std::initializer_list<double> coords);

    int dim() const { return static_cast<int>(c_.size()); }
    double time() const { return c_(0); }
    Eigen::VectorXd spatial() const { return c_.tail(c_.size() - 1); }
    const Eigen::VectorXd& coords() const { return c_; }

    double operator[](int i) const { return c_(i); }
    double& operator[](int i) { return c_(i); }

    LorentzVector operator+(const LorentzVector& o) const { return LorentzVector(c_ + o.c_); }
    LorentzVector operator-(const LorentzVector& o) const { return LorentzVector(c_ - o.c_); }
    LorentzVector operator*(double s) const { return LorentzVector(c_ * s); }

    static LorentzVector basis(int dim, int i);
    static LorentzVector time_axis(int dim) { return basis(dim, 0); }

private:
    Eigen::VectorXd c_;
};

inline LorentzVector operator*(double s, const LorentzVector& v) { return v * s; }

double minkowski_inner(const LorentzVector& u, const LorentzVector& v);
double euclidean_inner(const LorentzVector& u, const LorentzVector& v);
double euclidean_norm(const LorentzVector& u);

/// Raw-coordinate overloads, shared with the front modules.
double minkowski_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v);
double euclidean_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// |<v,v>| <= tol * (v,v)_E.
bool is_null(const LorentzVector& v, double tol = kDegeneracyTol);

/// Strict v_0 > 0; the zero vector is rejected.
bool is_future_pointing(const LorentzVector& v);

/// Height function tau(v) = -<v,e_0>, i.e. the time coordinate.
double height(const LorentzVector& v);

class Subspace {
public:
    /// Basis vectors form the columns; they must be linearly independent.
    explicit Subspace(Eigen::MatrixXd basis);
    explicit Subspace(const std::vector<LorentzVector>& basis);

    int ambient_dim() const { return static_cast<int>(basis_.rows()); }
    int dim() const { return static_cast<int>(basis_.cols()); }
    const Eigen::MatrixXd& basis() const { return basis_; }
    LorentzVector basis_vector(int i) const { return LorentzVector(basis_.col(i)); }

    /// Gram matrix under the Lorentzian inner product.
    Eigen::MatrixXd gram() const;

    bool contains(const LorentzVector& v, double tol = kDegeneracyTol) const;

private:
    Eigen::MatrixXd basis_;
};

/// Span equality via mutual rank tests; bases are non-canonical.
bool same_subspace(const Subspace& a, const Subspace& b, double tol = kDegeneracyTol);

/// Maximal subspace perpendicular to V: {x : <x,v> = 0 for all v in V}.
/// Always satisfies dim V + dim V^perp = ambient dim.
Subspace orthogonal_complement(const Subspace& v);

/// A nonzero vector of V orthogonal to all of V, when the Gram matrix is
/// singular within tol; std::nullopt otherwise.
std::optional<LorentzVector> degenerate_vector(const Subspace& v, double tol = kDegeneracyTol);

bool is_degenerate(const Subspace& v, double tol = kDegeneracyTol);

/// Executable form of the appendix lemma on triples (V, W, N):
/// if N is a 1-dimensional light-like space with N cap W = {0}, V and W are
/// perpendicular to N, and W is perpendicular to V, then V cap W = {0}.
struct SubspaceLemmaReport {
    bool n_is_line = false;          // dim N == 1
    bool n_is_lightlike = false;     // generator is null
    bool n_meets_w_trivially = false;
    LorentzVector n_generator;
    bool v_perp_n = false;
    bool w_perp_n = false;
    bool w_perp_v = false;

    bool hypotheses_hold = false;
    bool conclusion_checked = false; // only meaningful when hypotheses_hold
    bool conclusion_holds = false;   // rank(V u W) == dim V + dim W
    std::string detail;
};

SubspaceLemmaReport check_subspace_lemma(const Subspace& v, const Subspace& w,
                                         const Subspace& n, double tol = kDegeneracyTol);

/// rank of the concatenated bases, used for V cap W = {0} style tests.
int joint_rank(const Subspace& a, const Subspace& b, double tol = kDegeneracyTol);

}  // namespace nullfront::lorentz
