#include "nullfront/lorentz.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nullfront::lorentz {

namespace {

void require_same_dim(int a, int b) {
    if (a != b) {
        std::ostringstream os;
        os << "dimension mismatch: " << a << " vs " << b;
        throw std::invalid_argument(os.str());
    }
}

int rank_of(const Eigen::MatrixXd& m, double tol) {
    if (m.cols() == 0 || m.rows() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const double cutoff = tol * sv(0);
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    return r;
}

}  // namespace

LorentzVector::LorentzVector(Eigen::VectorXd coords) : c_(std::move(coords)) {
    if (c_.size() < 3)
        throw std::invalid_argument("LorentzVector needs dimension n+1 with n >= 2");
}

LorentzVector::LorentzVector(std::initializer_list<double> coords)
    : LorentzVector(Eigen::Map<const Eigen::VectorXd>(coords.begin(),
                                                      static_cast<long>(coords.size()))) {}

LorentzVector LorentzVector::basis(int dim, int i) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(dim);
    c(i) = 1.0;
    return LorentzVector(std::move(c));
}

double minkowski_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    require_same_dim(static_cast<int>(u.size()), static_cast<int>(v.size()));
    double s = -u(0) * v(0);
    for (long i = 1; i < u.size(); ++i) s += u(i) * v(i);
    return s;
}

double euclidean_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    require_same_dim(static_cast<int>(u.size()), static_cast<int>(v.size()));
    return u.dot(v);
}

double minkowski_inner(const LorentzVector& u, const LorentzVector& v) {
    return minkowski_inner(u.coords(), v.coords());
}

double euclidean_inner(const LorentzVector& u, const LorentzVector& v) {
    return euclidean_inner(u.coords(), v.coords());
}

double euclidean_norm(const LorentzVector& u) { return u.coords().norm(); }

bool is_null(const LorentzVector& v, double tol) {
    return std::abs(minkowski_inner(v, v)) <= tol * euclidean_inner(v, v);
}

bool is_future_pointing(const LorentzVector& v) {
    if (v.coords().isZero(0.0))
        throw std::invalid_argument("future direction is undefined for the zero vector");
    return v.time() > 0.0;
}

double height(const LorentzVector& v) {
    return -minkowski_inner(v, LorentzVector::time_axis(v.dim()));
}

Subspace::Subspace(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
    if (basis_.cols() < 1 || basis_.rows() < 3)
        throw std::invalid_argument("Subspace needs at least one basis vector in R^{n+1}, n >= 2");
    if (rank_of(basis_, kDegeneracyTol) != basis_.cols())
        throw std::invalid_argument("Subspace basis is not linearly independent");
}

Subspace::Subspace(const std::vector<LorentzVector>& basis)
    : Subspace([&] {
          if (basis.empty()) throw std::invalid_argument("Subspace needs a nonempty basis");
          Eigen::MatrixXd m(basis.front().dim(), static_cast<long>(basis.size()));
          for (size_t i = 0; i < basis.size(); ++i) {
              require_same_dim(basis[i].dim(), basis.front().dim());
              m.col(static_cast<long>(i)) = basis[i].coords();
          }
          return m;
      }()) {}

Eigen::MatrixXd Subspace::gram() const {
    Eigen::MatrixXd eta = Eigen::MatrixXd::Identity(ambient_dim(), ambient_dim());
    eta(0, 0) = -1.0;
    return basis_.transpose() * eta * basis_;
}

bool Subspace::contains(const LorentzVector& v, double tol) const {
    Eigen::MatrixXd augmented(ambient_dim(), dim() + 1);
    augmented.leftCols(dim()) = basis_;
    augmented.col(dim()) = v.coords();
    return rank_of(augmented, tol) == dim();
}

bool same_subspace(const Subspace& a, const Subspace& b, double tol) {
    if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
    Eigen::MatrixXd joint(a.ambient_dim(), a.dim() + b.dim());
    joint << a.basis(), b.basis();
    return rank_of(joint, tol) == a.dim();
}

Subspace orthogonal_complement(const Subspace& v) {
    // <x, b_i> = 0 for all i  <=>  x in ker(B^T eta), computed from the SVD.
    const int n1 = v.ambient_dim();
    Eigen::MatrixXd eta = Eigen::MatrixXd::Identity(n1, n1);
    eta(0, 0) = -1.0;
    Eigen::MatrixXd rows = v.basis().transpose() * eta;  // dim x (n+1)
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
    // rows has full row rank because the metric is non-degenerate, so the
    // kernel has dimension n+1 - dim V exactly.
    const int k = n1 - v.dim();
    return Subspace(svd.matrixV().rightCols(k));
}

std::optional<LorentzVector> degenerate_vector(const Subspace& v, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(v.gram(), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const int last = static_cast<int>(sv.size()) - 1;
    if (sv(last) > tol * sv(0)) return std::nullopt;
    Eigen::VectorXd combo = svd.matrixV().col(last);
    return LorentzVector(v.basis() * combo);
}

bool is_degenerate(const Subspace& v, double tol) {
    return degenerate_vector(v, tol).has_value();
}

int joint_rank(const Subspace& a, const Subspace& b, double tol) {
    Eigen::MatrixXd joint(a.ambient_dim(), a.dim() + b.dim());
    joint << a.basis(), b.basis();
    return rank_of(joint, tol);
}

SubspaceLemmaReport check_subspace_lemma(const Subspace& v, const Subspace& w,
                                         const Subspace& n, double tol) {
    SubspaceLemmaReport rep;
    std::ostringstream detail;

    rep.n_is_line = (n.dim() == 1);
    if (rep.n_is_line) {
        rep.n_generator = n.basis_vector(0);
        rep.n_is_lightlike = is_null(rep.n_generator, tol) &&
                             euclidean_norm(rep.n_generator) > 0.0;
        rep.n_meets_w_trivially = (joint_rank(n, w, tol) == 1 + w.dim());
    }

    auto perpendicular = [&](const Subspace& a, const Subspace& b) {
        double scale = 0.0;
        double worst = 0.0;
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < b.dim(); ++j) {
                const LorentzVector ai = a.basis_vector(i);
                const LorentzVector bj = b.basis_vector(j);
                worst = std::max(worst, std::abs(minkowski_inner(ai, bj)));
                scale = std::max(scale, euclidean_norm(ai) * euclidean_norm(bj));
            }
        return worst <= tol * scale;
    };

    rep.v_perp_n = perpendicular(v, n);
    rep.w_perp_n = perpendicular(w, n);
    rep.w_perp_v = perpendicular(w, v);

    rep.hypotheses_hold = rep.n_is_line && rep.n_is_lightlike && rep.n_meets_w_trivially &&
                          rep.v_perp_n && rep.w_perp_n && rep.w_perp_v;

    if (!rep.n_is_line) detail << "N is not a line; ";
    if (rep.n_is_line && !rep.n_is_lightlike) detail << "N is not light-like; ";
    if (rep.n_is_line && !rep.n_meets_w_trivially) detail << "N meets W nontrivially; ";
    if (!rep.v_perp_n) detail << "V not perpendicular to N; ";
    if (!rep.w_perp_n) detail << "W not perpendicular to N; ";
    if (!rep.w_perp_v) detail << "W not perpendicular to V; ";

    if (rep.hypotheses_hold) {
        rep.conclusion_checked = true;
        rep.conclusion_holds = (joint_rank(v, w, tol) == v.dim() + w.dim());
        detail << (rep.conclusion_holds ? "V cap W = {0} verified"
                                        : "conclusion FAILED: V cap W != {0}");
    }
    rep.detail = detail.str();
    return rep;
}

}  // namespace nullfront::lorentz
