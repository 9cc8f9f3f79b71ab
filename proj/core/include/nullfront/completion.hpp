#pragma once

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "nullfront/geometry.hpp"

// Reconstruction of generating data from null-front samples and the gluing
// of overlapping patches into an L-completion, for curve-generated fronts
// in R^3_1.

namespace nullfront::completion {

/// Chart data of a strongly adopted patch: ordered samples of the generating
/// curve g_U with unit normals nu_U, plus the (epsilon_U, t_U) window.
class Patch {
public:
    Patch(Eigen::Matrix2Xd g, Eigen::Matrix2Xd nu, bool closed,
          double epsilon = std::numeric_limits<double>::infinity(), double t_center = 0.0);

    int size() const { return static_cast<int>(g_.cols()); }
    bool closed() const { return closed_; }
    double epsilon() const { return epsilon_; }
    double t_center() const { return t_center_; }
    Eigen::Vector2d g(int i) const { return g_.col(i); }
    Eigen::Vector2d nu(int i) const { return nu_.col(i); }

    /// Legendrian lift sample l_U(i) = (g_U(i), nu_U(i)) in R^2 x S^1.
    Eigen::Vector4d l(int i) const;

    /// Median consecutive step of the l samples; the resolution scale used
    /// by the relatedness tolerances.
    double l_step() const { return l_step_; }

private:
    Eigen::Matrix2Xd g_, nu_;
    bool closed_ = false;
    double epsilon_ = std::numeric_limits<double>::infinity();
    double t_center_ = 0.0;
    double l_step_ = 0.0;
};

struct ReconstructSample {
    Eigen::Vector3d point;  // F(q) in R^3_1
    Eigen::Vector3d xi;     // null normal at q
};

struct ReconstructOptions {
    double xi_tol = 1e-8;        // tolerance on the xi_hat preconditions
    double dedup_tol = -1.0;     // <= 0: auto, 1e-9 * (1 + scale)
    double epsilon = std::numeric_limits<double>::infinity();
    double t_center = 0.0;
    /// Optional adjacency between input samples (grid edges); enables the
    /// covering-multiplicity estimate and order-preserving chaining.
    std::vector<std::pair<int, int>> adjacency;
};

struct ReconstructionResult {
    Patch patch;
    int n_input = 0;
    int n_rejected = 0;
    int n_classes = 0;
    /// Class id per input sample (-1 for rejected samples); class ids index
    /// the ordered patch samples.
    std::vector<int> class_of;
    /// Max number of distinct input samples sharing one Legendrian value
    /// (F, xi); 2 for a double cover.
    int cover_multiplicity = 1;
    double mean_multiplicity = 1.0;
    /// False when distinct samples repeat a Legendrian value, i.e. the lift
    /// of the input is not injective.
    bool lift_embedding_ok = true;
};

/// Recover (g, nu) from samples (F(q), xi(q)) via g = pi_0(F - tau xi);
/// samples on a common ruling line are deduplicated.
ReconstructionResult reconstruct_generator(const std::vector<ReconstructSample>& samples,
                                           const ReconstructOptions& opts = {});

struct RelatedTol {
    double pos = -1.0;    // <= 0: auto, 3x the coarser patch's l step
    double nrm = 1e-6;    // chordal distance between unit normals
    double band = -1.0;   // <= 0: auto, 3x the coarser patch's l step
    int neighbors = 5;    // samples checked on each side
};

/// Discrete (l_U, l_V)-relatedness of sample i of U and sample j of V:
/// l values match pointwise and the index-paired neighbor samples stay
/// within a resolution-scaled band on both sides (clipped at open-chain
/// ends, where germs only need the mutual overlap to agree).
bool related(const Patch& u, int i, const Patch& v, int j, const RelatedTol& tol = {});

struct TransitionMap {
    int patch_u = 0, patch_v = 0;
    std::vector<std::pair<int, int>> pairs;  // (i in U, j in V), l_U(i) = l_V(j)
    double max_l_mismatch = 0.0;
};

struct Atlas {
    std::vector<Patch> patches;
    std::vector<std::vector<int>> class_of;  // per patch, per sample
    int class_count = 0;
    std::vector<int> chain;  // Sigma_F as an ordered class chain
    bool chain_closed = false;
    bool connected = true;
    bool non_hausdorff = false;
    /// Sample pairs ((patch,i),(patch,j)) witnessing a 1-manifold violation.
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> offending;
    std::vector<TransitionMap> transitions;
    /// The completed generating curve assembled from the class chain.
    geometry::GeneratingFront completed;
    /// max |L_U(t, x) - L_G(t, class(x))| over all samples and three t values.
    double lift_verification_max = 0.0;
};

/// Merge related samples across patches (union-find over the transitive
/// closure), build Sigma_F, and emit the completed generating curve.
/// A quotient class with more than two distinct neighbor classes marks the
/// gluing non-Hausdorff; the atlas is still returned with diagnostics.
Atlas glue(const std::vector<Patch>& patches, const RelatedTol& tol = {});

enum class AdmissibilityVerdict { Related, Disjoint, Admissible, Inadmissible };

struct Contact {
    int i = 0, j = 0;
    double distance = 0.0;
    double angle = 0.0;  // between the l-image tangents, in [0, pi/2]
    bool transversal = false;
};

struct AdmissibilityReport {
    AdmissibilityVerdict verdict = AdmissibilityVerdict::Disjoint;
    std::vector<Contact> contacts;  // one per near-intersection cluster
    int related_pairs = 0;
};

/// Checks patches that are nowhere related for transversality of their
/// l-images at near-intersections; patches with related samples are
/// reported as Related instead.
AdmissibilityReport admissibility_check(const Patch& u, const Patch& v,
                                        double contact_tol = 0.1,
                                        double angle_threshold = 1e-3,
                                        const RelatedTol& rtol = {});

const char* to_string(AdmissibilityVerdict v);

}  // namespace nullfront::completion
