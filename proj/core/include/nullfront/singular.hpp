#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "nullfront/frontgen.hpp"
#include "nullfront/geometry.hpp"

// Singular locus of a null front: extraction along t = 1/lambda_i(x),
// cuspidal / non-cuspidal classification for curve-generated fronts,
// completeness and the four-vertex consequences.

namespace nullfront::singular {

enum class PointClass { Unclassified, CuspidalEdge, NonCuspidal, Undetermined };

struct LocusPoint {
    int x_index = 0;
    int branch = 0;
    double t = 0.0;          // front parameter with F(t,x) singular
    Eigen::VectorXd image;   // F(t,x) in R^{n+1}
    PointClass cls = PointClass::Unclassified;
    bool degenerate_vertex = false;   // kappa' = 0 and kappa'' = 0
    bool swallowtail_expected = false;  // generic annotation, kappa'' != 0
    double kappa_dot = 0.0;     // diagnostics for the classification
    double velocity_norm = 0.0;
};

struct SingularLocus {
    std::vector<LocusPoint> points;
    bool constant_curvature = false;
    /// (x node, branch) pairs where lambda_i crosses zero and the locus
    /// escapes to infinity.
    std::vector<std::pair<int, int>> unbounded;
};

SingularLocus singular_locus(const frontgen::NullFront& front);

/// Classify curve-front locus points: cuspidal edge iff kappa'(s) != 0,
/// non-cuspidal at vertices, cross-checked against C'_gamma(s) != 0.
SingularLocus classify(SingularLocus locus, const frontgen::NullFront& front);

struct BranchReport {
    bool active = false;        // lambda not identically zero
    bool bounded_away = false;  // min |lambda| >= 1e-6 max |lambda|
    double min_abs = 0.0;
    double max_abs = 0.0;
    int sign = 0;  // +1 / -1 constant sign, 0 mixed
};

struct CompletenessReport {
    bool domain_compact = false;
    bool singular_nonempty = false;
    std::vector<BranchReport> branches;
    bool all_same_sign = false;
    bool complete = false;
    std::vector<std::string> reasons;
};

CompletenessReport completeness_check(const frontgen::NullFront& front);

struct FourVertexReport {
    bool excluded_constant_curvature = false;
    bool embedded = false;
    bool complete = false;
    int non_cuspidal_count = 0;
    bool hypothesis_met = false;
    bool implication_holds = false;  // only meaningful when hypothesis_met
    std::string note;
};

FourVertexReport four_vertex_audit(const frontgen::NullFront& front);

}  // namespace nullfront::singular
