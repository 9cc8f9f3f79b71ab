#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "nullfront/geometry.hpp"

// Named example generators: ellipse, limacon, circle, spiral with a
// configurable bump, light cone, sphere.

namespace nullfront::builtins {

geometry::CurveEvaluator circle(double radius = 1.0);
geometry::CurveEvaluator ellipse(double a = 2.0, double b = 1.0);

/// (a - b sin t)(cos t, sin t); the default is the self-intersecting
/// locally convex curve with two vertices.
geometry::CurveEvaluator limacon(double a = 1.0, double b = 2.0);

/// e^{omega(t)} (cos t, sin t) on [0, 4pi) with a smooth bump
/// omega(t) = amplitude * exp(1 - 1/(1-z^2)), z = (t-center)/halfwidth,
/// supported on |z| < 1.  amplitude = 0 gives the doubly traversed circle.
geometry::CurveEvaluator spiral(double amplitude = 1.0, double center = 3.0 * 3.14159265358979323846,
                                double halfwidth = 1.0);
double spiral_omega(double t, double amplitude, double center, double halfwidth);

/// (cos 2t, sin 2t): the doubly traversed unit circle.
geometry::CurveEvaluator double_circle();

/// (t, t^2): generator for an open, non-compact example.
geometry::CurveEvaluator parabola();

/// (cos t, sin t + c sin 2t): locally non-convex closed curve with
/// inflection points for c large enough (default 0.9).
geometry::CurveEvaluator wavy_circle(double c = 0.9);

geometry::SurfaceEvaluator sphere(double radius = 1.0);

/// Samples of the null immersion (u^2+v^2, 2uv, u^2-v^2) on R^2 minus a
/// neighborhood of the origin, together with its E-normalized null normal.
/// The (u,v) grid is dyadic so that <F,F> evaluates to exactly zero.
struct LightConeSamples {
    std::vector<Eigen::Vector3d> points;
    std::vector<Eigen::Vector3d> xis;
    std::vector<std::pair<int, int>> grid_edges;  // 4-neighbor adjacency
};

LightConeSamples lightcone_samples(int half_extent = 24, int scale_bits = 4, int hole = 8);

struct CurveSpec {
    geometry::CurveEvaluator evaluator;
    bool closed = true;
    double t0 = 0.0;
    double t1 = 2.0 * 3.14159265358979323846;
};

/// Lookup by name; throws std::invalid_argument for unknown names.
/// Curve names: circle, ellipse, limacon, spiral, spiral-flat, double-circle,
/// parabola, wavy.
CurveSpec curve_by_name(const std::string& name,
                        const std::vector<double>& params = {});
bool is_curve_name(const std::string& name);
bool is_surface_name(const std::string& name);  // sphere
bool is_sample_name(const std::string& name);   // lightcone
std::vector<std::string> known_names();

}  // namespace nullfront::builtins
