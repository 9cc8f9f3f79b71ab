#include "nullfront/builtins.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nullfront::builtins {

using Eigen::Vector2d;
using Eigen::Vector3d;
using geometry::CurveEvaluator;
using geometry::SurfaceEvaluator;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

CurveEvaluator circle(double r) {
    CurveEvaluator ev;
    ev.pos = [r](double t) { return Vector2d(r * std::cos(t), r * std::sin(t)); };
    ev.d1 = [r](double t) { return Vector2d(-r * std::sin(t), r * std::cos(t)); };
    ev.d2 = [r](double t) { return Vector2d(-r * std::cos(t), -r * std::sin(t)); };
    ev.d3 = [r](double t) { return Vector2d(r * std::sin(t), -r * std::cos(t)); };
    return ev;
}

CurveEvaluator ellipse(double a, double b) {
    CurveEvaluator ev;
    ev.pos = [a, b](double t) { return Vector2d(a * std::cos(t), b * std::sin(t)); };
    ev.d1 = [a, b](double t) { return Vector2d(-a * std::sin(t), b * std::cos(t)); };
    ev.d2 = [a, b](double t) { return Vector2d(-a * std::cos(t), -b * std::sin(t)); };
    ev.d3 = [a, b](double t) { return Vector2d(a * std::sin(t), -b * std::cos(t)); };
    return ev;
}

CurveEvaluator limacon(double a, double b) {
    // (a - b sin t)(cos t, sin t) = (a cos t - (b/2) sin 2t,
    //                                a sin t - b/2 + (b/2) cos 2t)
    CurveEvaluator ev;
    ev.pos = [a, b](double t) {
        const double f = a - b * std::sin(t);
        return Vector2d(f * std::cos(t), f * std::sin(t));
    };
    ev.d1 = [a, b](double t) {
        return Vector2d(-a * std::sin(t) - b * std::cos(2 * t),
                        a * std::cos(t) - b * std::sin(2 * t));
    };
    ev.d2 = [a, b](double t) {
        return Vector2d(-a * std::cos(t) + 2 * b * std::sin(2 * t),
                        -a * std::sin(t) - 2 * b * std::cos(2 * t));
    };
    ev.d3 = [a, b](double t) {
        return Vector2d(a * std::sin(t) + 4 * b * std::cos(2 * t),
                        -a * std::cos(t) + 4 * b * std::sin(2 * t));
    };
    return ev;
}

namespace {

// bump(z) = exp(1 + g(z)), g = -1/(1-z^2), together with the first three
// derivatives of g.  Everything vanishes (to all orders) at |z| >= 1.
struct Bump {
    double value = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;
};

Bump bump_eval(double z) {
    Bump b;
    const double w = 1.0 - z * z;
    if (w <= 1e-6) return b;  // exp(1 - 1/w) underflows to zero long before
    const double g = -1.0 / w;
    const double e = std::exp(1.0 + g);
    const double g1 = -2.0 * z / (w * w);
    const double g2 = (-2.0 - 6.0 * z * z) / (w * w * w);
    const double g3 = -24.0 * z * (1.0 + z * z) / (w * w * w * w);
    b.value = e;
    b.d1 = e * g1;
    b.d2 = e * (g1 * g1 + g2);
    b.d3 = e * (g1 * g1 * g1 + 3.0 * g1 * g2 + g3);
    return b;
}

}  // namespace

double spiral_omega(double t, double amplitude, double center, double halfwidth) {
    return amplitude * bump_eval((t - center) / halfwidth).value;
}

CurveEvaluator spiral(double amplitude, double center, double halfwidth) {
    // gamma = e^omega u(t), u = (cos t, sin t)
    auto omega123 = [amplitude, center, halfwidth](double t) {
        const Bump b = bump_eval((t - center) / halfwidth);
        const double e1 = halfwidth;
        return Eigen::Vector4d(amplitude * b.value, amplitude * b.d1 / e1,
                               amplitude * b.d2 / (e1 * e1), amplitude * b.d3 / (e1 * e1 * e1));
    };
    CurveEvaluator ev;
    ev.pos = [omega123](double t) {
        const auto w = omega123(t);
        return Vector2d(std::exp(w(0)) * std::cos(t), std::exp(w(0)) * std::sin(t));
    };
    ev.d1 = [omega123](double t) {
        const auto w = omega123(t);
        const Vector2d u(std::cos(t), std::sin(t));
        const Vector2d up(-std::sin(t), std::cos(t));
        return Vector2d(std::exp(w(0)) * (w(1) * u + up));
    };
    ev.d2 = [omega123](double t) {
        const auto w = omega123(t);
        const Vector2d u(std::cos(t), std::sin(t));
        const Vector2d up(-std::sin(t), std::cos(t));
        return Vector2d(std::exp(w(0)) *
                        ((w(2) + w(1) * w(1) - 1.0) * u + 2.0 * w(1) * up));
    };
    ev.d3 = [omega123](double t) {
        const auto w = omega123(t);
        const Vector2d u(std::cos(t), std::sin(t));
        const Vector2d up(-std::sin(t), std::cos(t));
        const double cu = w(3) + 3.0 * w(1) * w(2) + w(1) * w(1) * w(1) - 3.0 * w(1);
        const double cup = 3.0 * (w(2) + w(1) * w(1)) - 1.0;
        return Vector2d(std::exp(w(0)) * (cu * u + cup * up));
    };
    return ev;
}

CurveEvaluator double_circle() {
    CurveEvaluator ev;
    ev.pos = [](double t) { return Vector2d(std::cos(2 * t), std::sin(2 * t)); };
    ev.d1 = [](double t) { return Vector2d(-2 * std::sin(2 * t), 2 * std::cos(2 * t)); };
    ev.d2 = [](double t) { return Vector2d(-4 * std::cos(2 * t), -4 * std::sin(2 * t)); };
    ev.d3 = [](double t) { return Vector2d(8 * std::sin(2 * t), -8 * std::cos(2 * t)); };
    return ev;
}

CurveEvaluator parabola() {
    CurveEvaluator ev;
    ev.pos = [](double t) { return Vector2d(t, t * t); };
    ev.d1 = [](double t) { return Vector2d(1.0, 2.0 * t); };
    ev.d2 = [](double) { return Vector2d(0.0, 2.0); };
    ev.d3 = [](double) { return Vector2d(0.0, 0.0); };
    return ev;
}

CurveEvaluator wavy_circle(double c) {
    CurveEvaluator ev;
    ev.pos = [c](double t) { return Vector2d(std::cos(t), std::sin(t) + c * std::sin(2 * t)); };
    ev.d1 = [c](double t) {
        return Vector2d(-std::sin(t), std::cos(t) + 2 * c * std::cos(2 * t));
    };
    ev.d2 = [c](double t) {
        return Vector2d(-std::cos(t), -std::sin(t) - 4 * c * std::sin(2 * t));
    };
    ev.d3 = [c](double t) {
        return Vector2d(std::sin(t), -std::cos(t) - 8 * c * std::cos(2 * t));
    };
    return ev;
}

SurfaceEvaluator sphere(double r) {
    SurfaceEvaluator ev;
    // inward normal, so both principal curvatures are 1/r
    ev.pos = [r](double th, double ph) {
        return Vector3d(r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph),
                        r * std::cos(th));
    };
    ev.du = [r](double th, double ph) {
        return Vector3d(r * std::cos(th) * std::cos(ph), r * std::cos(th) * std::sin(ph),
                        -r * std::sin(th));
    };
    ev.dv = [r](double th, double ph) {
        return Vector3d(-r * std::sin(th) * std::sin(ph), r * std::sin(th) * std::cos(ph), 0.0);
    };
    ev.duu = [r](double th, double ph) {
        return Vector3d(-r * std::sin(th) * std::cos(ph), -r * std::sin(th) * std::sin(ph),
                        -r * std::cos(th));
    };
    ev.duv = [r](double th, double ph) {
        return Vector3d(-r * std::cos(th) * std::sin(ph), r * std::cos(th) * std::cos(ph), 0.0);
    };
    ev.dvv = [r](double th, double ph) {
        return Vector3d(-r * std::sin(th) * std::cos(ph), -r * std::sin(th) * std::sin(ph), 0.0);
    };
    ev.nu = [](double th, double ph) {
        return Vector3d(-std::sin(th) * std::cos(ph), -std::sin(th) * std::sin(ph),
                        -std::cos(th));
    };
    ev.nu_du = [](double th, double ph) {
        return Vector3d(-std::cos(th) * std::cos(ph), -std::cos(th) * std::sin(ph),
                        std::sin(th));
    };
    ev.nu_dv = [](double th, double ph) {
        return Vector3d(std::sin(th) * std::sin(ph), -std::sin(th) * std::cos(ph), 0.0);
    };
    return ev;
}

LightConeSamples lightcone_samples(int half_extent, int scale_bits, int hole) {
    LightConeSamples out;
    const double scale = std::ldexp(1.0, -scale_bits);  // exact power of two
    const int side = 2 * half_extent + 1;
    std::vector<int> index(static_cast<size_t>(side) * side, -1);
    auto cell = [&](int i, int j) -> int& {
        return index[static_cast<size_t>(i + half_extent) * side + (j + half_extent)];
    };
    for (int i = -half_extent; i <= half_extent; ++i)
        for (int j = -half_extent; j <= half_extent; ++j) {
            if (std::abs(i) < hole && std::abs(j) < hole) continue;  // avoid the origin
            const double u = i * scale;
            const double v = j * scale;
            const double a = u * u + v * v;  // dyadic, so F is exact
            const double b = 2.0 * u * v;
            const double c = u * u - v * v;
            cell(i, j) = static_cast<int>(out.points.size());
            out.points.emplace_back(a, b, c);
            out.xis.emplace_back(1.0, b / a, c / a);
        }
    for (int i = -half_extent; i <= half_extent; ++i)
        for (int j = -half_extent; j <= half_extent; ++j) {
            const int k = cell(i, j);
            if (k < 0) continue;
            if (i + 1 <= half_extent && cell(i + 1, j) >= 0)
                out.grid_edges.emplace_back(k, cell(i + 1, j));
            if (j + 1 <= half_extent && cell(i, j + 1) >= 0)
                out.grid_edges.emplace_back(k, cell(i, j + 1));
        }
    return out;
}

CurveSpec curve_by_name(const std::string& name, const std::vector<double>& p) {
    auto arg = [&](size_t i, double dflt) { return i < p.size() ? p[i] : dflt; };
    if (name == "circle") return {circle(arg(0, 1.0)), true, 0.0, kTwoPi};
    if (name == "ellipse") return {ellipse(arg(0, 2.0), arg(1, 1.0)), true, 0.0, kTwoPi};
    if (name == "limacon") return {limacon(arg(0, 1.0), arg(1, 2.0)), true, 0.0, kTwoPi};
    if (name == "spiral")
        return {spiral(arg(0, 1.0), arg(1, 3.0 * kPi), arg(2, 1.0)), true, 0.0, 2.0 * kTwoPi};
    if (name == "spiral-flat")
        return {spiral(0.0, arg(0, 3.0 * kPi), arg(1, 1.0)), true, 0.0, 2.0 * kTwoPi};
    if (name == "double-circle") return {double_circle(), true, 0.0, kTwoPi};
    if (name == "parabola") return {parabola(), false, arg(0, -1.0), arg(1, 1.0)};
    if (name == "wavy") return {wavy_circle(arg(0, 0.9)), true, 0.0, kTwoPi};
    throw std::invalid_argument("unknown generator name: " + name);
}

bool is_curve_name(const std::string& name) {
    return name == "circle" || name == "ellipse" || name == "limacon" || name == "spiral" ||
           name == "spiral-flat" || name == "double-circle" || name == "parabola" ||
           name == "wavy";
}

bool is_surface_name(const std::string& name) { return name == "sphere"; }
bool is_sample_name(const std::string& name) { return name == "lightcone"; }

std::vector<std::string> known_names() {
    return {"circle", "ellipse",       "limacon",  "spiral", "spiral-flat",
            "double-circle", "parabola", "wavy",   "sphere", "lightcone"};
}

}  // namespace nullfront::builtins
