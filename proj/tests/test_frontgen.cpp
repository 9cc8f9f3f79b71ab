#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curves.hpp"
#include "nullfront/builtins.hpp"
#include "nullfront/frontgen.hpp"
#include "nullfront/geometry.hpp"
#include "nullfront/lorentz.hpp"
#include "nullfront/pipeline.hpp"

using namespace nullfront;
using frontgen::NullFront;
using frontgen::Sigma;
using frontgen::TWindow;
using geometry::GeneratingFront;

namespace {

constexpr double kPi = std::numbers::pi;

NullFront make_front(const geometry::CurveEvaluator& ev, int grid, TWindow w,
                     Sigma sigma = Sigma::Plus, int t_count = 33) {
    return frontgen::normal_form(GeneratingFront::build_curve(ev, grid), sigma, w, t_count);
}

GeneratingFront sampled_copy(const GeneratingFront& f) {
    Eigen::Matrix2Xd pos(2, f.node_count()), nrm(2, f.node_count());
    for (int k = 0; k < f.node_count(); ++k) {
        pos.col(k) = f.position(k);
        nrm.col(k) = f.normal(k);
    }
    return GeneratingFront::from_curve_samples(pos, nrm, f.closed(), f.params());
}

}  // namespace

TEST_CASE("the t=0 slice is the embedded generator") {
    const auto front = make_front(builtins::circle(), 128, {-1.0, 1.0});
    for (int k = 0; k < front.x_count(); ++k) {
        const Eigen::VectorXd p = front.point(0.0, k);
        CHECK(p(0) == 0.0);
        CHECK((p.tail(2) - front.generator().position(k)).norm() == 0.0);
    }
}

TEST_CASE("the height of F(t,x) is t") {
    const auto front = make_front(builtins::ellipse(), 128, {-2.0, 3.0});
    for (int j = 0; j < front.t_count(); ++j)
        for (int k = 0; k < front.x_count(); k += 7) {
            const double t = front.t_value(j);
            const lorentz::LorentzVector p{front.point(t, k)};
            CHECK(lorentz::height(p) == t);
        }
}

TEST_CASE("slices of the outward circle front are circles of radius 1+c") {
    const auto gen = GeneratingFront::build_curve(builtins::circle(), 128).flipped();
    const NullFront front = frontgen::normal_form(gen, Sigma::Plus, {0.0, 2.0}, 17);
    for (double c : {0.25, 1.0, 1.75}) {
        const Eigen::MatrixXd slice = frontgen::slice_polyline(front, c);
        for (int k = 0; k < slice.cols(); ++k) {
            CHECK(slice(0, k) == c);
            CHECK(slice.col(k).tail(2).norm() == doctest::Approx(1.0 + c).epsilon(1e-14));
        }
    }
}

TEST_CASE("e_normalized_field asserts its defining properties") {
    const auto front = make_front(builtins::ellipse(), 128, {0.0, 2.0});
    const Eigen::MatrixXd xi = frontgen::e_normalized_field(front);
    for (int k = 0; k < xi.cols(); ++k) {
        const Eigen::VectorXd x = xi.col(k);
        CHECK(std::abs(lorentz::euclidean_inner(x, x) - 2.0) <= 1e-13);
        CHECK(std::abs(lorentz::minkowski_inner(x, x)) <= 1e-13);
        CHECK(x(0) == 1.0);
    }

    // broken normalization must be flagged as an internal-consistency error
    Eigen::Matrix2Xd pos(2, 8), nrm(2, 8);
    for (int k = 0; k < 8; ++k) {
        const double t = 2.0 * kPi * k / 8;
        pos.col(k) = Eigen::Vector2d(std::cos(t), std::sin(t));
        nrm.col(k) = 1.1 * Eigen::Vector2d(-std::cos(t), -std::sin(t));
    }
    const auto bad = frontgen::normal_form(
        GeneratingFront::from_curve_samples(pos, nrm, true), Sigma::Plus, {0.0, 1.0}, 4);
    CHECK_THROWS_AS((void)frontgen::e_normalized_field(bad), std::runtime_error);
}

TEST_CASE("F_t equals xi_hat exactly and M_t has rank n") {
    const auto front = make_front(builtins::circle(), 128, {0.0, 2.0});
    for (int k = 0; k < front.x_count(); k += 5)
        for (double t : {0.0, 0.7, 2.0}) {
            const auto jet = frontgen::jet(front, t, k);
            CHECK((jet.dF.col(0) - front.xi_hat(k)).norm() == 0.0);
            CHECK(jet.rank_Mt == 2);
        }
}

TEST_CASE("the inward circle front is singular exactly on the focal line") {
    const auto front = make_front(builtins::circle(), 128, {0.0, 2.0});
    for (int k = 0; k < front.x_count(); k += 17) {
        const auto at_focal = frontgen::jet(front, 1.0, k);
        CHECK(at_focal.rank_dF == 1);
        CHECK(at_focal.rank_Mt == 2);
        CHECK(frontgen::is_singular_sample(front, 1.0, k));
        CHECK_FALSE(frontgen::is_singular_sample(front, 0.5, k));
        // the focal line is the lifted center (1, 0, 0)
        CHECK((front.point(1.0, k) - Eigen::Vector3d(1.0, 0.0, 0.0)).norm() <= 1e-15);
    }
}

TEST_CASE("sphere front jets have full rank at regular samples") {
    const auto gen = GeneratingFront::build_closed_surface(builtins::sphere(), 24, 48);
    const NullFront front = frontgen::normal_form(gen, Sigma::Plus, {0.0, 0.5}, 5);
    const auto nodes = front.jet_nodes();
    REQUIRE(!nodes.empty());
    for (size_t i = 0; i < nodes.size(); i += 13) {
        const auto jet = frontgen::jet(front, 0.25, nodes[i]);
        CHECK(jet.rank_dF == 3);
        CHECK(jet.rank_Mt == 3);
    }
}

TEST_CASE("surface-patch fronts carry full-rank jets and a degenerate metric") {
    const auto gen = geometry::GeneratingFront::build_surface_patch(
        testsupport::paraboloid_patch(), 9, 9, -0.5, 0.5, -0.5, 0.5);
    const NullFront front = frontgen::normal_form(gen, Sigma::Plus, {0.0, 0.4}, 3);
    for (int k : front.jet_nodes()) {
        const auto jet = frontgen::jet(front, 0.2, k);
        CHECK(jet.rank_dF == 3);
        CHECK(jet.rank_Mt == 3);
        const Eigen::VectorXd eigs = frontgen::induced_metric_eigenvalues(front, 0.2, k);
        CHECK(eigs(0) >= -1e-12);
        CHECK(std::abs(eigs(0)) <= 1e-12);
        CHECK(eigs(2) > 0.0);
    }
}

TEST_CASE("induced metric is positive semi-definite with d_t in its kernel") {
    const auto front = make_front(builtins::ellipse(), 128, {0.0, 3.0});
    for (int k = 0; k < front.x_count(); k += 11)
        for (double t : {0.0, 1.5, 3.0}) {
            const Eigen::MatrixXd g = frontgen::induced_metric(front, t, k);
            CHECK(std::abs(g(0, 0)) <= 1e-14);  // <xi,xi> = 0
            CHECK(std::abs(g(0, 1)) <= 1e-13);  // <xi, F_s> = 0
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
            CHECK(es.eigenvalues()(0) >= -1e-9);
            CHECK(std::abs(es.eigenvalues()(0)) <= 1e-9);
        }
}

TEST_CASE("parallel front is a pure lattice shift") {
    const auto front = make_front(builtins::ellipse(), 128, {0.0, 2.0});

    const auto same = frontgen::parallel_front(front, 0.0);
    for (int k = 0; k < front.x_count(); k += 9)
        CHECK((same.point(1.3, k) - front.point(1.3, k)).norm() == 0.0);

    for (double delta : {-1.0, 0.3, 2.0}) {
        const auto shifted = frontgen::parallel_front(front, delta);
        double max_shift_dev = 0.0, max_recompute_dev = 0.0;
        for (int j = 0; j < shifted.t_count(); ++j)
            for (int k = 0; k < front.x_count(); ++k) {
                const double t = shifted.t_value(j);
                max_shift_dev = std::max(
                    max_shift_dev, (shifted.point(t, k) - front.point(t + delta, k)).norm());
                const Eigen::VectorXd direct =
                    front.point(t, k) + delta * front.xi_hat(k);
                max_recompute_dev =
                    std::max(max_recompute_dev, (shifted.point(t, k) - direct).norm());
            }
        CHECK(max_shift_dev == 0.0);          // F^delta(t,x) = F(t+delta,x), bitwise
        CHECK(max_recompute_dev <= 1e-12);    // independent F + delta xi evaluation
    }
}

TEST_CASE("parallel shifts compose exactly") {
    const auto front = make_front(builtins::ellipse(), 64, {0.0, 2.0});
    const auto two_steps = frontgen::parallel_front(frontgen::parallel_front(front, 0.7), -1.9);
    const auto one_step = frontgen::parallel_front(front, 0.7 + -1.9);
    CHECK(two_steps.t_shift() == one_step.t_shift());
    for (int k = 0; k < front.x_count(); k += 7)
        CHECK((two_steps.point(0.4, k) - one_step.point(0.4, k)).norm() == 0.0);
}

TEST_CASE("the shifted circle front is singular on the slice t=0 after delta=1") {
    const auto front = make_front(builtins::circle(), 128, {0.0, 2.0});
    const auto shifted = frontgen::parallel_front(front, 1.0);
    for (int k = 0; k < front.x_count(); k += 17)
        CHECK(frontgen::is_singular_sample(shifted, 0.0, k));
}

TEST_CASE("sigma minus is the time reflection of sigma plus") {
    const auto gen = GeneratingFront::build_curve(builtins::ellipse(), 128);
    const NullFront plus = frontgen::normal_form(gen, Sigma::Plus, {-1.0, 2.0}, 9);
    const NullFront minus = frontgen::normal_form(gen, Sigma::Minus, {-1.0, 2.0}, 9);
    for (int k = 0; k < gen.node_count(); k += 5)
        for (double t : {-1.0, 0.4, 2.0}) {
            // direct evaluation of (0, f) + t (1, -nu)
            Eigen::Vector3d direct;
            direct(0) = t;
            direct.tail(2) = gen.position(k) + t * Eigen::Vector2d(-gen.normal(k));
            CHECK((minus.point(t, k) - direct).norm() == 0.0);

            Eigen::VectorXd reflected = plus.point(-t, k);
            reflected(0) = -reflected(0);
            CHECK((minus.point(t, k) - reflected).norm() == 0.0);

            const Eigen::VectorXd xi = minus.xi_hat(k);
            CHECK(std::abs(lorentz::minkowski_inner(xi, xi)) <= 1e-13);
            CHECK(xi(0) == 1.0);
        }
}

TEST_CASE("slice congruence with the parallel generator is exact") {
    const auto gen = GeneratingFront::build_curve(builtins::limacon(), 128);
    const NullFront front = frontgen::normal_form(gen, Sigma::Plus, {0.0, 2.0}, 9);
    for (double c : {0.0, 0.35, 1.7}) {
        const Eigen::MatrixXd slice = frontgen::slice_polyline(front, c);
        const auto par = geometry::parallel(gen, c);
        for (int k = 0; k < gen.node_count(); ++k) {
            CHECK(slice(0, k) == c);
            CHECK((slice.col(k).tail(2) - par.front.position(k)).norm() == 0.0);
        }
    }
}

TEST_CASE("xi_hat is orthogonal to the spatial Jacobian columns") {
    const auto analytic = make_front(builtins::ellipse(), 256, {0.0, 2.0});
    const auto sampled = frontgen::normal_form(sampled_copy(analytic.generator()), Sigma::Plus,
                                               {0.0, 2.0}, 9);
    double worst_analytic = 0.0, worst_tangent_fd = 0.0, worst_fd = 0.0;
    for (int k = 0; k < analytic.x_count(); ++k)
        for (double t : {0.0, 1.0, 2.0}) {
            const auto ja = frontgen::jet(analytic, t, k);
            const auto jf = frontgen::jet(sampled, t, k);
            const Eigen::VectorXd xi = analytic.xi_hat(k);
            worst_analytic = std::max(worst_analytic,
                                      std::abs(lorentz::minkowski_inner(
                                          xi, Eigen::VectorXd(ja.dF.col(1)))));
            const double fd = std::abs(lorentz::minkowski_inner(
                xi, Eigen::VectorXd(jf.dF.col(1))));
            worst_fd = std::max(worst_fd, fd);
            if (t == 0.0) worst_tangent_fd = std::max(worst_tangent_fd, fd);
        }
    CHECK(worst_analytic <= 1e-12);
    // the t = 0 column is the finite-difference tangent alone
    CHECK(worst_tangent_fd <= 1e-8);
    // away from t = 0 the stencil error of nu' enters at O(h^4 |nu^(5)|)
    CHECK(worst_fd <= 1e-4);
}

TEST_CASE("finite-difference jets agree with analytic jets") {
    auto worst_at = [](int grid) {
        const auto analytic = make_front(builtins::ellipse(), grid, {0.0, 2.0});
        const auto sampled = frontgen::normal_form(sampled_copy(analytic.generator()),
                                                   Sigma::Plus, {0.0, 2.0}, 9);
        double worst = 0.0;
        for (int k = 0; k < analytic.x_count(); ++k) {
            const auto ja = frontgen::jet(analytic, 0.8, k);
            const auto jf = frontgen::jet(sampled, 0.8, k);
            worst = std::max(worst, (ja.dF - jf.dF).cwiseAbs().maxCoeff());
            worst = std::max(worst, (ja.Mt - jf.Mt).cwiseAbs().maxCoeff());
        }
        return worst;
    };
    const double coarse = worst_at(128);
    const double fine = worst_at(256);
    const double h = 2.0 * kPi / 256;
    CHECK(fine <= h * h);           // within O(h^2)
    CHECK(fine <= coarse / 3.9);    // and converging at least quadratically
}

TEST_CASE("lift embedding check distinguishes single and double traversal") {
    CHECK(frontgen::lift_embedding_check(make_front(builtins::ellipse(), 256, {0.0, 1.0})).ok);
    // the limacon self-intersects in position but the normals differ there
    CHECK(frontgen::lift_embedding_check(make_front(builtins::limacon(), 256, {0.0, 1.0})).ok);
    const auto doubled = make_front(builtins::double_circle(), 256, {0.0, 1.0});
    const auto check = frontgen::lift_embedding_check(doubled);
    CHECK_FALSE(check.ok);
    CHECK(check.min_separation <= 1e-12);
}

TEST_CASE("empty t-window is rejected") {
    const auto gen = GeneratingFront::build_curve(builtins::circle(), 64);
    CHECK_THROWS_AS((void)frontgen::normal_form(gen, Sigma::Plus, {1.0, 1.0}, 8),
                    std::invalid_argument);
}

TEST_CASE("regular samples are dense on every built-in curve front") {
    for (const char* name : {"circle", "ellipse", "limacon"}) {
        const auto spec = builtins::curve_by_name(name);
        const auto front = frontgen::normal_form(
            GeneratingFront::build_curve(spec.evaluator, 512, spec.t0, spec.t1), Sigma::Plus,
            {0.0, 4.5}, 9);
        const auto suite = pipeline::invariant_suite(front);
        for (const auto& entry : suite)
            if (entry.name == "singular_fraction_max") {
                INFO(name);
                CHECK(entry.max_violation < 0.05);
            }
    }
}
