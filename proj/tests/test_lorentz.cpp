#include <doctest.h>

#include <cmath>
#include <random>

#include "nullfront/lorentz.hpp"

using namespace nullfront::lorentz;

namespace {

std::mt19937_64 rng(20240915);

Eigen::VectorXd random_vec(int dim, double scale = 1.0) {
    std::normal_distribution<double> d(0.0, scale);
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = d(rng);
    return v;
}

Eigen::VectorXd random_unit_spatial(int n) {
    Eigen::VectorXd u = random_vec(n);
    while (u.norm() < 1e-3) u = random_vec(n);
    return u / u.norm();
}

}  // namespace

TEST_CASE("minkowski inner product signature") {
    const int dim = 4;
    CHECK(minkowski_inner(LorentzVector::time_axis(dim), LorentzVector::time_axis(dim)) == -1.0);

    const LorentzVector nullvec{1.0, 1.0, 0.0};
    CHECK(minkowski_inner(nullvec, nullvec) == 0.0);

    // (1, nu) with |nu| = 1 is null and has Euclidean norm sqrt(2)
    for (int rep = 0; rep < 50; ++rep) {
        Eigen::VectorXd c(4);
        c(0) = 1.0;
        c.tail(3) = random_unit_spatial(3);
        const LorentzVector xi(c);
        CHECK(std::abs(minkowski_inner(xi, xi)) <= 1e-14);
        CHECK(euclidean_norm(xi) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(is_null(xi));
        CHECK(is_future_pointing(xi));
    }
}

TEST_CASE("euclidean inner product") {
    CHECK(euclidean_norm(LorentzVector{0.0, 0.0, 0.0}) == 0.0);
    CHECK(euclidean_inner(LorentzVector{1.0, 1.0, 0.0}, LorentzVector{1.0, -1.0, 0.0}) == 0.0);
}

TEST_CASE("dimension mismatch is rejected") {
    const LorentzVector a{1.0, 0.0, 0.0};
    const LorentzVector b{1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS((void)minkowski_inner(a, b), std::invalid_argument);
    CHECK_THROWS_AS((void)euclidean_inner(a, b), std::invalid_argument);
}

TEST_CASE("null and future classification") {
    CHECK(is_null(LorentzVector{1.0, 1.0, 0.0, 0.0}));
    CHECK(is_future_pointing(LorentzVector{1.0, 1.0, 0.0, 0.0}));
    CHECK_FALSE(is_null(LorentzVector{1.0, 0.0, 0.0, 0.0}));
    CHECK_THROWS_AS((void)is_future_pointing(LorentzVector{0.0, 0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("bilinearity and symmetry") {
    for (int rep = 0; rep < 200; ++rep) {
        const int dim = 3 + static_cast<int>(rng() % 4);
        const Eigen::VectorXd u = random_vec(dim), v = random_vec(dim), w = random_vec(dim);
        std::uniform_real_distribution<double> coef(-2.0, 2.0);
        const double a = coef(rng), b = coef(rng);
        const LorentzVector lu(u), lv(v), lw(w);
        const LorentzVector combo(a * u + b * v);
        CHECK(std::abs(minkowski_inner(combo, lw) -
                       (a * minkowski_inner(lu, lw) + b * minkowski_inner(lv, lw))) <= 1e-12);
        CHECK(std::abs(minkowski_inner(lu, lv) - minkowski_inner(lv, lu)) <= 1e-12);
        CHECK(std::abs(euclidean_inner(combo, lw) -
                       (a * euclidean_inner(lu, lw) + b * euclidean_inner(lv, lw))) <= 1e-12);
        CHECK(std::abs(euclidean_inner(lu, lv) - euclidean_inner(lv, lu)) <= 1e-12);
    }
}

TEST_CASE("orthogonal complement of the time axis") {
    const int dim = 4;
    const Subspace v({LorentzVector::time_axis(dim)});
    const Subspace perp = orthogonal_complement(v);
    CHECK(perp.dim() == 3);
    Eigen::MatrixXd spatial = Eigen::MatrixXd::Zero(4, 3);
    spatial(1, 0) = spatial(2, 1) = spatial(3, 2) = 1.0;
    CHECK(same_subspace(perp, Subspace(spatial)));
}

TEST_CASE("a light-like line lies in its own complement") {
    const Subspace v({LorentzVector{1.0, 1.0, 0.0}});
    const Subspace perp = orthogonal_complement(v);
    CHECK(perp.dim() == 2);
    CHECK(perp.contains(LorentzVector{1.0, 1.0, 0.0}));
}

TEST_CASE("complement of a random space-like plane in R^4_1") {
    for (int rep = 0; rep < 50; ++rep) {
        Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(4, 2);
        Eigen::Matrix<double, 3, 2> m;
        do {
            m.col(0) = random_vec(3);
            m.col(1) = random_vec(3);
    } while (Eigen::Vector3d(m.col(0)).cross(Eigen::Vector3d(m.col(1))).norm() < 1e-3);
        basis.block(1, 0, 3, 2) = m;
        const Subspace v(basis);
        const Subspace perp = orthogonal_complement(v);
        CHECK(perp.dim() == 2);
        // verified by explicit Gram computation against the original basis
        for (int i = 0; i < perp.dim(); ++i)
            for (int j = 0; j < v.dim(); ++j)
                CHECK(std::abs(minkowski_inner(perp.basis_vector(i), v.basis_vector(j))) <=
                      1e-12 * euclidean_norm(perp.basis_vector(i)) *
                          euclidean_norm(v.basis_vector(j)));
    }
}

TEST_CASE("complement dimensions and double complement") {
    for (int rep = 0; rep < 100; ++rep) {
        const int dim = 3 + static_cast<int>(rng() % 4);
        const int k = 1 + static_cast<int>(rng() % (dim - 1));
        Eigen::MatrixXd basis(dim, k);
        for (;;) {
            for (int c = 0; c < k; ++c) basis.col(c) = random_vec(dim);
            try {
                const Subspace v(basis);
                const Subspace perp = orthogonal_complement(v);
                CHECK(v.dim() + perp.dim() == dim);
                CHECK(same_subspace(orthogonal_complement(perp), v));
                break;
            } catch (const std::invalid_argument&) {
                // dependent random draw; retry
            }
        }
    }
}

TEST_CASE("degenerate vector of a light-like line") {
    const Subspace v({LorentzVector{1.0, 1.0, 0.0}});
    const auto d = degenerate_vector(v);
    REQUIRE(d.has_value());
    const double s = (*d)[0];
    CHECK(std::abs(s) > 1e-12);
    CHECK(std::abs((*d)[1] - s) <= 1e-12 * std::abs(s));
    CHECK(std::abs((*d)[2]) <= 1e-12 * std::abs(s));
}

TEST_CASE("space-like plane is non-degenerate") {
    const Subspace v(std::vector<LorentzVector>{LorentzVector{0.0, 1.0, 0.0, 0.0}, LorentzVector{0.0, 0.0, 1.0, 0.0}});
    CHECK_FALSE(degenerate_vector(v).has_value());
}

TEST_CASE("degenerate vector matches the Gram-kernel hand oracle") {
    // V = span{(1,1,0,0), (0,0,1,0)}: Gram = [[0,0],[0,1]], kernel (1,0)
    const Subspace v(std::vector<LorentzVector>{LorentzVector{1.0, 1.0, 0.0, 0.0}, LorentzVector{0.0, 0.0, 1.0, 0.0}});
    const auto d = degenerate_vector(v);
    REQUIRE(d.has_value());
    const double s = (*d)[0];
    CHECK(std::abs(s) > 1e-12);
    CHECK(std::abs((*d)[1] - s) <= 1e-12 * std::abs(s));
    CHECK(std::abs((*d)[2]) <= 1e-12 * std::abs(s));
    CHECK(std::abs((*d)[3]) <= 1e-12 * std::abs(s));
}

TEST_CASE("non-degenerate subspaces meet their complement trivially") {
    int checked = 0;
    while (checked < 1000) {
        const int dim = 3 + static_cast<int>(rng() % 4);
        const int k = 1 + static_cast<int>(rng() % (dim - 1));
        Eigen::MatrixXd basis(dim, k);
        for (int c = 0; c < k; ++c) basis.col(c) = random_vec(dim);
        try {
            const Subspace v(basis);
            if (is_degenerate(v)) continue;
            const Subspace perp = orthogonal_complement(v);
            CHECK(joint_rank(v, perp) == dim);
            ++checked;
        } catch (const std::invalid_argument&) {
        }
    }
}

TEST_CASE("subspace lemma: hypothesis failure is reported") {
    const Subspace v({LorentzVector{0.0, 0.0, 1.0, 0.0}});
    const Subspace w({LorentzVector{1.0, 1.0, 0.0, 0.0}});
    const Subspace n({LorentzVector{1.0, 1.0, 0.0, 0.0}});
    const auto rep = check_subspace_lemma(v, w, n);
    CHECK_FALSE(rep.n_meets_w_trivially);
    CHECK_FALSE(rep.hypotheses_hold);
    CHECK_FALSE(rep.conclusion_checked);
}

TEST_CASE("subspace lemma: hand-checked positive instance") {
    const Subspace v({LorentzVector{0.0, 0.0, 0.0, 1.0}});
    const Subspace w({LorentzVector{0.0, 0.0, 1.0, 0.0}});
    const Subspace n({LorentzVector{1.0, 1.0, 0.0, 0.0}});
    const auto rep = check_subspace_lemma(v, w, n);
    CHECK(rep.n_is_line);
    CHECK(rep.n_is_lightlike);
    CHECK(rep.n_meets_w_trivially);
    CHECK(rep.v_perp_n);
    CHECK(rep.w_perp_n);
    CHECK(rep.w_perp_v);
    CHECK(rep.hypotheses_hold);
    CHECK(rep.conclusion_holds);
}

namespace {

struct LemmaTriple {
    Subspace v, w, n;
};

/// Hypothesis-satisfying triple by construction: null N, W inside N^perp
/// with N cap W = {0}, V inside (N + W)^perp.
LemmaTriple random_lemma_triple(int dim) {
    const int n_sp = dim - 1;
    for (;;) {
        Eigen::VectorXd gen(dim);
        gen(0) = 1.0;
        gen.tail(n_sp) = random_unit_spatial(n_sp);
        const Subspace n_space{Eigen::MatrixXd(gen)};
        const Subspace nperp = orthogonal_complement(n_space);

        const int wdim = 1 + static_cast<int>(rng() % std::max(1, n_sp - 1));
        Eigen::MatrixXd wbasis(dim, wdim);
        for (int c = 0; c < wdim; ++c) wbasis.col(c) = nperp.basis() * random_vec(nperp.dim());
        try {
            const Subspace w(wbasis);
            if (joint_rank(n_space, w) != 1 + wdim) continue;

            Eigen::MatrixXd joint(dim, 1 + wdim);
            joint << n_space.basis(), w.basis();
            const Subspace z = orthogonal_complement(Subspace(joint));
            const int vdim = 1 + static_cast<int>(rng() % z.dim());
            Eigen::MatrixXd vbasis(dim, vdim);
            for (int c = 0; c < vdim; ++c) vbasis.col(c) = z.basis() * random_vec(z.dim());
            const Subspace v(vbasis);
            return {v, w, n_space};
        } catch (const std::invalid_argument&) {
        }
    }
}

}  // namespace

TEST_CASE("subspace lemma: randomized hypothesis-satisfying sweep") {
    int hypothesis_failures = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const int dim = 3 + static_cast<int>(rng() % 4);
        const LemmaTriple triple = random_lemma_triple(dim);
        const auto report = check_subspace_lemma(triple.v, triple.w, triple.n);
        if (!report.hypotheses_hold) {
            ++hypothesis_failures;
            continue;
        }
        CHECK(report.conclusion_holds);
    }
    CHECK(hypothesis_failures == 0);
}
