// Acceptance suite: end-to-end checks with pinned tolerances, one verdict
// line per criterion.  Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "nullfront/builtins.hpp"
#include "nullfront/completion.hpp"
#include "nullfront/frontgen.hpp"
#include "nullfront/geometry.hpp"
#include "nullfront/lorentz.hpp"
#include "nullfront/pipeline.hpp"
#include "nullfront/singular.hpp"
#include "oracle.hpp"

using namespace nullfront;
using frontgen::NullFront;
using frontgen::Sigma;
using geometry::GeneratingFront;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failed = 0;
std::vector<std::string> g_notes;

struct Criterion {
    std::string label;
    bool ok = true;
    explicit Criterion(std::string l) : label(std::move(l)) { g_notes.clear(); }
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            g_notes.push_back(what);
        }
    }
    void finish() const {
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", label.c_str());
        for (const auto& n : g_notes) std::printf("       - %s\n", n.c_str());
        if (!ok) ++g_failed;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

NullFront curve_front(const char* name, int grid, frontgen::TWindow w,
                      Sigma sigma = Sigma::Plus, int t_count = 33) {
    const auto spec = builtins::curve_by_name(name);
    return frontgen::normal_form(
        GeneratingFront::build_curve(spec.evaluator, grid, spec.t0, spec.t1), sigma, w, t_count);
}

double suite_value(const std::vector<pipeline::InvariantEntry>& suite, const char* name) {
    for (const auto& e : suite)
        if (e.name == name) return e.max_violation;
    return std::numeric_limits<double>::quiet_NaN();
}

// --- criteria ---------------------------------------------------------------

void criterion_1() {
    Criterion c("1. ellipse pipeline: 4 non-cuspidal points at the axes (grid 512, < 5 s)");
    const auto t0 = std::chrono::steady_clock::now();

    pipeline::JobConfig cfg;
    cfg.example = "ellipse";
    cfg.grid = 512;
    cfg.t_window = {0.0, 4.5};
    const auto run = pipeline::run(cfg);
    c.expect(run.exit_code == 0, "pipeline failed: " + run.error);
    if (run.exit_code == 0) {
        const auto rep = nlohmann::json::parse(run.report_json);
        c.expect(rep.at("counts").at("non_cuspidal") == 4,
                 "report must contain non_cuspidal = 4");
        c.expect(rep.at("counts").at("undetermined") == 0,
                 "report must contain no undetermined points");
    }

    // locus-point classification in detail
    const auto front = curve_front("ellipse", 512, {0.0, 4.5});
    const auto locus = singular::classify(singular::singular_locus(front), front);
    std::vector<double> non_cuspidal_params;
    int cuspidal = 0, other = 0;
    for (const auto& p : locus.points) {
        switch (p.cls) {
            case singular::PointClass::NonCuspidal:
                non_cuspidal_params.push_back(front.generator().param(p.x_index));
                break;
            case singular::PointClass::CuspidalEdge: ++cuspidal; break;
            default: ++other; break;
        }
    }
    c.expect(non_cuspidal_params.size() == 4,
             "expected exactly 4 non-cuspidal points, got " +
                 std::to_string(non_cuspidal_params.size()));
    const double expected[4] = {0.0, kPi / 2, kPi, 3 * kPi / 2};
    if (non_cuspidal_params.size() == 4)
        for (int i = 0; i < 4; ++i)
            c.expect(std::abs(non_cuspidal_params[i] - expected[i]) <= 1e-6,
                     "vertex position off: " + std::to_string(non_cuspidal_params[i]));
    c.expect(other == 0, "locus has undetermined/unclassified points");
    c.expect(cuspidal == static_cast<int>(locus.points.size()) - 4,
             "all remaining locus points must be cuspidal edges");
    const double dt = seconds_since(t0);
    c.expect(dt < 5.0, "runtime " + std::to_string(dt) + " s exceeds 5 s");
    c.finish();
}

void criterion_2() {
    Criterion c("2. limacon pipeline: 2 non-cuspidal points, non-embedded (< 5 s)");
    const auto t0 = std::chrono::steady_clock::now();

    pipeline::JobConfig cfg;
    cfg.example = "limacon";
    cfg.grid = 512;
    cfg.t_window = {0.0, 2.5};
    const auto run = pipeline::run(cfg);
    c.expect(run.exit_code == 0, "pipeline failed: " + run.error);
    if (run.exit_code == 0) {
        const auto rep = nlohmann::json::parse(run.report_json);
        c.expect(rep.at("counts").at("non_cuspidal") == 2,
                 "report must contain non_cuspidal = 2");
        c.expect(rep.at("four_vertex").at("embedded") == false,
                 "generator must be flagged non-embedded");
        c.expect(rep.at("four_vertex").at("hypothesis_met") == false,
                 "four-vertex audit must report hypothesis-not-met");
    }
    const double dt = seconds_since(t0);
    c.expect(dt < 5.0, "runtime " + std::to_string(dt) + " s exceeds 5 s");
    c.finish();
}

void criterion_3() {
    Criterion c("3. null-front invariant suite on ellipse, circle, limacon, sphere");
    struct Case {
        std::string name;
        NullFront front;
    };
    std::vector<Case> cases;
    cases.push_back({"ellipse", curve_front("ellipse", 256, {0.0, 4.5})});
    cases.push_back({"circle", curve_front("circle", 256, {0.0, 2.0})});
    cases.push_back({"limacon", curve_front("limacon", 256, {0.0, 2.5})});
    cases.push_back({"sphere", frontgen::normal_form(
                                   GeneratingFront::build_closed_surface(builtins::sphere(),
                                                                         128, 128),
                                   Sigma::Plus, {0.0, 2.0}, 3)});
    for (const auto& [name, front] : cases) {
        const auto suite = pipeline::invariant_suite(front);
        c.expect(suite_value(suite, "xi_null") <= 1e-10, name + ": |<xi,xi>| > 1e-10");
        c.expect(suite_value(suite, "xi_enorm") <= 1e-10, name + ": |(xi,xi)_E - 2| > 1e-10");
        c.expect(suite_value(suite, "xi_orthogonality") <= 1e-8,
                 name + ": |<xi, F_u>| > 1e-8");
        c.expect(suite_value(suite, "mt_rank_defect") == 0.0, name + ": rank(M_t) < n somewhere");
        c.expect(suite_value(suite, "metric_min_eig") <= 1e-9,
                 name + ": smallest metric eigenvalue outside [-1e-9, 1e-9]");
        c.expect(suite_value(suite, "metric_kernel_dt") <= 1e-9,
                 name + ": d_t not in the kernel eigenspace");
    }
    c.finish();
}

void criterion_4() {
    Criterion c("4. parallel-front identity for delta in {-1, 0.3, 2}");
    const auto front = curve_front("ellipse", 256, {0.0, 2.0});
    for (double delta : {-1.0, 0.3, 2.0}) {
        const auto shifted = frontgen::parallel_front(front, delta);
        double lattice_dev = 0.0, direct_dev = 0.0;
        for (int j = 0; j < shifted.t_count(); ++j)
            for (int k = 0; k < shifted.x_count(); ++k) {
                const double t = shifted.t_value(j);
                lattice_dev = std::max(lattice_dev,
                                       (shifted.point(t, k) - front.point(t + delta, k)).norm());
                const Eigen::VectorXd direct = front.point(t, k) + delta * front.xi_hat(k);
                direct_dev = std::max(direct_dev, (shifted.point(t, k) - direct).norm());
            }
        c.expect(lattice_dev == 0.0, "lattice-shift identity not exact for delta " +
                                         std::to_string(delta));
        c.expect(direct_dev <= 1e-12,
                 "independent F + delta xi deviates by " + std::to_string(direct_dev));
    }
    c.finish();
}

void criterion_5() {
    Criterion c("5. singular-locus oracle equivalence on a 512x512 lattice");
    struct Case {
        const char* name;
        double t_hi;
    };
    for (const Case cs : {Case{"circle", 2.0}, Case{"ellipse", 4.5}, Case{"limacon", 2.5}}) {
        const auto front = curve_front(cs.name, 512, {0.0, cs.t_hi});
        const auto scan = testsupport::brute_singular_scan(front, 512);
        const auto locus = singular::singular_locus(front);
        std::vector<double> formula_t(front.x_count(),
                                      std::numeric_limits<double>::quiet_NaN());
        for (const auto& p : locus.points) formula_t[p.x_index] = p.t;
        const double cell = scan.t_step;

        bool brute_matched = true;
        for (const auto& [j, k] : scan.cells) {
            if (!std::isfinite(formula_t[k]) ||
                std::abs(scan.t_lo + cell * j - formula_t[k]) > cell)
                brute_matched = false;
        }
        c.expect(brute_matched,
                 std::string(cs.name) + ": brute-force cell without a formula point nearby");

        bool formula_matched = true;
        int formula_count = 0;
        for (int k = 0; k < front.x_count(); ++k) {
            if (!std::isfinite(formula_t[k])) continue;
            if (formula_t[k] < scan.t_lo + cell || formula_t[k] > front.window().hi - cell)
                continue;
            ++formula_count;
            bool hit = false;
            for (const auto& [j, kk] : scan.cells)
                if (kk == k && std::abs(scan.t_lo + cell * j - formula_t[k]) <= cell) hit = true;
            if (!hit) formula_matched = false;
        }
        c.expect(formula_matched,
                 std::string(cs.name) + ": formula point missed by the brute-force scan");
        c.expect(formula_count > 0, std::string(cs.name) + ": no formula points in the window");
        c.expect(!scan.cells.empty(), std::string(cs.name) + ": empty brute-force scan");
    }
    c.finish();
}

void criterion_6() {
    Criterion c("6. reconstruction round trip from 200 random ellipse-front samples");
    const auto gen = GeneratingFront::build_curve(builtins::ellipse(), 512);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> us(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> ut(-1.0, 3.0);
    std::vector<completion::ReconstructSample> samples;
    std::vector<double> s_values;
    for (int q = 0; q < 200; ++q) {
        const double s = us(rng), t = ut(rng);
        const Eigen::Vector2d f = gen.position_at(s);
        const Eigen::Vector2d nu = gen.normal_at(s);
        completion::ReconstructSample smp;
        smp.xi << 1.0, nu(0), nu(1);
        const Eigen::Vector2d spatial = f + t * nu;
        smp.point << t, spatial(0), spatial(1);
        samples.push_back(smp);
        s_values.push_back(s);
    }
    const auto res = completion::reconstruct_generator(samples);
    double max_err = 0.0;
    for (int q = 0; q < res.n_input; ++q) {
        if (res.class_of[q] < 0) {
            c.expect(false, "sample rejected unexpectedly");
            continue;
        }
        const int cl = res.class_of[q];
        max_err = std::max(max_err, (res.patch.g(cl) - gen.position_at(s_values[q])).norm());
        max_err = std::max(max_err, (res.patch.nu(cl) - gen.normal_at(s_values[q])).norm());
    }
    c.expect(max_err <= 1e-9, "round-trip error " + std::to_string(max_err) + " > 1e-9");
    c.finish();
}

void criterion_7() {
    Criterion c("7. light-cone double cover with exactly null samples");
    const auto lc = builtins::lightcone_samples();
    double max_mink = 0.0;
    std::vector<completion::ReconstructSample> samples(lc.points.size());
    for (size_t q = 0; q < lc.points.size(); ++q) {
        samples[q].point = lc.points[q];
        samples[q].xi = lc.xis[q];
        const auto& p = lc.points[q];
        max_mink = std::max(max_mink, std::abs(lorentz::minkowski_inner(
                                          Eigen::VectorXd(p), Eigen::VectorXd(p))));
    }
    c.expect(max_mink == 0.0, "max |<F,F>| is not exactly zero");

    completion::ReconstructOptions opts;
    opts.adjacency = lc.grid_edges;
    const auto res = completion::reconstruct_generator(samples, opts);
    c.expect(res.cover_multiplicity == 2,
             "cover multiplicity " + std::to_string(res.cover_multiplicity) + " != 2");
    c.expect(!res.lift_embedding_ok, "lift-embedding check must fail for the double cover");
    c.expect(res.patch.closed(), "recovered generator must close into a circle");
    double max_g = 0.0;
    for (int k = 0; k < res.patch.size(); ++k) max_g = std::max(max_g, res.patch.g(k).norm());
    c.expect(max_g <= 1e-9, "recovered generator must collapse to the cone vertex");
    c.finish();
}

void criterion_8() {
    Criterion c("8. gluing three ellipse-front windows into a single closed completion");
    const int n = 512;
    const auto front = curve_front("ellipse", n, {0.0, 1.0}, Sigma::Plus, 3);
    std::vector<completion::Patch> patches;
    const int base = n / 3, overlap = 20;
    for (int w = 0; w < 3; ++w) {
        std::vector<completion::ReconstructSample> samples;
        std::vector<std::pair<int, int>> adjacency;
        const int lo = w * base - overlap;
        const int len = base + 2 * overlap + (w == 2 ? n - 3 * base : 0);
        for (int r = 0; r < 3; ++r)
            for (int i = 0; i < len; ++i) {
                const int k = ((lo + i) % n + n) % n;
                completion::ReconstructSample smp;
                smp.point = front.point(front.t_value(r), k);
                smp.xi = front.xi_hat(k);
                samples.push_back(smp);
                const int id = r * len + i;
                if (i > 0) adjacency.emplace_back(id - 1, id);
                if (r > 0) adjacency.emplace_back(id - len, id);
            }
        completion::ReconstructOptions opts;
        opts.adjacency = std::move(adjacency);
        opts.epsilon = 0.5;
        opts.t_center = 0.5;
        patches.push_back(completion::reconstruct_generator(samples, opts).patch);
    }
    const auto atlas = completion::glue(patches);
    c.expect(atlas.class_count == n, "class count " + std::to_string(atlas.class_count) +
                                         " != deduplicated sample count " + std::to_string(n));
    c.expect(atlas.chain_closed && atlas.connected, "Sigma_F is not a single closed chain");
    c.expect(!atlas.non_hausdorff, "unexpected non-Hausdorff gluing");
    c.expect(atlas.lift_verification_max <= 1e-9,
             "L_F = L_G o Phi deviation " + std::to_string(atlas.lift_verification_max));
    c.finish();
}

void criterion_9() {
    Criterion c("9. spiral bump forces inadmissibility; the flat spiral is related");
    const int grid = 1024;
    const double h = 4.0 * kPi / grid, eps0 = 1.0;
    completion::RelatedTol rtol;
    rtol.neighbors = 8;
    const auto window_range = [&](double center) {
        const int lo = static_cast<int>(std::ceil((center - eps0 - 1.5 * h) / h));
        const int hi = static_cast<int>(std::floor((center + eps0 + 1.5 * h) / h));
        return std::pair<int, int>(lo, hi - lo + 1);
    };
    const auto [lo1, len1] = window_range(kPi);
    const auto [lo2, len2] = window_range(3.0 * kPi);

    auto cut = [&](const GeneratingFront& gen, int lo, int len) {
        Eigen::Matrix2Xd g(2, len), nu(2, len);
        for (int i = 0; i < len; ++i) {
            g.col(i) = gen.position(lo + i);
            nu.col(i) = gen.normal(lo + i);
        }
        return completion::Patch(g, nu, false);
    };

    {
        const auto gen = GeneratingFront::build_curve(builtins::spiral(1.0, 3.0 * kPi, eps0),
                                                      grid, 0.0, 4.0 * kPi);
        const auto adm =
            completion::admissibility_check(cut(gen, lo1, len1), cut(gen, lo2, len2), 0.1, 1e-3,
                                            rtol);
        c.expect(adm.verdict == completion::AdmissibilityVerdict::Inadmissible,
                 std::string("bump-on verdict is ") + completion::to_string(adm.verdict));
        bool tangential = false;
        for (const auto& ct : adm.contacts)
            if (!ct.transversal) tangential = true;
        c.expect(tangential, "no non-transversal contact reported");
    }
    {
        const auto gen = GeneratingFront::build_curve(builtins::spiral(0.0, 3.0 * kPi, eps0),
                                                      grid, 0.0, 4.0 * kPi);
        const auto adm =
            completion::admissibility_check(cut(gen, lo1, len1), cut(gen, lo2, len2), 0.1, 1e-3,
                                            rtol);
        c.expect(adm.verdict == completion::AdmissibilityVerdict::Related,
                 std::string("bump-off verdict is ") + completion::to_string(adm.verdict));
    }
    c.finish();
}

void criterion_10() {
    Criterion c("10. appendix lemma sweep and the non-degenerate complement fact");
    using namespace nullfront::lorentz;
    std::mt19937_64 rng(424242);
    auto random_vec = [&](int dim) {
        std::normal_distribution<double> d(0.0, 1.0);
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v(i) = d(rng);
        return v;
    };

    int lemma_ok = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const int dim = 3 + static_cast<int>(rng() % 4);  // ambient dimensions 3..6
        for (;;) {
            Eigen::VectorXd gen = random_vec(dim - 1);
            while (gen.norm() < 1e-3) gen = random_vec(dim - 1);
            Eigen::VectorXd nvec(dim);
            nvec(0) = 1.0;
            nvec.tail(dim - 1) = gen / gen.norm();
            const Subspace n_space{Eigen::MatrixXd(nvec)};
            const Subspace nperp = orthogonal_complement(n_space);
            const int wdim = 1 + static_cast<int>(rng() % std::max(1, dim - 2));
            Eigen::MatrixXd wbasis(dim, wdim);
            for (int cidx = 0; cidx < wdim; ++cidx)
                wbasis.col(cidx) = nperp.basis() * random_vec(nperp.dim());
            try {
                const Subspace w(wbasis);
                if (joint_rank(n_space, w) != 1 + wdim) continue;
                Eigen::MatrixXd joint(dim, 1 + wdim);
                joint << n_space.basis(), w.basis();
                const Subspace z = orthogonal_complement(Subspace(joint));
                const int vdim = 1 + static_cast<int>(rng() % z.dim());
                Eigen::MatrixXd vbasis(dim, vdim);
                for (int cidx = 0; cidx < vdim; ++cidx)
                    vbasis.col(cidx) = z.basis() * random_vec(z.dim());
                const Subspace v(vbasis);
                const auto report = check_subspace_lemma(v, w, n_space);
                if (report.hypotheses_hold && report.conclusion_holds) ++lemma_ok;
                break;
            } catch (const std::invalid_argument&) {
            }
        }
    }
    c.expect(lemma_ok == 1000,
             "lemma verified on " + std::to_string(lemma_ok) + "/1000 triples");

    int fact_ok = 0, tried = 0;
    while (tried < 1000) {
        const int dim = 3 + static_cast<int>(rng() % 4);
        const int k = 1 + static_cast<int>(rng() % (dim - 1));
        Eigen::MatrixXd basis(dim, k);
        for (int cidx = 0; cidx < k; ++cidx) basis.col(cidx) = random_vec(dim);
        try {
            const Subspace v(basis);
            if (is_degenerate(v)) continue;
            ++tried;
            if (joint_rank(v, orthogonal_complement(v)) == dim) ++fact_ok;
        } catch (const std::invalid_argument&) {
        }
    }
    c.expect(fact_ok == 1000,
             "complement fact verified on " + std::to_string(fact_ok) + "/1000 subspaces");
    c.finish();
}

}  // namespace

int main() {
    std::printf("nullfront acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failed == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) FAILED\n", g_failed);
    return g_failed == 0 ? 0 : 1;
}
