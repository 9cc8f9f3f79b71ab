#include <benchmark/benchmark.h>

#include "nullfront/builtins.hpp"
#include "nullfront/completion.hpp"
#include "nullfront/frontgen.hpp"
#include "nullfront/geometry.hpp"
#include "nullfront/pipeline.hpp"
#include "nullfront/singular.hpp"

using namespace nullfront;

namespace {

frontgen::NullFront ellipse_front(int grid) {
    return frontgen::normal_form(
        geometry::GeneratingFront::build_curve(builtins::ellipse(), grid),
        frontgen::Sigma::Plus, {0.0, 4.5}, 33);
}

void BM_LatticeEvaluation(benchmark::State& state) {
    const auto front = ellipse_front(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        double acc = 0.0;
        for (int j = 0; j < front.t_count(); ++j)
            for (int k = 0; k < front.x_count(); ++k)
                acc += front.point(front.t_value(j), k)(1);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * front.t_count() * front.x_count());
}
BENCHMARK(BM_LatticeEvaluation)->Arg(256)->Arg(512);

void BM_JetRankSweep(benchmark::State& state) {
    const auto front = ellipse_front(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        int defects = 0;
        for (int k = 0; k < front.x_count(); ++k)
            defects += 2 - frontgen::jet(front, 1.3, k).rank_dF;
        benchmark::DoNotOptimize(defects);
    }
    state.SetItemsProcessed(state.iterations() * front.x_count());
}
BENCHMARK(BM_JetRankSweep)->Arg(256)->Arg(512);

void BM_SingularLocusClassify(benchmark::State& state) {
    const auto front = ellipse_front(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const auto locus = singular::classify(singular::singular_locus(front), front);
        benchmark::DoNotOptimize(locus.points.size());
    }
}
BENCHMARK(BM_SingularLocusClassify)->Arg(256)->Arg(512);

void BM_InvariantSuite(benchmark::State& state) {
    const auto front = ellipse_front(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const auto suite = pipeline::invariant_suite(front);
        benchmark::DoNotOptimize(suite.size());
    }
}
BENCHMARK(BM_InvariantSuite)->Arg(256);

void BM_GlueWindows(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto gen = geometry::GeneratingFront::build_curve(builtins::ellipse(), n);
    std::vector<completion::Patch> patches;
    for (int w = 0; w < 3; ++w) {
        const int lo = w * (n / 3) - 12, len = n / 3 + 24;
        Eigen::Matrix2Xd g(2, len), nu(2, len);
        for (int i = 0; i < len; ++i) {
            const int k = ((lo + i) % n + n) % n;
            g.col(i) = gen.position(k);
            nu.col(i) = gen.normal(k);
        }
        patches.emplace_back(g, nu, false);
    }
    for (auto _ : state) {
        const auto atlas = completion::glue(patches);
        benchmark::DoNotOptimize(atlas.class_count);
    }
}
BENCHMARK(BM_GlueWindows)->Arg(240)->Arg(480);

}  // namespace

BENCHMARK_MAIN();
