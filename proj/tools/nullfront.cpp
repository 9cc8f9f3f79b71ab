#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "nullfront/pipeline.hpp"

// nullfront run --example ellipse --report out.json
//
// Builds the null wave front generated by a Euclidean curve or surface,
// analyzes its singular locus, reconstructs generating data from samples,
// or glues overlapping patches; see --help for the defaults.

namespace {

int run_command(const std::string& config_path, const std::string& example,
                const std::vector<double>& params, const std::string& sigma,
                const std::vector<double>& window, const std::vector<int>& grid,
                const std::string& mode, const std::string& mesh, const std::string& locus,
                const std::string& report, unsigned long long seed, bool raw_axes, int t_count,
                int reconstruct_samples, int glue_windows) {
    using nullfront::pipeline::JobConfig;

    JobConfig cfg;
    if (!config_path.empty()) {
        try {
            cfg = nullfront::pipeline::parse_config_file(config_path);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return nullfront::pipeline::kInvalidConfig;
        }
    }
    if (!example.empty()) cfg.example = example;
    if (!params.empty()) cfg.generator_params = params;
    if (!sigma.empty()) {
        if (sigma != "+" && sigma != "-") {
            std::fprintf(stderr, "error: --sigma expects + or -\n");
            return nullfront::pipeline::kInvalidConfig;
        }
        cfg.sigma = sigma == "+" ? nullfront::frontgen::Sigma::Plus
                                 : nullfront::frontgen::Sigma::Minus;
    }
    if (!window.empty()) {
        if (window.size() != 2) {
            std::fprintf(stderr, "error: --t-window expects a,b\n");
            return nullfront::pipeline::kInvalidConfig;
        }
        cfg.t_window = {window[0], window[1]};
    }
    if (!grid.empty()) {
        cfg.grid = grid[0];
        if (grid.size() > 1) cfg.grid2 = grid[1];
    }
    if (!mode.empty()) cfg.mode = mode;
    if (!mesh.empty()) cfg.mesh_path = mesh;
    if (!locus.empty()) cfg.locus_path = locus;
    if (!report.empty()) cfg.report_path = report;
    if (t_count > 0) cfg.t_count = t_count;
    if (reconstruct_samples > 0) cfg.reconstruct_samples = reconstruct_samples;
    if (glue_windows > 0) cfg.glue_windows = glue_windows;
    cfg.seed = seed;
    cfg.raw_axes = raw_axes;

    const auto result = nullfront::pipeline::run(cfg);
    if (result.exit_code != 0) {
        std::fprintf(stderr, "error: %s\n", result.error.c_str());
        return result.exit_code;
    }
    if (report.empty() && cfg.report_path.empty())
        std::fputs(result.report_json.c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"null wave fronts in R^{n+1}_1 from Euclidean generators"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run the generate/analyze/reconstruct/glue pipeline");
    std::string config_path, example, sigma, mode, mesh, locus, report;
    std::vector<double> params, window;
    std::vector<int> grid;
    unsigned long long seed = 1;
    bool raw_axes = false;
    int t_count = -1, reconstruct_samples = -1, glue_windows = -1;

    run->add_option("--config", config_path, "flat key-value config file");
    run->add_option("--example", example,
                    "built-in generator: circle, ellipse, limacon, spiral, spiral-flat, "
                    "double-circle, parabola, wavy, sphere, lightcone");
    run->add_option("--params", params, "generator parameters (comma separated)")
        ->delimiter(',');
    run->add_option("--sigma", sigma, "sign of the null direction: + or - (default +)");
    run->add_option("--t-window", window, "evaluation window a,b (default 0,2)")->delimiter(',');
    run->add_option("--grid", grid, "grid size N or N,M (default 256; 256,64 for surfaces)")
        ->delimiter(',');
    run->add_option("--mode", mode, "generate | analyze | reconstruct | glue (default analyze)");
    run->add_option("--mesh", mesh, "write the (t,s)-lattice OBJ mesh here");
    run->add_option("--locus", locus, "write the singular-locus CSV here");
    run->add_option("--report", report, "write the JSON report here (default: stdout)");
    run->add_option("--seed", seed, "seed for randomized sampling (default 1)");
    run->add_flag("--raw-axes", raw_axes, "export meshes in (t,x,y) order instead of (x,y,t)");
    run->add_option("--t-count", t_count, "t lattice resolution for meshes (default 64)");
    run->add_option("--samples", reconstruct_samples,
                    "sample count for reconstruct mode (default 200)");
    run->add_option("--glue-windows", glue_windows, "window count for glue mode (default 3)");

    CLI11_PARSE(app, argc, argv);

    return run_command(config_path, example, params, sigma, window, grid, mode, mesh, locus,
                       report, seed, raw_axes, t_count, reconstruct_samples, glue_windows);
}
