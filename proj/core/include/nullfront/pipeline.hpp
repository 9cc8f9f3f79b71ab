#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nullfront/frontgen.hpp"

// Batch pipeline: configuration -> generate / analyze / reconstruct / glue,
// with mesh, locus and JSON report artifacts.  The CLI is a thin wrapper
// around run().

namespace nullfront::pipeline {

struct JobConfig {
    std::string example;  // built-in generator name
    std::vector<double> generator_params;
    frontgen::Sigma sigma = frontgen::Sigma::Plus;
    frontgen::TWindow t_window{0.0, 2.0};
    int grid = 256;
    int grid2 = 64;  // second grid dimension for surfaces
    int t_count = 64;
    std::string mode = "analyze";  // generate | analyze | reconstruct | glue
    std::string mesh_path;
    std::string locus_path;
    std::string report_path;
    std::uint64_t seed = 1;
    bool raw_axes = false;
    int reconstruct_samples = 200;
    int glue_windows = 3;
    double glue_overlap = 0.15;  // window overlap as a fraction of window size
    double singular_tol = 1e-8;
};

enum ExitCode : int {
    kOk = 0,
    kUnknownGenerator = 2,
    kInvalidConfig = 3,
    kIoFailure = 4,
};

struct RunResult {
    int exit_code = kOk;
    std::string error;
    std::string report_json;
};

/// Flat key-value configuration with [generator] / [run] / [output] sections.
JobConfig parse_config_file(const std::string& path);

RunResult run(const JobConfig& config);

struct InvariantEntry {
    std::string name;
    double max_violation = 0.0;
};

/// Null-front invariant suite evaluated at three t values across the window:
/// xi normalization, orthogonality, rank of M_t, induced-metric degeneracy,
/// and the singular-sample fraction per slice.
std::vector<InvariantEntry> invariant_suite(const frontgen::NullFront& front);

}  // namespace nullfront::pipeline
