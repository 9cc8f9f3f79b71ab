#include "nullfront/pipeline.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "nullfront/builtins.hpp"
#include "nullfront/completion.hpp"
#include "nullfront/geometry.hpp"
#include "nullfront/lorentz.hpp"
#include "nullfront/mesh_io.hpp"
#include "nullfront/singular.hpp"

namespace nullfront::pipeline {

using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

void apply_config(JobConfig& cfg, const std::string& section, const std::string& key,
                  const std::string& value) {
    auto bad = [&]() {
        throw std::invalid_argument("unknown config key: [" + section + "] " + key);
    };
    if (section == "generator") {
        if (key == "name")
            cfg.example = value;
        else if (key == "params")
            cfg.generator_params = parse_doubles(value);
        else
            bad();
    } else if (section == "run") {
        if (key == "mode") {
            cfg.mode = value;
        } else if (key == "sigma") {
            if (value != "+" && value != "-") throw std::invalid_argument("sigma must be + or -");
            cfg.sigma = value == "+" ? frontgen::Sigma::Plus : frontgen::Sigma::Minus;
        } else if (key == "t_window") {
            const auto v = parse_doubles(value);
            if (v.size() != 2) throw std::invalid_argument("t_window needs two values");
            cfg.t_window = {v[0], v[1]};
        } else if (key == "grid") {
            const auto v = parse_doubles(value);
            if (v.empty() || v.size() > 2) throw std::invalid_argument("grid needs N or N,M");
            cfg.grid = static_cast<int>(v[0]);
            if (v.size() == 2) cfg.grid2 = static_cast<int>(v[1]);
        } else if (key == "t_count") {
            cfg.t_count = std::stoi(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else if (key == "reconstruct_samples") {
            cfg.reconstruct_samples = std::stoi(value);
        } else if (key == "glue_windows") {
            cfg.glue_windows = std::stoi(value);
        } else if (key == "glue_overlap") {
            cfg.glue_overlap = std::stod(value);
        } else if (key == "singular_tol") {
            cfg.singular_tol = std::stod(value);
        } else {
            bad();
        }
    } else if (section == "output") {
        if (key == "report")
            cfg.report_path = value;
        else if (key == "mesh")
            cfg.mesh_path = value;
        else if (key == "locus")
            cfg.locus_path = value;
        else if (key == "raw_axes")
            cfg.raw_axes = (value == "true" || value == "1");
        else
            bad();
    } else {
        bad();
    }
}

json invariant_json(const std::vector<InvariantEntry>& suite) {
    json arr = json::array();
    for (const auto& e : suite) arr.push_back({{"name", e.name}, {"max_violation", e.max_violation}});
    return arr;
}

}  // namespace

JobConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    JobConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        apply_config(cfg, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

std::vector<InvariantEntry> invariant_suite(const frontgen::NullFront& front) {
    const int n = front.space_dim();
    const double ts[3] = {front.window().lo, 0.5 * (front.window().lo + front.window().hi),
                          front.window().hi};

    double xi_null = 0.0, xi_enorm = 0.0, orth = 0.0, rank_defect = 0.0;
    double metric_eig = 0.0, metric_kernel = 0.0, sing_fraction = 0.0;

    for (int k = 0; k < front.x_count(); ++k) {
        const Eigen::VectorXd xi = front.xi_hat(k);
        xi_null = std::max(xi_null, std::abs(lorentz::minkowski_inner(xi, xi)));
        xi_enorm = std::max(xi_enorm, std::abs(lorentz::euclidean_inner(xi, xi) - 2.0));
    }

    const auto nodes = front.jet_nodes();
    for (double t : ts) {
        for (int k : nodes) {
            const frontgen::FrontJet jet = frontgen::jet(front, t, k);
            rank_defect = std::max(rank_defect, static_cast<double>(n - jet.rank_Mt));
            const Eigen::VectorXd xi = front.xi_hat(k);
            for (int c = 1; c < n; ++c)
                orth = std::max(orth, std::abs(lorentz::minkowski_inner(
                                          xi, Eigen::VectorXd(jet.dF.col(c)))));
            Eigen::MatrixXd g(n, n);
            for (int a = 0; a < n; ++a)
                for (int b = a; b < n; ++b) {
                    g(a, b) = lorentz::minkowski_inner(Eigen::VectorXd(jet.dF.col(a)),
                                                       Eigen::VectorXd(jet.dF.col(b)));
                    g(b, a) = g(a, b);
                }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
            metric_eig = std::max(metric_eig, std::abs(es.eigenvalues()(0)));
            metric_kernel = std::max(metric_kernel, g.col(0).norm());
        }
    }

    // Density proxy for the regular set: fractions are measured on generic
    // interior slices, since isolated slices (e.g. the focal slice of a
    // sphere) may be entirely singular.
    const double lo = front.window().lo, span = front.window().hi - front.window().lo;
    const double generic[3] = {lo + 0.1237546 * span, lo + 0.5617218 * span,
                               lo + 0.9190537 * span};
    for (double t : generic) {
        int singular = 0;
        for (int k : nodes)
            if (frontgen::jet(front, t, k).smin_ratio_dF <= 1e-8) ++singular;
        if (!nodes.empty())
            sing_fraction = std::max(
                sing_fraction, static_cast<double>(singular) / static_cast<double>(nodes.size()));
    }

    return {{"xi_null", xi_null},
            {"xi_enorm", xi_enorm},
            {"xi_orthogonality", orth},
            {"mt_rank_defect", rank_defect},
            {"metric_min_eig", metric_eig},
            {"metric_kernel_dt", metric_kernel},
            {"singular_fraction_max", sing_fraction}};
}

namespace {

json analyze_curve_report(const frontgen::NullFront& front, const JobConfig& cfg) {
    json rep;
    const singular::SingularLocus raw = singular::singular_locus(front);
    const singular::SingularLocus locus = singular::classify(raw, front);

    int vert_count = 0;
    if (!locus.constant_curvature) {
        const geometry::CurvatureData data = geometry::curvature(front.generator());
        vert_count = static_cast<int>(geometry::vertices(front.generator(), data).items.size());
    }

    int non_cuspidal = 0, undetermined = 0;
    for (const auto& p : locus.points) {
        if (p.cls == singular::PointClass::NonCuspidal) ++non_cuspidal;
        if (p.cls == singular::PointClass::Undetermined) ++undetermined;
    }

    // maximal runs of cuspidal points around the locus
    int cuspidal_arcs = 0;
    {
        const auto& pts = locus.points;
        const int m = static_cast<int>(pts.size());
        if (m > 0) {
            bool all_cuspidal = true;
            for (int i = 0; i < m; ++i) {
                const bool cusp = pts[i].cls == singular::PointClass::CuspidalEdge;
                const bool prev_cusp =
                    pts[(i + m - 1) % m].cls == singular::PointClass::CuspidalEdge;
                if (cusp && !prev_cusp) ++cuspidal_arcs;
                if (!cusp) all_cuspidal = false;
            }
            if (all_cuspidal) cuspidal_arcs = 1;
        }
    }

    rep["counts"] = {{"vertices", vert_count},
                     {"non_cuspidal", non_cuspidal},
                     {"cuspidal_arcs", cuspidal_arcs},
                     {"undetermined", undetermined}};
    rep["constant_curvature"] = locus.constant_curvature;

    const singular::CompletenessReport comp = singular::completeness_check(front);
    rep["completeness"] = {{"verdict", comp.complete ? "complete" : "incomplete"},
                           {"reasons", comp.reasons},
                           {"all_same_sign", comp.all_same_sign}};

    const singular::FourVertexReport fv = singular::four_vertex_audit(front);
    rep["four_vertex"] = {{"excluded_constant_curvature", fv.excluded_constant_curvature},
                          {"embedded", fv.embedded},
                          {"complete", fv.complete},
                          {"non_cuspidal_count", fv.non_cuspidal_count},
                          {"hypothesis_met", fv.hypothesis_met},
                          {"implication_holds", fv.implication_holds},
                          {"note", fv.note}};

    const frontgen::LiftCheck lift = frontgen::lift_embedding_check(front);
    rep["lift_embedding"] = {{"ok", lift.ok}, {"min_separation", lift.min_separation}};

    double t_min = 0.0, t_max = 0.0;
    if (!locus.points.empty()) {
        t_min = t_max = locus.points.front().t;
        for (const auto& p : locus.points) {
            t_min = std::min(t_min, p.t);
            t_max = std::max(t_max, p.t);
        }
    }
    rep["locus"] = {{"points", locus.points.size()},
                    {"unbounded", locus.unbounded.size()},
                    {"t_min", t_min},
                    {"t_max", t_max}};

    if (!cfg.locus_path.empty()) meshio::export_locus_csv(locus, front, cfg.locus_path);
    return rep;
}

json reconstruct_report(const geometry::GeneratingFront& gen, const JobConfig& cfg) {
    using completion::ReconstructOptions;
    using completion::ReconstructSample;

    json rep;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> us(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> ut(cfg.t_window.lo, cfg.t_window.hi);
    const double sg = frontgen::sign_of(cfg.sigma);

    std::vector<ReconstructSample> samples;
    std::vector<double> s_values;
    // the analytic evaluator furnishes (F, xi) at off-grid parameters
    for (int q = 0; q < cfg.reconstruct_samples; ++q) {
        const double s = us(rng);
        const double t = ut(rng);
        const Eigen::Vector2d f = gen.position_at(s);
        const Eigen::Vector2d nu = gen.normal_at(s);
        ReconstructSample smp;
        smp.xi << 1.0, sg * nu(0), sg * nu(1);
        const Eigen::Vector2d spatial = f + t * (sg * nu);
        smp.point << t, spatial(0), spatial(1);
        samples.push_back(smp);
        s_values.push_back(s);
    }

    const auto res = completion::reconstruct_generator(samples, ReconstructOptions{});
    double max_err = 0.0;
    for (int q = 0; q < res.n_input; ++q) {
        if (res.class_of[q] < 0) continue;
        const int c = res.class_of[q];
        const Eigen::Vector2d f = gen.position_at(s_values[q]);
        const Eigen::Vector2d nu = sg * gen.normal_at(s_values[q]);
        max_err = std::max(max_err, (res.patch.g(c) - f).norm());
        max_err = std::max(max_err, (res.patch.nu(c) - nu).norm());
    }
    rep["samples"] = res.n_input;
    rep["rejected"] = res.n_rejected;
    rep["classes"] = res.n_classes;
    rep["closed"] = res.patch.closed();
    rep["cover_multiplicity"] = res.cover_multiplicity;
    rep["lift_embedding_ok"] = res.lift_embedding_ok;
    rep["max_roundtrip_error"] = max_err;
    return rep;
}

json lightcone_report(const JobConfig& cfg) {
    json rep;
    const auto lc = builtins::lightcone_samples();
    double max_mink = 0.0;
    std::vector<completion::ReconstructSample> samples(lc.points.size());
    for (size_t q = 0; q < lc.points.size(); ++q) {
        samples[q].point = lc.points[q];
        samples[q].xi = lc.xis[q];
        const Eigen::Vector3d& p = lc.points[q];
        max_mink = std::max(max_mink, std::abs(-p(0) * p(0) + p(1) * p(1) + p(2) * p(2)));
    }
    completion::ReconstructOptions opts;
    opts.adjacency = lc.grid_edges;
    const auto res = completion::reconstruct_generator(samples, opts);

    double max_g = 0.0;  // the recovered generator collapses to the cone vertex
    for (int c = 0; c < res.patch.size(); ++c) max_g = std::max(max_g, res.patch.g(c).norm());

    rep["samples"] = res.n_input;
    rep["classes"] = res.n_classes;
    rep["closed"] = res.patch.closed();
    rep["cover_multiplicity"] = res.cover_multiplicity;
    rep["mean_multiplicity"] = res.mean_multiplicity;
    rep["lift_embedding_ok"] = res.lift_embedding_ok;
    rep["double_cover"] = res.cover_multiplicity == 2;
    rep["max_generator_norm"] = max_g;
    rep["max_minkowski_norm"] = max_mink;
    (void)cfg;
    return rep;
}

json glue_report(const frontgen::NullFront& front, const JobConfig& cfg) {
    json rep;
    const auto& gen = front.generator();
    const int n = gen.node_count();
    const int wins = std::max(cfg.glue_windows, 1);
    const int base = n / wins;
    const int overlap = std::max(1, static_cast<int>(base * cfg.glue_overlap));

    const double tmid = 0.5 * (cfg.t_window.lo + cfg.t_window.hi);
    const double ts[3] = {cfg.t_window.lo, tmid, cfg.t_window.hi};

    std::vector<completion::Patch> patches;
    for (int w = 0; w < wins; ++w) {
        const int lo = w * base - overlap;
        const int hi = (w + 1) * base + overlap;  // exclusive
        std::vector<completion::ReconstructSample> samples;
        std::vector<std::pair<int, int>> adjacency;
        const int len = hi - lo;
        for (int r = 0; r < 3; ++r)
            for (int p = 0; p < len; ++p) {
                const int k = ((lo + p) % n + n) % n;
                completion::ReconstructSample smp;
                smp.point = front.point(ts[r], k);
                smp.xi = front.xi_hat(k);
                samples.push_back(smp);
                const int id = r * len + p;
                if (p > 0) adjacency.emplace_back(id - 1, id);
                if (r > 0) adjacency.emplace_back(id - len, id);
            }
        completion::ReconstructOptions opts;
        opts.adjacency = std::move(adjacency);
        opts.t_center = tmid;
        opts.epsilon = 0.5 * (cfg.t_window.hi - cfg.t_window.lo);
        patches.push_back(completion::reconstruct_generator(samples, opts).patch);
    }

    const completion::Atlas atlas = completion::glue(patches);
    rep["patch_count"] = atlas.patches.size();
    rep["class_count"] = atlas.class_count;
    rep["chain_closed"] = atlas.chain_closed;
    rep["connected"] = atlas.connected;
    rep["non_hausdorff"] = atlas.non_hausdorff;
    rep["lift_verification_max"] = atlas.lift_verification_max;

    json pairs = json::array();
    std::string summary = "related";
    for (size_t a = 0; a < patches.size(); ++a)
        for (size_t b = a + 1; b < patches.size(); ++b) {
            const auto adm = completion::admissibility_check(patches[a], patches[b]);
            pairs.push_back({{"u", a},
                             {"v", b},
                             {"verdict", completion::to_string(adm.verdict)},
                             {"contacts", adm.contacts.size()}});
            if (adm.verdict == completion::AdmissibilityVerdict::Inadmissible)
                summary = "inadmissible";
        }
    rep["admissibility"] = {{"summary", summary}, {"pairs", pairs}};
    return rep;
}

}  // namespace

RunResult run(const JobConfig& cfg) {
    RunResult result;
    json rep;
    rep["version"] = 1;
    rep["generator"] = cfg.example;
    rep["sigma"] = cfg.sigma == frontgen::Sigma::Plus ? "+" : "-";
    rep["mode"] = cfg.mode;
    rep["grid"] = cfg.grid;
    rep["t_window"] = {cfg.t_window.lo, cfg.t_window.hi};
    rep["seed"] = cfg.seed;

    // config invariants
    if (!cfg.t_window.valid()) {
        result.exit_code = kInvalidConfig;
        result.error = "invalid t_window";
        return result;
    }
    if (cfg.grid < 16 || (cfg.grid2 < 16 && builtins::is_surface_name(cfg.example))) {
        result.exit_code = kInvalidConfig;
        result.error = "grid sizes must be >= 16";
        return result;
    }
    if (cfg.t_count < 2 || cfg.singular_tol <= 0.0) {
        result.exit_code = kInvalidConfig;
        result.error = "invalid resolution or tolerance";
        return result;
    }
    if (cfg.mode != "generate" && cfg.mode != "analyze" && cfg.mode != "reconstruct" &&
        cfg.mode != "glue") {
        result.exit_code = kInvalidConfig;
        result.error = "unknown mode: " + cfg.mode;
        return result;
    }

    const bool curve = builtins::is_curve_name(cfg.example);
    const bool surface = builtins::is_surface_name(cfg.example);
    const bool sampleset = builtins::is_sample_name(cfg.example);
    if (!curve && !surface && !sampleset) {
        result.exit_code = kUnknownGenerator;
        result.error = "unknown generator name: " + cfg.example;
        return result;
    }

    try {
        if (sampleset) {
            if (cfg.mode != "reconstruct") {
                result.exit_code = kInvalidConfig;
                result.error = "lightcone input supports mode=reconstruct only";
                return result;
            }
            rep["reconstruction"] = lightcone_report(cfg);
        } else {
            geometry::GeneratingFront gen =
                curve ? [&] {
                    const auto spec = builtins::curve_by_name(cfg.example, cfg.generator_params);
                    return spec.closed ? geometry::GeneratingFront::build_curve(
                                             spec.evaluator, cfg.grid, spec.t0, spec.t1)
                                       : geometry::GeneratingFront::build_open_curve(
                                             spec.evaluator, cfg.grid, spec.t0, spec.t1);
                }()
                      : geometry::GeneratingFront::build_closed_surface(
                            builtins::sphere(cfg.generator_params.empty()
                                                 ? 1.0
                                                 : cfg.generator_params[0]),
                            cfg.grid, cfg.grid2);

            const frontgen::NullFront front =
                frontgen::normal_form(gen, cfg.sigma, cfg.t_window, cfg.t_count);

            if (cfg.mode == "generate" || cfg.mode == "analyze") {
                rep["invariant_suite"] = invariant_json(invariant_suite(front));
                if (cfg.mode == "analyze") {
                    if (curve) {
                        rep.update(analyze_curve_report(front, cfg));
                    } else {
                        const auto comp = singular::completeness_check(front);
                        rep["completeness"] = {
                            {"verdict", comp.complete ? "complete" : "incomplete"},
                            {"reasons", comp.reasons},
                            {"all_same_sign", comp.all_same_sign}};
                        if (!cfg.locus_path.empty())
                            meshio::export_locus_csv(singular::singular_locus(front), front,
                                                     cfg.locus_path);
                    }
                }
                if (!cfg.mesh_path.empty()) {
                    if (front.space_dim() != 2) {
                        result.exit_code = kInvalidConfig;
                        result.error = "mesh export needs a curve-generated front";
                        return result;
                    }
                    meshio::export_mesh(front, cfg.mesh_path, cfg.raw_axes);
                }
            } else if (cfg.mode == "reconstruct") {
                if (!curve) {
                    result.exit_code = kInvalidConfig;
                    result.error = "reconstruct mode needs a curve generator";
                    return result;
                }
                rep["reconstruction"] = reconstruct_report(gen, cfg);
            } else {  // glue
                if (!curve) {
                    result.exit_code = kInvalidConfig;
                    result.error = "glue mode needs a curve generator";
                    return result;
                }
                rep["gluing"] = glue_report(front, cfg);
            }
        }
    } catch (const std::exception& e) {
        result.exit_code = kInvalidConfig;
        result.error = e.what();
        return result;
    }

    result.report_json = rep.dump(2) + "\n";
    if (!cfg.report_path.empty()) {
        std::ofstream out(cfg.report_path, std::ios::binary);
        if (!out) {
            result.exit_code = kIoFailure;
            result.error = "cannot open report file: " + cfg.report_path;
            return result;
        }
        out << result.report_json;
        if (!out) {
            result.exit_code = kIoFailure;
            result.error = "failed writing report file";
            return result;
        }
    }
    return result;
}

}  // namespace nullfront::pipeline
