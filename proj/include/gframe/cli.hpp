#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gframe/erasure.hpp"
#include "gframe/error.hpp"
#include "gframe/frame.hpp"
#include "gframe/graph.hpp"
#include "gframe/optimality.hpp"
#include "gframe/report.hpp"

namespace gframe {

// One parsed invocation. Every command maps to a run_* function returning
// the primary JSON document; side files (frame CSV, search trace) are
// written through the paths below.
struct RunConfig {
    enum class Command { Build, Analyze, Check, Search, BoundsOnly, GraphDump };

    Command command = Command::Analyze;
    std::string input_path;
    std::string dual_path;   // analyze/check: explicit dual frame CSV
    bool canonical = false;  // analyze/check: pair the frame with its canonical dual
    std::string frame_out;   // build: output CSV path
    std::string trace_path;  // search: optional CSV of every sampled point
    double p = 2.0;
    bool allow_p1 = false;
    double tol_dual = kDualTol;
    double tol_value = 1e-9;
    double tol_uniform = 1e-8;
    std::uint64_t seed = 0;
    double radius = 1.0;
    int steps_per_axis = 11;
    int random_samples = 1000;
    int bounds_count = 0; // bounds: N
    int bounds_dim = 0;   // bounds: n
};

namespace detail {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << content;
}

inline DualPair load_pair(const RunConfig& config) {
    Frame f = read_frame_csv(slurp(config.input_path));
    if (config.canonical) {
        if (!config.dual_path.empty())
            throw DomainError("give either a dual frame file or the canonical-dual flag, not both");
        return canonical_dual(f);
    }
    if (config.dual_path.empty())
        throw DomainError("no dual given: pass a dual frame file or request the canonical dual");
    Frame g = read_frame_csv(slurp(config.dual_path));
    return verify_dual(f, g, config.tol_dual);
}

} // namespace detail

inline std::string run_build(const RunConfig& config) {
    Graph g = parse_edge_list(detail::slurp(config.input_path));
    GraphSpectrum spectrum = graph_spectrum(g);
    Frame frame = frame_from_graph(g);

    if (!config.frame_out.empty()) detail::spill(config.frame_out, write_frame_csv(frame));

    nlohmann::ordered_json j;
    j["N"] = static_cast<int>(frame.count());
    j["n"] = static_cast<int>(frame.dim());
    nlohmann::ordered_json spec_values = nlohmann::ordered_json::array();
    for (double v : spectrum.eigen.values) spec_values.push_back(round15(v));
    j["spectrum"] = spec_values;
    j["components"] = spectrum.components;
    j["algebraic_connectivity"] = round15(spectrum.algebraic_connectivity);
    auto tight = is_tight(frame);
    j["tight"] = tight.has_value();
    if (tight)
        j["tight_bound"] = round15(*tight);
    else
        j["tight_bound"] = nullptr;
    j["gramian_residual"] = round15((gramian(frame) - spectrum.laplacian).frobenius_norm());
    return render_json(j);
}

inline std::string run_analyze(const RunConfig& config) {
    DualPair pair = detail::load_pair(config);
    MeasureParams params = MeasureParams::make(config.p, config.allow_p1);
    ErasureReport report = build_report(pair, params, config.tol_value, config.tol_uniform);
    return render_json(report_to_json(report));
}

inline std::string run_check(const RunConfig& config) {
    DualPair pair = detail::load_pair(config);
    MeasureParams params = MeasureParams::make(config.p, config.allow_p1);
    UniformityVerdict verdict = uniformity(pair, config.tol_uniform);
    ReportFlags flags = classify(pair, params, config.tol_value, config.tol_uniform);

    nlohmann::ordered_json j;
    j["N"] = static_cast<int>(pair.f.count());
    j["n"] = static_cast<int>(pair.f.dim());
    j["p"] = round15(params.p);
    j["one_uniform"] = verdict.one_uniform;
    j["two_uniform"] = verdict.two_uniform;
    j["diagonal_value"] = round15(verdict.diagonal_value);
    if (verdict.offdiag_product)
        j["offdiag_product"] = round15(*verdict.offdiag_product);
    else
        j["offdiag_product"] = nullptr;
    j["flags"] = flags_to_json(flags);
    return render_json(j);
}

inline std::string run_search(const RunConfig& config) {
    Frame f = read_frame_csv(detail::slurp(config.input_path));
    MeasureParams params = MeasureParams::make(config.p, config.allow_p1);
    GridSpec grid{config.radius, config.steps_per_axis, config.random_samples};

    std::string trace;
    std::function<void(const SearchSample&)> on_sample;
    if (!config.trace_path.empty()) {
        for (std::size_t a = 1; a <= f.dim(); ++a) {
            if (a > 1) trace.push_back(',');
            trace += "h_" + std::to_string(a);
        }
        trace += ",value\n";
        on_sample = [&trace](const SearchSample& sample) {
            for (double v : sample.h) {
                trace += detail::render_double(v);
                trace.push_back(',');
            }
            trace += detail::render_double(sample.value);
            trace.push_back('\n');
        };
    }

    SearchResult result = search_optimal_dual(f, params, grid, config.seed, on_sample);
    if (!config.trace_path.empty()) detail::spill(config.trace_path, trace);

    nlohmann::ordered_json j;
    j["N"] = static_cast<int>(f.count());
    j["n"] = static_cast<int>(f.dim());
    j["p"] = round15(params.p);
    j["radius"] = round15(config.radius);
    j["steps_per_axis"] = config.steps_per_axis;
    j["random_samples"] = config.random_samples;
    j["seed"] = result.seed;
    nlohmann::ordered_json best_h = nlohmann::ordered_json::array();
    for (double v : result.best_h) best_h.push_back(round15(v));
    j["best_h"] = best_h;
    j["best_value"] = round15(result.best_value);
    j["attained_at_zero"] = result.attained_at_zero;
    return render_json(j);
}

inline std::string run_bounds(const RunConfig& config) {
    Bounds b = bounds(config.bounds_count, config.bounds_dim);
    nlohmann::ordered_json j;
    j["N"] = config.bounds_count;
    j["n"] = config.bounds_dim;
    j["delta1"] = round15(b.delta1);
    j["delta2_lower"] = round15(b.delta2_lower);
    return render_json(j);
}

inline std::string run_graph_dump(const RunConfig& config) {
    return dump_edge_list(parse_edge_list(detail::slurp(config.input_path)));
}

inline std::string run_command(const RunConfig& config) {
    switch (config.command) {
    case RunConfig::Command::Build: return run_build(config);
    case RunConfig::Command::Analyze: return run_analyze(config);
    case RunConfig::Command::Check: return run_check(config);
    case RunConfig::Command::Search: return run_search(config);
    case RunConfig::Command::BoundsOnly: return run_bounds(config);
    case RunConfig::Command::GraphDump: return run_graph_dump(config);
    }
    throw DomainError("unknown command");
}

} // namespace gframe
