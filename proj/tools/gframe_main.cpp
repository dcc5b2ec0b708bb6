#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "gframe/cli.hpp"
#include "gframe/error.hpp"

namespace {

void add_pair_options(CLI::App* cmd, gframe::RunConfig& config) {
    cmd->add_option("frame", config.input_path, "frame CSV file")->required();
    cmd->add_option("--dual", config.dual_path, "dual frame CSV file");
    cmd->add_flag("--canonical", config.canonical, "pair the frame with its canonical dual");
    cmd->add_option("--p", config.p, "measure exponent (default 2)");
    cmd->add_flag("--allow-p1", config.allow_p1, "permit p = 1 for exploratory runs");
    cmd->add_option("--tol-dual", config.tol_dual, "dual verification tolerance");
    cmd->add_option("--tol-flag", config.tol_value, "optimality flag value tolerance");
    cmd->add_option("--tol-uniform", config.tol_uniform, "uniformity tolerance");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frames from graph Laplacians: duals, erasure measures, optimality"};
    app.require_subcommand(1);

    gframe::RunConfig config;

    auto* build = app.add_subcommand("build", "construct the frame of a graph edge list");
    build->add_option("graph", config.input_path, "graph edge-list file")->required();
    build->add_option("--frame-out", config.frame_out, "write the frame CSV here");

    auto* analyze = app.add_subcommand("analyze", "erasure-error report for a dual pair");
    add_pair_options(analyze, config);

    auto* check = app.add_subcommand("check", "uniformity and optimality classification");
    add_pair_options(check, config);

    auto* search = app.add_subcommand("search", "search the dual family for the E1 optimum");
    search->add_option("frame", config.input_path, "frame CSV file")->required();
    search->add_option("--p", config.p, "measure exponent (default 2)");
    search->add_flag("--allow-p1", config.allow_p1, "permit p = 1 for exploratory runs");
    search->add_option("--radius", config.radius, "search ball radius (default 1)");
    search->add_option("--steps", config.steps_per_axis, "grid steps per axis, odd (default 11)");
    search->add_option("--samples", config.random_samples, "random ball samples (default 1000)");
    search->add_option("--seed", config.seed, "random seed (default 0)");
    search->add_option("--trace", config.trace_path, "write every sampled point to this CSV");

    auto* bounds_cmd = app.add_subcommand("bounds", "optimal-measure reference values");
    bounds_cmd->add_option("--N", config.bounds_count, "number of frame vectors")->required();
    bounds_cmd->add_option("--n", config.bounds_dim, "frame dimension")->required();

    auto* dump = app.add_subcommand("graph-dump", "echo a graph file in canonical form");
    dump->add_option("graph", config.input_path, "graph edge-list file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (build->parsed()) config.command = gframe::RunConfig::Command::Build;
    if (analyze->parsed()) config.command = gframe::RunConfig::Command::Analyze;
    if (check->parsed()) config.command = gframe::RunConfig::Command::Check;
    if (search->parsed()) config.command = gframe::RunConfig::Command::Search;
    if (bounds_cmd->parsed()) config.command = gframe::RunConfig::Command::BoundsOnly;
    if (dump->parsed()) config.command = gframe::RunConfig::Command::GraphDump;

    try {
        std::fputs(gframe::run_command(config).c_str(), stdout);
        return 0;
    } catch (const gframe::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return gframe::exit_code(e.error_class());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
