#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "gframe/cli.hpp"
#include "helpers.hpp"

using gframe::RunConfig;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

const double kRoot2 = std::sqrt(2.0);

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "gframe_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_scratch(const std::string& name, const std::string& content) {
    fs::path p = scratch_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
}

std::string path_frame_csv() {
    std::string csv;
    csv += gframe::detail::render_double(1 / kRoot2) + "," +
           gframe::detail::render_double(1 / kRoot2) + "\n";
    csv += "0," + gframe::detail::render_double(-kRoot2) + "\n";
    csv += gframe::detail::render_double(-1 / kRoot2) + "," +
           gframe::detail::render_double(1 / kRoot2) + "\n";
    return write_scratch("path_frame.csv", csv);
}

} // namespace

TEST_CASE("build command reports the graph spectrum") {
    RunConfig config;
    config.command = RunConfig::Command::Build;
    config.input_path = write_scratch("p3.txt", "3\n1 2\n2 3\n");
    config.frame_out = (scratch_dir() / "p3_frame.csv").string();

    auto j = nlohmann::json::parse(gframe::run_build(config));
    CHECK(j["N"] == 3);
    CHECK(j["n"] == 2);
    REQUIRE(j["spectrum"].size() == 3);
    CHECK(j["spectrum"][0].get<double>() == Approx(3.0).margin(1e-12));
    CHECK(j["spectrum"][1].get<double>() == Approx(1.0).margin(1e-12));
    CHECK(j["spectrum"][2].get<double>() == Approx(0.0).margin(1e-12));
    CHECK(j["components"] == 1);
    CHECK(j["algebraic_connectivity"].get<double>() == Approx(1.0).margin(1e-12));
    CHECK(j["tight"] == false);
    CHECK(j["tight_bound"].is_null());
    CHECK(j["gramian_residual"].get<double>() < 1e-10);

    // the emitted frame file reloads with the Laplacian as Gramian
    gframe::Frame f = gframe::read_frame_csv(gframe::detail::slurp(config.frame_out));
    gframe::Matrix lap = gframe::laplacian(testutil::path_graph(3));
    CHECK((gframe::gramian(f) - lap).frobenius_norm() < 1e-8);
}

TEST_CASE("build command flags tight frames") {
    RunConfig config;
    config.command = RunConfig::Command::Build;
    config.input_path = write_scratch("k3.txt", "3\n1 2\n1 3\n2 3\n");
    auto j = nlohmann::json::parse(gframe::run_build(config));
    CHECK(j["tight"] == true);
    CHECK(j["tight_bound"].get<double>() == Approx(3.0).margin(1e-9));
    CHECK(j["algebraic_connectivity"].get<double>() == Approx(3.0).margin(1e-9));
}

TEST_CASE("build command rejects edgeless graphs") {
    RunConfig config;
    config.command = RunConfig::Command::Build;
    config.input_path = write_scratch("edgeless.txt", "2\n");
    try {
        gframe::run_build(config);
        FAIL("expected RankZero");
    } catch (const gframe::Error& e) {
        CHECK(e.error_class() == gframe::ErrorClass::Math);
        CHECK(gframe::exit_code(e.error_class()) == 3);
    }
}

TEST_CASE("analyze command against the canonical dual") {
    RunConfig config;
    config.input_path = path_frame_csv();
    config.canonical = true;

    std::string out = gframe::run_analyze(config);
    auto j = nlohmann::json::parse(out);
    CHECK(j["N"] == 3);
    CHECK(j["n"] == 2);
    CHECK(j["p"].get<double>() == 2.0);
    CHECK(j["e1"].get<double>() == Approx(2.0 / 3).margin(1e-12));
    CHECK(j["e2"].get<double>() == Approx(1.0).margin(1e-12));
    CHECK(j["o1"].get<double>() == Approx(std::sqrt(14.0 / 27.0)).margin(1e-12));
    CHECK(j["delta1"].get<double>() == Approx(2.0 / 3).margin(1e-12));
    CHECK(j["delta2_lower"].get<double>() == Approx(1.0).margin(1e-12));
    CHECK(j["flags"]["one_uniform"] == true);
    CHECK(j["flags"]["two_uniform"] == true);
    CHECK(j["flags"]["e1_optimal"] == true);
    CHECK(j["flags"]["e2_attains_bound"] == true);
    CHECK(j["flags"]["o1_optimal"] == false);
    CHECK(j["flags"]["complex_modulus_convention"] == false);

    // values render at 15 significant digits
    CHECK(out.find("0.666666666666667") != std::string::npos);
}

TEST_CASE("analyze command with an explicit dual file") {
    RunConfig config;
    config.input_path = path_frame_csv();
    config.canonical = true;
    std::string via_flag = gframe::run_analyze(config);

    // the canonical dual written to CSV round-trips bit-exactly, so the
    // explicit-dual run must reproduce the same bytes
    auto pair = gframe::canonical_dual(
        gframe::read_frame_csv(gframe::detail::slurp(config.input_path)));
    RunConfig explicit_config;
    explicit_config.input_path = config.input_path;
    explicit_config.dual_path =
        write_scratch("path_dual.csv", gframe::write_frame_csv(pair.g));
    std::string via_file = gframe::run_analyze(explicit_config);
    CHECK(via_flag == via_file);
}

TEST_CASE("pair loading validation") {
    RunConfig config;
    config.input_path = path_frame_csv();

    SECTION("neither dual source") {
        CHECK_THROWS_AS(gframe::run_analyze(config), gframe::DomainError);
    }
    SECTION("both dual sources") {
        config.canonical = true;
        config.dual_path = config.input_path;
        CHECK_THROWS_AS(gframe::run_analyze(config), gframe::DomainError);
    }
    SECTION("dual that fails verification") {
        config.dual_path = config.input_path; // the frame is not self-dual
        try {
            gframe::run_analyze(config);
            FAIL("expected NotADual");
        } catch (const gframe::Error& e) {
            CHECK(e.error_class() == gframe::ErrorClass::Verification);
            CHECK(gframe::exit_code(e.error_class()) == 4);
            CHECK(std::string(e.what()).find("residual") != std::string::npos);
        }
    }
    SECTION("p below one") {
        config.canonical = true;
        config.p = 0.5;
        CHECK_THROWS_AS(gframe::run_analyze(config), gframe::DomainError);
    }
    SECTION("p equal to one needs the override") {
        config.canonical = true;
        config.p = 1.0;
        CHECK_THROWS_AS(gframe::run_analyze(config), gframe::DomainError);
        config.allow_p1 = true;
        auto j = nlohmann::json::parse(gframe::run_analyze(config));
        CHECK(j["o1"].get<double>() ==
              Approx((2.0 * std::sqrt(5.0) + 2.0) / 9.0).margin(1e-12));
    }
    SECTION("missing file is a parse error") {
        config.canonical = true;
        config.input_path = (scratch_dir() / "absent.csv").string();
        try {
            gframe::run_analyze(config);
            FAIL("expected ParseError");
        } catch (const gframe::Error& e) {
            CHECK(e.error_class() == gframe::ErrorClass::Parse);
            CHECK(gframe::exit_code(e.error_class()) == 2);
        }
    }
}

TEST_CASE("check command reports uniformity") {
    RunConfig config;
    config.command = RunConfig::Command::Check;
    config.input_path = path_frame_csv();
    config.canonical = true;

    auto j = nlohmann::json::parse(gframe::run_check(config));
    CHECK(j["N"] == 3);
    CHECK(j["n"] == 2);
    CHECK(j["one_uniform"] == true);
    CHECK(j["two_uniform"] == true);
    CHECK(j["diagonal_value"].get<double>() == Approx(2.0 / 3).margin(1e-12));
    CHECK(j["offdiag_product"].get<double>() == Approx(1.0 / 9).margin(1e-12));
    CHECK(j["flags"].is_object());
}

TEST_CASE("search command JSON and trace") {
    RunConfig config;
    config.command = RunConfig::Command::Search;
    config.input_path = path_frame_csv();
    config.random_samples = 50;
    config.seed = 11;
    config.trace_path = (scratch_dir() / "trace.csv").string();

    auto j = nlohmann::json::parse(gframe::run_search(config));
    CHECK(j["N"] == 3);
    CHECK(j["n"] == 2);
    CHECK(j["p"].get<double>() == 2.0);
    CHECK(j["radius"].get<double>() == 1.0);
    CHECK(j["steps_per_axis"] == 11);
    CHECK(j["random_samples"] == 50);
    CHECK(j["seed"] == 11);
    REQUIRE(j["best_h"].size() == 2);
    CHECK(j["best_h"][0].get<double>() == 0.0);
    CHECK(j["best_h"][1].get<double>() == 0.0);
    CHECK(j["best_value"].get<double>() == Approx(2.0 / 3).margin(1e-9));
    CHECK(j["attained_at_zero"] == true);

    std::string trace = gframe::detail::slurp(config.trace_path);
    REQUIRE(trace.rfind("h_1,h_2,value\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : trace)
        if (ch == '\n') ++lines;
    CHECK(lines == 1 + 1 + 121 + 50); // header, origin, grid, samples
}

TEST_CASE("bounds command") {
    RunConfig config;
    config.command = RunConfig::Command::BoundsOnly;
    config.bounds_count = 4;
    config.bounds_dim = 2;
    std::string out = gframe::run_bounds(config);
    auto j = nlohmann::json::parse(out);
    CHECK(j["N"] == 4);
    CHECK(j["n"] == 2);
    CHECK(j["delta1"].get<double>() == 0.5);
    CHECK(j["delta2_lower"].get<double>() == Approx(0.7886751345948129).margin(1e-15));
    CHECK(out.find("0.788675134594813") != std::string::npos);

    config.bounds_dim = 9;
    CHECK_THROWS_AS(gframe::run_bounds(config), gframe::DomainError);
}

TEST_CASE("graph dump canonicalizes") {
    RunConfig config;
    config.command = RunConfig::Command::GraphDump;
    config.input_path = write_scratch("messy.txt", "# c\n4\n3 4\n1 3\n2 1\n");
    CHECK(gframe::run_graph_dump(config) == "4\n1 2\n1 3\n3 4\n");
}

TEST_CASE("repeated runs are byte identical") {
    RunConfig analyze;
    analyze.input_path = path_frame_csv();
    analyze.canonical = true;
    CHECK(gframe::run_analyze(analyze) == gframe::run_analyze(analyze));

    RunConfig search;
    search.command = RunConfig::Command::Search;
    search.input_path = path_frame_csv();
    search.random_samples = 80;
    search.seed = 99;
    CHECK(gframe::run_search(search) == gframe::run_search(search));
}

TEST_CASE("error classes map to distinct exit codes") {
    CHECK(gframe::exit_code(gframe::ErrorClass::Parse) == 2);
    CHECK(gframe::exit_code(gframe::ErrorClass::Math) == 3);
    CHECK(gframe::exit_code(gframe::ErrorClass::Verification) == 4);
}
