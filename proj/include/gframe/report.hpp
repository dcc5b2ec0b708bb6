#pragma once

#include <charconv>
#include <string>

#include <json.hpp>

#include "gframe/erasure.hpp"
#include "gframe/optimality.hpp"

namespace gframe {

// Rounds to 15 significant decimal digits so serialized numbers are stable,
// locale-free, and never longer than 15 digits.
inline double round15(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
    double out = 0.0;
    std::from_chars(buf, ptr, out);
    return out;
}

inline ErasureReport build_report(const DualPair& pair, const MeasureParams& params,
                                  double tol_value = 1e-9, double tol_uniform = 1e-8) {
    ErasureReport report;
    report.N = static_cast<int>(pair.f.count());
    report.n = static_cast<int>(pair.f.dim());
    report.p = params.p;
    report.e1 = spectral_measure(pair, 1, params);
    report.e2 = spectral_measure(pair, 2, params);
    report.o1 = opnorm_measure_O1(pair, params);
    Bounds b = bounds(report.N, report.n);
    report.delta1 = b.delta1;
    report.delta2_lower = b.delta2_lower;
    report.flags = classify(pair, params, tol_value, tol_uniform);
    return report;
}

inline nlohmann::ordered_json flags_to_json(const ReportFlags& flags) {
    nlohmann::ordered_json j;
    j["one_uniform"] = flags.one_uniform;
    j["two_uniform"] = flags.two_uniform;
    j["e1_optimal"] = flags.e1_optimal;
    j["e2_attains_bound"] = flags.e2_attains_bound;
    j["o1_optimal"] = flags.o1_optimal;
    j["complex_modulus_convention"] = flags.complex_modulus_convention;
    return j;
}

inline nlohmann::ordered_json report_to_json(const ErasureReport& report) {
    nlohmann::ordered_json j;
    j["N"] = report.N;
    j["n"] = report.n;
    j["p"] = round15(report.p);
    j["e1"] = round15(report.e1);
    j["e2"] = round15(report.e2);
    j["o1"] = round15(report.o1);
    j["delta1"] = round15(report.delta1);
    j["delta2_lower"] = round15(report.delta2_lower);
    j["flags"] = flags_to_json(report.flags);
    return j;
}

inline std::string render_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

} // namespace gframe
