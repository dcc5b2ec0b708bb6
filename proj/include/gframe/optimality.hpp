#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gframe/erasure.hpp"
#include "gframe/error.hpp"
#include "gframe/frame.hpp"
#include "gframe/linalg.hpp"

namespace gframe {

// Diagonal and off-diagonal structure of the cross-Gramian. one_uniform:
// every <f_i, g_i> equals n/N. two_uniform additionally: the off-diagonal
// products <g_i, f_j><g_j, f_i> share one value, which the diagonal sum then
// forces to (nN - n^2) / (N^2 (N-1)).
struct UniformityVerdict {
    bool one_uniform = false;
    bool two_uniform = false;
    double diagonal_value = 0.0;
    std::optional<double> offdiag_product;
};

inline UniformityVerdict uniformity(const DualPair& pair, double tol = 1e-8) {
    const std::size_t count = pair.f.count();
    const double target = static_cast<double>(pair.f.dim()) / static_cast<double>(count);
    const Matrix& cross = pair.cross_gramian;

    UniformityVerdict v;
    double diag_sum = 0.0, diag_dev = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        diag_sum += cross(i, i);
        diag_dev = std::max(diag_dev, std::fabs(cross(i, i) - target));
    }
    v.diagonal_value = diag_sum / static_cast<double>(count);
    v.one_uniform = diag_dev <= tol;

    if (count < 2) {
        v.two_uniform = v.one_uniform;
        return v;
    }
    double prod_sum = 0.0, prod_min = 0.0, prod_max = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) {
            double prod = cross(i, j) * cross(j, i);
            prod_sum += prod;
            if (first) {
                prod_min = prod_max = prod;
                first = false;
            } else {
                prod_min = std::min(prod_min, prod);
                prod_max = std::max(prod_max, prod);
            }
        }
    double pairs = static_cast<double>(count) * (static_cast<double>(count) - 1.0) / 2.0;
    double common = prod_sum / pairs;
    double nn = static_cast<double>(count), n = static_cast<double>(pair.f.dim());
    double forced = (n * nn - n * n) / (nn * nn * (nn - 1.0));
    v.two_uniform = v.one_uniform && (prod_max - prod_min <= 2.0 * tol) &&
                    std::fabs(common - forced) <= tol;
    if (v.two_uniform) v.offdiag_product = common;
    return v;
}

// Optimality flags for the three measures. Value tests compare against the
// exact optima; the uniformity signature is required alongside the
// one-erasure test since the two characterizations coincide.
inline ReportFlags classify(const DualPair& pair, const MeasureParams& params,
                            double tol_value = 1e-9, double tol_uniform = 1e-8) {
    const int count = static_cast<int>(pair.f.count());
    const int dim = static_cast<int>(pair.f.dim());
    Bounds b = bounds(count, dim);
    auto u = uniformity(pair, tol_uniform);

    ReportFlags flags;
    flags.one_uniform = u.one_uniform;
    flags.two_uniform = u.two_uniform;

    double e1 = spectral_measure(pair, 1, params);
    flags.e1_optimal = std::fabs(e1 - b.delta1) <= tol_value && u.one_uniform;

    double o1 = opnorm_measure_O1(pair, params);
    flags.o1_optimal = std::fabs(o1 - b.delta1) <= tol_value;

    if (count >= 2) {
        double e2 = spectral_measure(pair, 2, params);
        flags.e2_attains_bound = std::fabs(e2 - b.delta2_lower) <= tol_value;
        for_each_subset(count, 2, [&](const std::vector<int>& idx) {
            const Matrix& c = pair.cross_gramian;
            auto i = static_cast<std::size_t>(idx[0]);
            auto j = static_cast<std::size_t>(idx[1]);
            double d = (c(i, i) - c(j, j)) * (c(i, i) - c(j, j)) + 4.0 * c(i, j) * c(j, i);
            if (d < 0.0) flags.complex_modulus_convention = true;
        });
    }
    return flags;
}

// Every dual of a corank-1 frame (N vectors spanning R^(N-1)) is
// g_i = S^-1 f_i + c_i h for one free vector h, where c spans the Gramian's
// null space. Coefficients are normalized so the pivot (first nonzero)
// entry is 1.
struct DualFamily {
    Frame frame;
    Frame base;
    std::vector<double> kernel_coeffs;
    int pivot = 0;
};

inline DualFamily dual_family(const Frame& f, double tol = 1e-8) {
    const std::size_t count = f.count();
    const std::size_t dim = f.dim();
    if (dim + 1 != count)
        throw NotCorank1("dual_family: frame has rank deficit " + std::to_string(count - dim) +
                         ", need exactly 1");
    Matrix null_basis = null_space_basis(gramian(f), tol);
    if (null_basis.cols() != 1)
        throw NotCorank1("dual_family: Gramian null space has dimension " +
                         std::to_string(null_basis.cols()) + ", need exactly 1");

    std::vector<double> c = null_basis.column(0);
    double max_mag = 0.0;
    for (double v : c) max_mag = std::max(max_mag, std::fabs(v));
    std::size_t pivot = 0;
    while (pivot < count && std::fabs(c[pivot]) <= 1e-8 * max_mag) ++pivot;
    double scale = c[pivot];
    for (double& v : c) v /= scale;

    // c spans ker(Gramian), so sum c_i f_i = 0; check the synthesis residual.
    std::vector<double> combo(dim, 0.0);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t r = 0; r < dim; ++r) combo[r] += c[i] * f.synthesis()(r, i);
    if (norm2(combo) > 1e-8)
        throw NotCorank1("dual_family: kernel coefficients fail the dependence relation");

    DualPair canonical = canonical_dual(f);
    return DualFamily{f, canonical.g, std::move(c), static_cast<int>(pivot)};
}

inline DualPair dual_from_parameter(const DualFamily& family, std::span<const double> h) {
    const std::size_t dim = family.frame.dim();
    const std::size_t count = family.frame.count();
    if (h.size() != dim) throw DomainError("dual_from_parameter: parameter has wrong dimension");
    Matrix g(dim, count);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t r = 0; r < dim; ++r)
            g(r, i) = family.base.synthesis()(r, i) + family.kernel_coeffs[i] * h[r];
    return verify_dual(family.frame, make_frame(g));
}

// One-erasure measure of the canonical pair of a corank-1 frame, from the
// kernel coefficients alone: ((1/N) sum_i (1 - c_i^2 / sum_j c_j^2)^p)^(1/p).
// Requires every (N-1)-subset of the vectors to be independent.
inline double closed_form_E1_canonical(const Frame& f, const MeasureParams& params,
                                       double tol = 1e-8) {
    DualFamily family = dual_family(f, tol);
    const std::size_t count = f.count();

    for (std::size_t drop = 0; drop < count; ++drop) {
        std::vector<int> keep;
        for (std::size_t i = 0; i < count; ++i)
            if (i != drop) keep.push_back(static_cast<int>(i));
        std::vector<int> all_rows;
        for (std::size_t r = 0; r < f.dim(); ++r) all_rows.push_back(static_cast<int>(r));
        Matrix sub = f.synthesis().submatrix(all_rows, keep);
        auto eig = sym_eig(sub * sub.transposed());
        if (eig.values.back() <= 1e-10 * std::max(eig.values.front(), 1.0)) {
            std::string subset;
            for (int i : keep) subset += (subset.empty() ? "" : ", ") + std::to_string(i);
            throw NotIndependent("closed_form_E1_canonical: vectors {" + subset +
                                 "} are dependent");
        }
    }

    double csq = 0.0;
    for (double v : family.kernel_coeffs) csq += v * v;
    double acc = 0.0;
    for (double v : family.kernel_coeffs)
        acc += std::pow(1.0 - v * v / csq, params.p);
    return std::pow(acc / static_cast<double>(count), 1.0 / params.p);
}

struct GridSpec {
    double radius = 1.0;
    int steps_per_axis = 11;
    int random_samples = 1000;
};

// Full grids cost steps^dim evaluations; above this dimension only the
// random ball samples are used.
inline constexpr std::size_t kMaxFullGridDim = 4;

struct SearchSample {
    std::vector<double> h;
    double value = 0.0;
};

struct SearchResult {
    std::vector<double> best_h;
    double best_value = 0.0;
    bool attained_at_zero = false;
    std::uint64_t seed = 0;
};

// Minimizes the one-erasure measure over the dual family parameter h, using
// an odd-stepped grid on [-radius, radius]^dim plus uniform samples from the
// radius ball. Ties go to the smaller ||h||. The same seed always yields the
// same samples and the same result.
inline SearchResult search_optimal_dual(
    const Frame& f, const MeasureParams& params, const GridSpec& grid, std::uint64_t seed = 0,
    const std::function<void(const SearchSample&)>& on_sample = nullptr) {
    if (!(grid.radius > 0.0)) throw DomainError("search: radius must be positive");
    if (grid.steps_per_axis < 1 || grid.steps_per_axis % 2 == 0)
        throw DomainError("search: steps per axis must be odd so the grid contains h = 0");
    if (grid.random_samples < 0) throw DomainError("search: sample count must be nonnegative");

    DualFamily family = dual_family(f);
    const std::size_t dim = f.dim();

    SearchResult result;
    result.seed = seed;
    double best_normsq = 0.0;
    bool have_best = false;
    double value_at_zero = 0.0;
    double min_nonzero_excess = std::numeric_limits<double>::infinity();

    auto evaluate = [&](const std::vector<double>& h) {
        DualPair pair = dual_from_parameter(family, h);
        double value = spectral_measure(pair, 1, params);
        if (on_sample) on_sample(SearchSample{h, value});
        double normsq = dot(h, h);
        if (normsq == 0.0) value_at_zero = value;
        if (!have_best || value < result.best_value ||
            (value == result.best_value && normsq < best_normsq)) {
            result.best_value = value;
            result.best_h = h;
            best_normsq = normsq;
            have_best = true;
        }
        if (std::sqrt(normsq) > 1e-6)
            min_nonzero_excess = std::min(min_nonzero_excess, value - value_at_zero);
        return value;
    };

    std::vector<double> h(dim, 0.0);
    evaluate(h);

    if (dim <= kMaxFullGridDim) {
        const int steps = grid.steps_per_axis;
        std::vector<int> odometer(dim, 0);
        while (true) {
            for (std::size_t a = 0; a < dim; ++a)
                h[a] = steps == 1 ? 0.0
                                  : -grid.radius + 2.0 * grid.radius *
                                                       static_cast<double>(odometer[a]) /
                                                       static_cast<double>(steps - 1);
            evaluate(h);
            std::size_t a = dim;
            while (a > 0 && odometer[a - 1] == steps - 1) odometer[--a] = 0;
            if (a == 0) break;
            ++odometer[a - 1];
        }
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < grid.random_samples; ++s) {
        double len = 0.0;
        for (std::size_t a = 0; a < dim; ++a) {
            h[a] = gauss(rng);
            len += h[a] * h[a];
        }
        len = std::sqrt(len);
        double radial = grid.radius *
                        std::pow(unit(rng), 1.0 / static_cast<double>(dim));
        for (std::size_t a = 0; a < dim; ++a) h[a] = (len > 0.0) ? h[a] / len * radial : 0.0;
        evaluate(h);
    }

    result.attained_at_zero =
        result.best_value >= value_at_zero - 1e-9 && min_nonzero_excess > 0.0;
    return result;
}

} // namespace gframe
