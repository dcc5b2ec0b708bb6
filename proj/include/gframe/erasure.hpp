#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gframe/error.hpp"
#include "gframe/frame.hpp"
#include "gframe/linalg.hpp"
#include "gframe/matrix.hpp"

namespace gframe {

// Indices of erased analysis coefficients, 0-based, kept sorted and unique.
struct ErasureSet {
    std::vector<int> indices;

    static ErasureSet make(std::vector<int> indices, int count) {
        std::sort(indices.begin(), indices.end());
        if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
            throw DomainError("erasure set: repeated index");
        if (!indices.empty() && (indices.front() < 0 || indices.back() >= count))
            throw RangeError("erasure set: index out of range 0.." + std::to_string(count - 1));
        return ErasureSet{std::move(indices)};
    }
};

// Exponent for the p-averaged measures. p > 1 throughout the theory; p = 1
// is accepted only behind an explicit override for exploratory runs.
struct MeasureParams {
    double p = 2.0;

    static MeasureParams make(double p, bool allow_p_equals_one = false) {
        if (!std::isfinite(p)) throw DomainError("measure params: p not finite");
        if (p < 1.0 || (p == 1.0 && !allow_p_equals_one))
            throw DomainError("measure params: p must exceed 1");
        return MeasureParams{p};
    }
};

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) /
                                     static_cast<std::uint64_t>(i);
    return c;
}

// Visits every size-k subset of {0..n-1} in lexicographic order.
template <typename Visit>
inline void for_each_subset(int n, int k, Visit&& visit) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        visit(const_cast<const std::vector<int>&>(idx));
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Principal submatrix of the cross-Gramian on the erased indices. Its
// nonzero spectrum matches that of the erasure error operator.
inline Matrix error_submatrix(const DualPair& pair, const ErasureSet& set) {
    if (set.indices.empty()) throw DomainError("error_submatrix: empty erasure set");
    if (set.indices.back() >= static_cast<int>(pair.f.count()))
        throw RangeError("error_submatrix: index out of range");
    return pair.cross_gramian.submatrix(set.indices, set.indices);
}

inline double erasure_spectral_radius(const DualPair& pair, const ErasureSet& set) {
    return spectral_radius(error_submatrix(pair, set));
}

// Largest eigenvalue modulus of [[a_ii, a_ij], [a_ji, a_jj]] in closed form.
// Negative discriminant means a conjugate pair; both then share one modulus.
inline double two_erasure_closed_form(double a_ii, double a_jj, double a_ij, double a_ji) {
    double d = (a_ii - a_jj) * (a_ii - a_jj) + 4.0 * a_ij * a_ji;
    double mean = 0.5 * (a_ii + a_jj);
    if (d >= 0.0) {
        double root = 0.5 * std::sqrt(d);
        return std::max(std::fabs(mean + root), std::fabs(mean - root));
    }
    return std::sqrt(mean * mean + 0.25 * std::fabs(d));
}

// Operator norm of the error operator sum_{i in set} g_i f_i^T.
inline double erasure_operator_norm(const DualPair& pair, const ErasureSet& set) {
    if (set.indices.empty()) throw DomainError("erasure_operator_norm: empty erasure set");
    if (set.indices.back() >= static_cast<int>(pair.f.count()))
        throw RangeError("erasure_operator_norm: index out of range");
    const std::size_t n = pair.f.dim();
    Matrix e(n, n);
    for (int idx : set.indices) {
        auto gi = pair.g.vec(static_cast<std::size_t>(idx));
        auto fi = pair.f.vec(static_cast<std::size_t>(idx));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) e(r, c) += gi[r] * fi[c];
    }
    return operator_norm(e);
}

inline constexpr std::uint64_t kSubsetEnumerationCap = 1000000;

// p-averaged spectral radius over all k-erasures:
// ((1/C(N,k)) sum over |set|=k of rho(set)^p)^(1/p).
inline double spectral_measure(const DualPair& pair, int k, const MeasureParams& params) {
    const int count = static_cast<int>(pair.f.count());
    if (k < 1 || k > count)
        throw DomainError("spectral_measure: erasure size must lie in 1..N");
    std::uint64_t total = binomial(count, k);
    if (total > kSubsetEnumerationCap)
        throw CombinatorialLimit("spectral_measure: " + std::to_string(total) +
                                 " erasure patterns exceeds the enumeration cap of " +
                                 std::to_string(kSubsetEnumerationCap));
    double acc = 0.0;
    for_each_subset(count, k, [&](const std::vector<int>& idx) {
        double rho = erasure_spectral_radius(pair, ErasureSet{idx});
        acc += std::pow(rho, params.p);
    });
    return std::pow(acc / static_cast<double>(total), 1.0 / params.p);
}

// p-averaged operator norm over single erasures:
// ((1/N) sum_i (||f_i|| ||g_i||)^p)^(1/p).
inline double opnorm_measure_O1(const DualPair& pair, const MeasureParams& params) {
    const std::size_t count = pair.f.count();
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        double prod = norm2(pair.f.vec(i)) * norm2(pair.g.vec(i));
        acc += std::pow(prod, params.p);
    }
    return std::pow(acc / static_cast<double>(count), 1.0 / params.p);
}

// Optimal-measure reference values for (N, n): the one-erasure optimum n/N
// and the two-erasure lower bound n/N + sqrt((nN - n^2) / (N^2 (N-1))).
struct Bounds {
    double delta1 = 0.0;
    double delta2_lower = 0.0;
};

inline Bounds bounds(int count, int dim) {
    if (dim < 1 || dim > count) throw DomainError("bounds: need 1 <= n <= N");
    if (count < 2) throw DomainError("bounds: need N >= 2");
    double nn = static_cast<double>(count), n = static_cast<double>(dim);
    Bounds b;
    b.delta1 = n / nn;
    b.delta2_lower = n / nn + std::sqrt((n * nn - n * n) / (nn * nn * (nn - 1.0)));
    return b;
}

// Balanced-point value of sum_i |a + sqrt(x_i)|^p on the hyperplane
// x_1 + ... + x_r = c: every x_i = c/r, giving r (a + sqrt(c/r))^p.  Not the
// constrained infimum in general: for small p a corner (c, 0, ..., 0) lies
// lower, since the balanced point maximizes sum_i sqrt(x_i).
inline double lemma35_min(double a, double c, int r, double p) {
    if (!(a > 0.0) || !(c >= 0.0) || r < 1 || !(p > 1.0))
        throw DomainError("lemma35_min: need a > 0, c >= 0, r >= 1, p > 1");
    return static_cast<double>(r) * std::pow(a + std::sqrt(c / static_cast<double>(r)), p);
}

struct ReportFlags {
    bool one_uniform = false;
    bool two_uniform = false;
    bool e1_optimal = false;
    bool e2_attains_bound = false;
    bool o1_optimal = false;
    // Set when any two-erasure submatrix had a conjugate eigenvalue pair, so
    // the modulus convention for negative discriminants was exercised.
    bool complex_modulus_convention = false;
};

struct ErasureReport {
    int N = 0;
    int n = 0;
    double p = 2.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double o1 = 0.0;
    double delta1 = 0.0;
    double delta2_lower = 0.0;
    ReportFlags flags;
};

} // namespace gframe
