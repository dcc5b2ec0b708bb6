#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "gframe/erasure.hpp"
#include "gframe/frame.hpp"
#include "gframe/graph.hpp"
#include "gframe/matrix.hpp"

namespace testutil {

using gframe::Frame;
using gframe::Graph;
using gframe::Matrix;

using Rng = std::mt19937_64;

inline Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double spread = 1.0) {
    std::uniform_real_distribution<double> dist(-spread, spread);
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

inline Matrix random_symmetric(std::size_t n, Rng& rng, double spread = 1.0) {
    std::uniform_real_distribution<double> dist(-spread, spread);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = dist(rng);
    return m;
}

inline Frame random_frame(std::size_t dim, std::size_t count, Rng& rng) {
    for (;;) {
        try {
            return gframe::make_frame(random_matrix(dim, count, rng));
        } catch (const gframe::NotAFrame&) {
            // rank-deficient draw, try again
        }
    }
}

// General dual: canonical dual plus Y (I - F^T S^-1 F), which ranges over
// the whole affine family of duals as Y varies.
inline gframe::DualPair random_dual_pair(const Frame& f, Rng& rng, double spread = 0.5) {
    Matrix fs = f.synthesis();
    gframe::DualPair canonical = gframe::canonical_dual(f);
    Matrix proj = Matrix::identity(f.count()) -
                  fs.transposed() * canonical.g.synthesis();
    Matrix y = random_matrix(f.dim(), f.count(), rng, spread);
    Matrix g = canonical.g.synthesis() + y * proj;
    return gframe::verify_dual(f, gframe::make_frame(g));
}

// Product of random Givens rotations: exactly orthogonal, determinant 1.
inline Matrix random_rotation(std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    Matrix u = Matrix::identity(n);
    for (int pass = 0; pass < 2; ++pass)
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double t = angle(rng);
                double c = std::cos(t), s = std::sin(t);
                for (std::size_t i = 0; i < n; ++i) {
                    double up = u(i, p), uq = u(i, q);
                    u(i, p) = c * up - s * uq;
                    u(i, q) = s * up + c * uq;
                }
            }
    return u;
}

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::make(n, std::move(edges));
}

inline Graph cycle_graph(int n) {
    auto edges = path_graph(n).edges;
    edges.emplace_back(0, n - 1);
    return Graph::make(n, std::move(edges));
}

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph::make(n, std::move(edges));
}

inline Graph star_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
    return Graph::make(n, std::move(edges));
}

inline Graph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
    return Graph::make(a + b, std::move(edges));
}

inline Graph disjoint_union(const Graph& g1, const Graph& g2) {
    auto edges = g1.edges;
    for (auto [a, b] : g2.edges) edges.emplace_back(a + g1.vertex_count, b + g1.vertex_count);
    return Graph::make(g1.vertex_count + g2.vertex_count, std::move(edges));
}

inline Graph random_connected_graph(int n, Rng& rng, double extra_edge_prob = 0.4) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::pair<int, int>> edges;
    // random spanning tree first, then extra edges
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        edges.emplace_back(pick(rng), v);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::pair<int, int> e{i, j};
            bool present = false;
            for (auto& have : edges)
                if ((have.first == i && have.second == j) ||
                    (have.first == j && have.second == i))
                    present = true;
            if (!present && coin(rng) < extra_edge_prob) edges.push_back(e);
        }
    return Graph::make(n, std::move(edges));
}

inline std::vector<Graph> connected_corpus(int max_n) {
    std::vector<Graph> out;
    for (int n = 2; n <= max_n; ++n) out.push_back(path_graph(n));
    for (int n = 3; n <= max_n; ++n) out.push_back(cycle_graph(n));
    for (int n = 2; n <= max_n; ++n) out.push_back(complete_graph(n));
    for (int n = 4; n <= max_n; ++n) out.push_back(star_graph(n));
    if (max_n >= 5) out.push_back(complete_bipartite(2, 3));
    if (max_n >= 6) out.push_back(complete_bipartite(3, 3));
    if (max_n >= 6) out.push_back(complete_bipartite(2, 4));
    Rng rng(20260819);
    for (int n = 4; n <= std::min(max_n, 8); ++n) out.push_back(random_connected_graph(n, rng));
    return out;
}

// Characteristic polynomial coefficients by the Faddeev-LeVerrier recurrence:
// p(x) = x^n + c[0] x^(n-1) + ... + c[n-1]. Eigensolver-free oracle.
inline std::vector<double> charpoly_coeffs(const Matrix& a) {
    const std::size_t n = a.rows();
    std::vector<double> c(n);
    Matrix m = a;
    c[0] = -m.trace();
    for (std::size_t k = 1; k < n; ++k) {
        Matrix shifted = m;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c[k - 1];
        m = a * shifted;
        c[k] = -m.trace() / static_cast<double>(k + 1);
    }
    return c;
}

inline double eval_monic(const std::vector<double>& c, double x) {
    double v = 1.0;
    for (double coeff : c) v = v * x + coeff;
    return v;
}

// Roots of a monic polynomial with all-real simple roots, by sampling sign
// changes and bisecting. Interval comes from a Gershgorin-style bound.
inline std::vector<double> real_roots_by_bisection(const std::vector<double>& c, double lo,
                                                   double hi, int samples = 20000) {
    std::vector<double> roots;
    double prev_x = lo, prev_v = eval_monic(c, lo);
    for (int s = 1; s <= samples; ++s) {
        double x = lo + (hi - lo) * static_cast<double>(s) / samples;
        double v = eval_monic(c, x);
        if (prev_v == 0.0) roots.push_back(prev_x);
        if (prev_v * v < 0.0) {
            double a = prev_x, b = x;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (a + b);
                double fm = eval_monic(c, mid);
                if (eval_monic(c, a) * fm <= 0.0)
                    b = mid;
                else
                    a = mid;
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_v = v;
    }
    return roots;
}

// Verifies a claimed eigenvalue multiset against the trace moments
// sum(lambda^k) = tr(M^k), k = 1..n. Robust to multiple roots.
inline bool moments_match(const Matrix& m, const std::vector<double>& claimed, double tol) {
    const std::size_t n = m.rows();
    Matrix power = m;
    for (std::size_t k = 1; k <= n; ++k) {
        double moment = 0.0;
        for (double lambda : claimed) moment += std::pow(lambda, static_cast<double>(k));
        if (std::fabs(power.trace() - moment) > tol * std::max(1.0, std::fabs(moment)))
            return false;
        if (k < n) power = power * m;
    }
    return true;
}

// Quadratic-formula eigenvalues of [[a, b], [c, d]], independent route.
inline std::pair<std::complex<double>, std::complex<double>> quadratic_eigs(double a, double b,
                                                                            double c, double d) {
    std::complex<double> tr(a + d, 0.0);
    std::complex<double> disc = (a - d) * (a - d) + 4.0 * b * c;
    std::complex<double> root = std::sqrt(disc);
    return {(tr + root) / 2.0, (tr - root) / 2.0};
}

} // namespace testutil
