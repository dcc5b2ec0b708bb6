#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gframe/error.hpp"
#include "gframe/graph.hpp"
#include "gframe/linalg.hpp"
#include "gframe/matrix.hpp"

namespace gframe {

inline constexpr double kFrameTol = 1e-10;
inline constexpr double kDualTol = 1e-8;
inline constexpr double kTightTol = 1e-9;

// A spanning family of N vectors in R^n, held as the n x N synthesis matrix
// whose column i is f_i. Construction validates the spanning property and
// caches the optimal frame bounds (extreme eigenvalues of the frame
// operator).
class Frame {
public:
    std::size_t dim() const { return synthesis_.rows(); }
    std::size_t count() const { return synthesis_.cols(); }
    const Matrix& synthesis() const { return synthesis_; }
    std::vector<double> vec(std::size_t i) const { return synthesis_.column(i); }
    double bound_lower() const { return bound_lower_; }
    double bound_upper() const { return bound_upper_; }

    friend Frame make_frame(const Matrix& vectors, double tol);

private:
    Frame(Matrix synthesis, double lo, double hi)
        : synthesis_(std::move(synthesis)), bound_lower_(lo), bound_upper_(hi) {}

    Matrix synthesis_;
    double bound_lower_, bound_upper_;
};

inline Matrix frame_operator(const Frame& f) {
    return f.synthesis() * f.synthesis().transposed();
}

inline Matrix gramian(const Frame& f) { return f.synthesis().transposed() * f.synthesis(); }

inline Frame make_frame(const Matrix& vectors, double tol = kFrameTol) {
    if (vectors.rows() < 1 || vectors.cols() < 1)
        throw NotAFrame("make_frame: need at least one vector in at least one dimension");
    if (vectors.cols() < vectors.rows())
        throw NotAFrame("make_frame: fewer vectors than dimensions, cannot span");
    if (!vectors.all_finite()) throw DomainError("make_frame: non-finite entry");

    Matrix s = vectors * vectors.transposed();
    auto eig = sym_eig(s);
    double hi = eig.values.front();
    double lo = eig.values.back();
    if (lo <= tol * hi)
        throw NotAFrame("make_frame: vectors do not span, smallest frame-operator eigenvalue " +
                        std::to_string(lo));
    return Frame(vectors, lo, hi);
}

// A verified dual pair. cross_gramian(i, j) = <g_i, f_j>.
struct DualPair {
    Frame f;
    Frame g;
    Matrix cross_gramian;
};

inline DualPair verify_dual(const Frame& f, const Frame& g, double tol = kDualTol) {
    if (f.dim() != g.dim() || f.count() != g.count())
        throw DomainError("verify_dual: frames have mismatched shape");
    Matrix resolution = g.synthesis() * f.synthesis().transposed();
    Matrix residual_m = resolution - Matrix::identity(f.dim());
    double residual = residual_m.frobenius_norm();
    if (residual > tol)
        throw NotADual("verify_dual: resolution of identity fails, Frobenius residual " +
                       std::to_string(residual));
    Matrix cross = g.synthesis().transposed() * f.synthesis();
    double trace_dev = std::fabs(cross.trace() - static_cast<double>(f.dim()));
    if (trace_dev > 1e-8)
        throw NotADual("verify_dual: diagonal sum deviates from the dimension by " +
                       std::to_string(trace_dev));
    return DualPair{f, g, std::move(cross)};
}

// Canonical dual: g_i = S^-1 f_i, with S^-1 formed from the symmetric
// eigendecomposition of the frame operator.
inline DualPair canonical_dual(const Frame& f) {
    Matrix s = frame_operator(f);
    auto eig = sym_eig(s);
    const std::size_t n = f.dim();
    Matrix inv_diag(n, n);
    for (std::size_t i = 0; i < n; ++i) inv_diag(i, i) = 1.0 / eig.values[i];
    Matrix s_inv = eig.vectors * inv_diag * eig.vectors.transposed();
    Frame g = make_frame(s_inv * f.synthesis());
    return verify_dual(f, g);
}

// Rescales by S^-1/2 so the result has frame operator I.
inline Frame parseval_normalize(const Frame& f) {
    Matrix s = frame_operator(f);
    auto eig = sym_eig(s);
    const std::size_t n = f.dim();
    Matrix inv_sqrt_diag(n, n);
    for (std::size_t i = 0; i < n; ++i) inv_sqrt_diag(i, i) = 1.0 / std::sqrt(eig.values[i]);
    Matrix s_inv_sqrt = eig.vectors * inv_sqrt_diag * eig.vectors.transposed();
    Frame out = make_frame(s_inv_sqrt * f.synthesis());
    double dev = (frame_operator(out) - Matrix::identity(n)).frobenius_norm();
    if (dev > 1e-8)
        throw NoConvergence("parseval_normalize: normalized frame operator deviates from I by " +
                            std::to_string(dev));
    return out;
}

// Frame whose Gramian is the graph Laplacian: eigenvectors M and nonzero
// eigenvalues of L give synthesis = diag(sqrt(lambda)) M1^T.
inline Frame frame_from_graph(const Graph& g) {
    Matrix lap = laplacian(g);
    auto eig = sym_eig(lap);
    const std::size_t big_n = lap.rows();
    double lambda_max = eig.values.front();
    double zero_tol = 1e-8 * std::max(lambda_max, 1.0);

    std::size_t rank = 0;
    while (rank < big_n && eig.values[rank] > zero_tol) ++rank;
    if (rank == 0) throw RankZero("frame_from_graph: edgeless graph has rank-zero Laplacian");

    Matrix synthesis(rank, big_n);
    for (std::size_t i = 0; i < rank; ++i) {
        double root = std::sqrt(eig.values[i]);
        for (std::size_t j = 0; j < big_n; ++j) synthesis(i, j) = root * eig.vectors(j, i);
    }
    Frame out = make_frame(synthesis);
    double residual = (gramian(out) - lap).frobenius_norm();
    if (residual > 1e-8)
        throw NoConvergence("frame_from_graph: Gramian deviates from the Laplacian by " +
                            std::to_string(residual));
    return out;
}

// Common frame bound when the two optimal bounds coincide to relative tol.
inline std::optional<double> is_tight(const Frame& f, double tol = kTightTol) {
    double hi = f.bound_upper(), lo = f.bound_lower();
    if ((hi - lo) / hi <= tol) return hi;
    return std::nullopt;
}

// For unitarily equivalent frames (f2_i = U f1_i), recovers U as
// F2 F1^T S1^-1 and verifies it. Equal Gramians are a precondition.
inline Matrix find_unitary_intertwiner(const Frame& f1, const Frame& f2, double tol = 1e-8) {
    if (f1.dim() != f2.dim() || f1.count() != f2.count())
        throw NotEquivalent("find_unitary_intertwiner: frames have mismatched shape");
    double gram_dev = (gramian(f1) - gramian(f2)).frobenius_norm();
    if (gram_dev > tol)
        throw NotEquivalent("find_unitary_intertwiner: Gramians differ by " +
                            std::to_string(gram_dev));

    Matrix s = frame_operator(f1);
    auto eig = sym_eig(s);
    const std::size_t n = f1.dim();
    Matrix inv_diag(n, n);
    for (std::size_t i = 0; i < n; ++i) inv_diag(i, i) = 1.0 / eig.values[i];
    Matrix s_inv = eig.vectors * inv_diag * eig.vectors.transposed();
    Matrix u = f2.synthesis() * f1.synthesis().transposed() * s_inv;

    double ortho_dev = (u.transposed() * u - Matrix::identity(n)).frobenius_norm();
    double map_dev = (u * f1.synthesis() - f2.synthesis()).frobenius_norm();
    if (ortho_dev > tol || map_dev > tol)
        throw NotEquivalent("find_unitary_intertwiner: recovered map is not a unitary intertwiner"
                            " (orthogonality residual " +
                            std::to_string(ortho_dev) + ", mapping residual " +
                            std::to_string(map_dev) + ")");
    return u;
}

// Frame CSV: one row per vector, n comma-separated decimal coordinates.
// '#' starts a comment; blank lines are ignored.
inline Frame read_frame_csv(std::string_view text, double tol = kFrameTol) {
    std::vector<std::vector<double>> rows;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string_view body = detail::trimmed(line.substr(0, line.find('#')));
        if (body.empty()) continue;

        std::vector<double> row;
        std::size_t start = 0;
        while (start <= body.size()) {
            std::size_t comma = body.find(',', start);
            std::string_view field = detail::trimmed(
                body.substr(start, comma == std::string_view::npos ? body.size() - start
                                                                   : comma - start));
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (ec != std::errc{} || ptr != field.data() + field.size())
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected a decimal coordinate, got '" + std::string(field) +
                                 "'");
            row.push_back(value);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(rows.front().size()) + " coordinates, got " +
                             std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("frame CSV: no data rows");

    Matrix synthesis(rows.front().size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) synthesis(j, i) = rows[i][j];
    return make_frame(synthesis, tol);
}

namespace detail {

inline std::string render_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace detail

inline std::string write_frame_csv(const Frame& f) {
    std::string out;
    for (std::size_t i = 0; i < f.count(); ++i) {
        for (std::size_t j = 0; j < f.dim(); ++j) {
            if (j) out.push_back(',');
            out += detail::render_double(f.synthesis()(j, i));
        }
        out.push_back('\n');
    }
    return out;
}

} // namespace gframe
