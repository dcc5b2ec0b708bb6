#pragma once

#include <algorithm>
#include <charconv>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gframe/error.hpp"
#include "gframe/linalg.hpp"
#include "gframe/matrix.hpp"

namespace gframe {

// Simple undirected graph. Vertices are 0-based internally; the file format
// is 1-based. Edges are stored as (i, j) with i < j, sorted.
struct Graph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;

    static Graph make(int vertex_count, std::vector<std::pair<int, int>> edges) {
        if (vertex_count < 1) throw DomainError("graph: vertex count must be at least 1");
        Graph g;
        g.vertex_count = vertex_count;
        for (auto& [a, b] : edges) {
            if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
                throw RangeError("graph: vertex index out of range");
            if (a == b) throw SelfLoop("graph: self loop");
            if (a > b) std::swap(a, b);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw DuplicateEdge("graph: duplicate edge");
        g.edges = std::move(edges);
        return g;
    }
};

namespace detail {

inline std::string_view trimmed(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline int parse_int_field(std::string_view field, int line_no, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("line " + std::to_string(line_no) + ": expected " + what + ", got '" +
                         std::string(field) + "'");
    return value;
}

} // namespace detail

// Edge-list format: first non-comment line is the vertex count N; each
// following line is an edge "i j" with 1-based endpoints. '#' starts a
// comment; blank lines are ignored.
inline Graph parse_edge_list(std::string_view text) {
    std::optional<int> n;
    std::vector<std::pair<int, int>> edges;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string_view body = line.substr(0, line.find('#'));
        body = detail::trimmed(body);
        if (body.empty()) continue;

        auto fields = detail::split_fields(body);
        if (!n.has_value()) {
            if (fields.size() != 1)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected vertex count alone on the first data line");
            int value = detail::parse_int_field(fields[0], line_no, "vertex count");
            if (value < 1)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": vertex count must be at least 1");
            n = value;
            continue;
        }
        if (fields.size() != 2)
            throw ParseError("line " + std::to_string(line_no) + ": expected an edge 'i j'");
        int a = detail::parse_int_field(fields[0], line_no, "vertex index");
        int b = detail::parse_int_field(fields[1], line_no, "vertex index");
        if (a < 1 || a > *n || b < 1 || b > *n)
            throw RangeError("line " + std::to_string(line_no) + ": vertex index out of range 1.." +
                             std::to_string(*n));
        if (a == b)
            throw SelfLoop("line " + std::to_string(line_no) + ": self loop at vertex " +
                           std::to_string(a));
        int lo = std::min(a, b) - 1, hi = std::max(a, b) - 1;
        if (std::find(edges.begin(), edges.end(), std::make_pair(lo, hi)) != edges.end())
            throw DuplicateEdge("line " + std::to_string(line_no) + ": duplicate edge " +
                                std::to_string(lo + 1) + " " + std::to_string(hi + 1));
        edges.emplace_back(lo, hi);
    }
    if (!n.has_value()) throw ParseError("edge list: no vertex count line");
    return Graph::make(*n, std::move(edges));
}

// Canonical form: vertex count, then edges sorted ascending, 1-based.
inline std::string dump_edge_list(const Graph& g) {
    std::string out = std::to_string(g.vertex_count);
    out.push_back('\n');
    for (const auto& [a, b] : g.edges) {
        out += std::to_string(a + 1);
        out.push_back(' ');
        out += std::to_string(b + 1);
        out.push_back('\n');
    }
    return out;
}

inline std::vector<int> degrees(const Graph& g) {
    std::vector<int> d(static_cast<std::size_t>(g.vertex_count), 0);
    for (const auto& [a, b] : g.edges) {
        ++d[static_cast<std::size_t>(a)];
        ++d[static_cast<std::size_t>(b)];
    }
    return d;
}

inline Matrix adjacency_matrix(const Graph& g) {
    auto n = static_cast<std::size_t>(g.vertex_count);
    Matrix a(n, n);
    for (const auto& [i, j] : g.edges) {
        a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 1.0;
        a(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = 1.0;
    }
    return a;
}

inline Matrix degree_matrix(const Graph& g) {
    auto n = static_cast<std::size_t>(g.vertex_count);
    Matrix d(n, n);
    auto deg = degrees(g);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = static_cast<double>(deg[i]);
    return d;
}

inline Matrix laplacian(const Graph& g) { return degree_matrix(g) - adjacency_matrix(g); }

// Components listed with vertices ascending, ordered by smallest vertex.
inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    auto n = static_cast<std::size_t>(g.vertex_count);
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : g.edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<bool> seen(n, false);
    std::vector<std::vector<int>> components;
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<int> comp;
        std::queue<int> frontier;
        frontier.push(static_cast<int>(start));
        seen[start] = true;
        while (!frontier.empty()) {
            int v = frontier.front();
            frontier.pop();
            comp.push_back(v);
            for (int u : adj[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = true;
                    frontier.push(u);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

struct DegreeExtremes {
    int max = 0;
    int min = 0;
};

inline DegreeExtremes degree_extremes(const Graph& g) {
    auto deg = degrees(g);
    auto [lo, hi] = std::minmax_element(deg.begin(), deg.end());
    return DegreeExtremes{*hi, *lo};
}

struct StructuralPredicates {
    bool is_connected = false;
    bool is_regular = false;
    bool is_complete = false;
    bool has_null_vertex = false;
    std::optional<int> regularity_degree;
};

inline StructuralPredicates structural_predicates(const Graph& g) {
    StructuralPredicates p;
    p.is_connected = connected_components(g).size() == 1;
    auto ext = degree_extremes(g);
    p.is_regular = ext.max == ext.min;
    if (p.is_regular) p.regularity_degree = ext.max;
    auto n = static_cast<long long>(g.vertex_count);
    p.is_complete = static_cast<long long>(g.edges.size()) == n * (n - 1) / 2;
    p.has_null_vertex = ext.min == 0;
    return p;
}

// Laplacian spectrum plus the structural facts read off from it.
struct GraphSpectrum {
    Matrix laplacian;
    EigenDecomposition eigen;
    int components = 0;
    double algebraic_connectivity = 0.0;
};

inline GraphSpectrum graph_spectrum(const Graph& g) {
    GraphSpectrum s;
    s.laplacian = laplacian(g);
    s.eigen = sym_eig(s.laplacian);
    s.components = static_cast<int>(connected_components(g).size());
    auto n = static_cast<std::size_t>(g.vertex_count);
    s.algebraic_connectivity = n >= 2 ? s.eigen.values[n - 2] : 0.0;
    return s;
}

} // namespace gframe
