#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace treecount {

using Vertex = std::uint32_t;

// Sentinel used in raw distance arrays for unreachable vertices.
inline constexpr std::uint32_t kNoPath = std::numeric_limits<std::uint32_t>::max();

// Hop-count distance. The unreachable value compares greater than every
// finite value; finite values are exact shortest-path lengths.
class Dist {
public:
    constexpr Dist() : v_(kNoPath) {}
    constexpr explicit Dist(std::uint32_t v) : v_(v) {}

    static constexpr Dist infinite() { return Dist(); }

    constexpr bool finite() const { return v_ != kNoPath; }
    constexpr std::uint32_t value() const { return v_; }

    friend constexpr auto operator<=>(Dist, Dist) = default;

private:
    std::uint32_t v_;
};

// Finite simple graph, vertices 0..n-1, CSR adjacency with sorted neighbor
// lists. Immutable after construction; all queries are pure reads.
class Graph {
public:
    Graph() = default;

    // Deduplicates and symmetrizes `edges`. Rejects self-loops and vertex
    // ids >= n.
    static Graph from_edges(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges);

    Vertex vertex_count() const { return n_; }
    std::size_t edge_count() const { return adj_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::uint32_t degree(Vertex v) const {
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }
    bool has_edge(Vertex u, Vertex v) const;

    // Undirected edge list, (min,max) pairs in lexicographic order.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

private:
    Vertex n_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adj_;
};

// Graph file format: first non-comment line "n m", then m lines "u v" with
// 0 <= u,v < n and u != v. Lines starting with '#' and blank lines are
// ignored. Duplicate edges are ignored.
Graph load_graph(const std::string& text);

// Inverse of load_graph; edges sorted lexicographically.
std::string save_graph(const Graph& g);

// The common degree d if the graph is d-regular, nullopt otherwise.
std::optional<std::uint32_t> regular_degree(const Graph& g);

struct GirthResult {
    enum class Kind { Exact, Acyclic, AboveCutoff };
    Kind kind;
    std::uint32_t value = 0; // cycle length when Exact, the cutoff when AboveCutoff

    bool exceeds(std::uint32_t bound) const {
        return kind != Kind::Exact || value > bound;
    }
    std::string to_string() const;
};

// Length of the shortest cycle via per-vertex BFS. With a cutoff, the search
// is truncated: an Exact result is only produced for girth <= cutoff, and
// AboveCutoff certifies that no shorter cycle exists.
GirthResult girth(const Graph& g, std::optional<std::uint32_t> cutoff = std::nullopt);

Dist dist(const Graph& g, Vertex u, Vertex v);

// BFS distances from `source` to every vertex; kNoPath when unreachable.
std::vector<std::uint32_t> distances_from(const Graph& g, Vertex source);

// The vertex sequence of the unique shortest path from u to v. Verifies
// uniqueness: a second shortest path (a cycle within the search radius)
// raises a local-cycle error; unreachable v raises a no-path error.
std::vector<Vertex> unique_path(const Graph& g, Vertex u, Vertex v);

// A together with every vertex on a path between finite-distance members of
// A. Sorted. Propagates local-cycle errors from unique_path.
std::vector<Vertex> convex_closure(const Graph& g, std::span<const Vertex> a);

// Number of neighbors of c inside convex_closure(a). c must lie in the hull.
std::uint32_t hull_degree(const Graph& g, std::span<const Vertex> a, Vertex c);

// All vertices at finite distance from A (union of components meeting A).
std::vector<Vertex> connected_closure(const Graph& g, std::span<const Vertex> a);

} // namespace treecount
