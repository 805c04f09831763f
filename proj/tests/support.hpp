#pragma once

// Shared test helpers: independent oracles and graph builders that must not
// reuse the code paths they are checking.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "treecount/distance_algebra.hpp"
#include "treecount/graph.hpp"

namespace tcsupport {

using treecount::Dist;
using treecount::Graph;
using treecount::Vertex;

inline std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

// Uniformly random recursive tree on n vertices.
inline Graph random_tree(std::uint32_t n, std::mt19937_64& rng) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 1; v < n; ++v)
        edges.emplace_back(v, static_cast<Vertex>(rng_below(rng, v)));
    return Graph::from_edges(n, edges);
}

// Forest with the given number of components (roots 0..parts-1).
inline Graph random_forest(std::uint32_t n, std::uint32_t parts, std::mt19937_64& rng) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = parts; v < n; ++v)
        edges.emplace_back(v, static_cast<Vertex>(rng_below(rng, v)));
    return Graph::from_edges(n, edges);
}

// Independent shortest-cycle search: DFS over simple paths, cycle closes
// back at the start vertex. Exponential, for small fixtures only.
inline std::uint32_t brute_girth(const Graph& g, std::uint32_t maxlen) {
    std::uint32_t best = treecount::kNoPath;
    std::vector<bool> on_path(g.vertex_count(), false);
    std::vector<Vertex> path;

    auto dfs = [&](auto&& self, Vertex v, Vertex start) -> void {
        // A cycle of length L is detected while the path holds L vertices.
        if (path.size() > std::min<std::uint32_t>(best == treecount::kNoPath ? maxlen : best - 1,
                                                  maxlen))
            return;
        for (Vertex w : g.neighbors(v)) {
            if (w == start && path.size() >= 3) {
                best = std::min(best, static_cast<std::uint32_t>(path.size()));
                continue;
            }
            if (on_path[w] || w <= start) continue; // cycles counted from their minimum vertex
            on_path[w] = true;
            path.push_back(w);
            self(self, w, start);
            path.pop_back();
            on_path[w] = false;
        }
    };
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        on_path.assign(g.vertex_count(), false);
        on_path[s] = true;
        path.assign(1, s);
        dfs(dfs, s, s);
    }
    return best; // kNoPath when no cycle of length <= maxlen exists
}

struct EmbeddedHull {
    Graph graph;
    std::vector<Vertex> params; // graph vertex realizing each config index
    std::vector<Vertex> hull_vertices;
};

// Realizes an all-finite tree-metric configuration inside a finite tree
// whose vertices have full degree d out to `growth` steps from the hull, so
// counting over the hull region behaves exactly like a d-regular tree.
inline EmbeddedHull embed_hull(const treecount::DistanceConfig& cfg, std::uint32_t d,
                               std::uint32_t growth) {
    auto trees = treecount::realize_hull(cfg);
    if (trees.size() != 1)
        throw std::logic_error("embed_hull needs a single finite class");
    const auto& hull = trees.front();

    std::vector<std::vector<Vertex>> adj;
    auto add_vertex = [&adj] {
        adj.emplace_back();
        return static_cast<Vertex>(adj.size() - 1);
    };
    auto connect = [&adj](Vertex a, Vertex b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };

    EmbeddedHull out;
    std::vector<Vertex> node_vertex(hull.node_count());
    for (std::uint32_t v = 0; v < hull.node_count(); ++v) {
        node_vertex[v] = add_vertex();
        out.hull_vertices.push_back(node_vertex[v]);
    }
    for (const auto& e : hull.edges()) {
        Vertex prev = node_vertex[e.a];
        for (std::uint32_t step = 1; step < e.length; ++step) {
            Vertex mid = add_vertex();
            out.hull_vertices.push_back(mid);
            connect(prev, mid);
            prev = mid;
        }
        connect(prev, node_vertex[e.b]);
    }

    // Grow every hull vertex to full degree d, then (d-1)-branch outward.
    std::vector<std::pair<Vertex, std::uint32_t>> frontier;
    for (Vertex v : out.hull_vertices)
        frontier.emplace_back(v, 0);
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        auto [v, depth] = frontier[head];
        if (depth >= growth) continue;
        while (adj[v].size() < d) {
            Vertex w = add_vertex();
            connect(v, w);
            frontier.emplace_back(w, depth + 1);
        }
    }

    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v < adj.size(); ++v)
        for (Vertex w : adj[v])
            if (v < w) edges.emplace_back(v, w);
    out.graph = Graph::from_edges(static_cast<Vertex>(adj.size()), edges);
    for (std::uint32_t i = 0; i < cfg.size(); ++i)
        out.params.push_back(node_vertex[hull.node_of_label(i)]);
    return out;
}

// The rooted tree whose interior is d-regular out to the given depth.
inline EmbeddedHull regular_tree(std::uint32_t d, std::uint32_t depth) {
    return embed_hull(treecount::DistanceConfig(1), d, depth);
}

// Relabels vertices by a random permutation; perm[v] is the new id of v.
inline std::pair<Graph, std::vector<Vertex>> permute_graph(const Graph& g,
                                                           std::mt19937_64& rng) {
    std::vector<Vertex> perm(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) perm[v] = v;
    for (Vertex v = g.vertex_count(); v > 1; --v)
        std::swap(perm[v - 1], perm[rng_below(rng, v)]);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (auto [u, v] : g.edges())
        edges.emplace_back(perm[u], perm[v]);
    return {Graph::from_edges(g.vertex_count(), edges), perm};
}

} // namespace tcsupport
