#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "treecount/graph.hpp"

namespace treecount {

// Capacity guards for lift: labelings are indexed by base-edge bit vectors.
inline constexpr std::uint32_t kMaxLiftBaseEdges = 24;
inline constexpr std::uint64_t kMaxLiftVertices = std::uint64_t{1} << 25;

// Base edges in canonical order: sorted (min endpoint, max endpoint). The
// i-th edge owns bit i of every lift labeling.
std::vector<std::pair<Vertex, Vertex>> canonical_edges(const Graph& g);

// Flattened id of lift vertex (base, labeling).
inline Vertex lift_vertex(Vertex base, std::uint32_t labeling, std::uint32_t edge_count) {
    return static_cast<Vertex>((static_cast<std::uint64_t>(base) << edge_count) | labeling);
}

// The lift of g: vertex set V x {0,1}^E, with (u,f) ~ (v,g) exactly when
// e={u,v} is a base edge, f and g differ at e and agree elsewhere. Preserves
// regularity and doubles the girth.
Graph lift(const Graph& g);

// The `lifts`-fold lift of the complete graph K_{degree+1}.
Graph gen_lifted_complete(std::uint32_t degree, std::uint32_t lifts);

// A simple d-regular graph on n vertices with girth >= min_girth: random
// stub pairing that refuses any edge closing a short cycle, restarting the
// whole attempt on dead ends. Deterministic for a fixed seed.
Graph gen_random_regular(std::uint32_t n, std::uint32_t degree, std::uint32_t min_girth,
                         std::uint64_t seed, std::uint32_t attempt_budget = 10000);

Graph complete_graph(std::uint32_t n);
Graph path_graph(std::uint32_t n);
Graph cycle_graph(std::uint32_t n);

// Named fixtures: petersen, heawood, k3, k4, k5, path_N, cycle_N.
Graph named_graph(std::string_view name);

} // namespace treecount
