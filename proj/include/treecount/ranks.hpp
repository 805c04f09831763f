#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>

#include "treecount/graph.hpp"
#include "treecount/poly.hpp"

namespace treecount {

// Ordinal below omega^2, stored as (m, n) for omega*m + n. Ordered
// lexicographically.
struct OrdinalPair {
    std::uint32_t omega = 0;  // coefficient of omega
    std::uint32_t finite = 0; // finite part

    friend auto operator<=>(const OrdinalPair&, const OrdinalPair&) = default;
};

// Natural (componentwise) ordinal sum.
inline OrdinalPair hessenberg_add(OrdinalPair x, OrdinalPair y) {
    return {x.omega + y.omega, x.finite + y.finite};
}

// Rendered "w*m+n", or just "n" when m = 0.
std::string render_ordinal(OrdinalPair o);

// Morley rank of a nonempty definable set from its counting polynomial:
// leading degree (m, n) gives omega*m (+) n.
OrdinalPair rank_from_poly(const Poly2& p);

// Ordinal distance D(b/A): dist(b, conv(A)) when finite, omega otherwise.
OrdinalPair ordinal_distance(const Graph& g, Vertex b, std::span<const Vertex> a);

// Hessenberg sum of D(b_i / A ∪ {b_1..b_{i-1}}) over the tuple.
OrdinalPair tuple_rank(const Graph& g, std::span<const Vertex> tuple, std::span<const Vertex> a);

// Forking-independence test: after hull-closing A, B and C, every path from
// A to B must pass through C.
bool is_independent(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b,
                    std::span<const Vertex> c);

} // namespace treecount
