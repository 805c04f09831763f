#include "treecount/ranks.hpp"

#include <algorithm>

#include "treecount/errors.hpp"

namespace treecount {

std::string render_ordinal(OrdinalPair o) {
    if (o.omega == 0) return std::to_string(o.finite);
    return "w*" + std::to_string(o.omega) + "+" + std::to_string(o.finite);
}

OrdinalPair rank_from_poly(const Poly2& p) {
    if (p.is_zero())
        throw domain_error("the empty set has no Morley rank (zero polynomial)");
    auto [m, n] = p.leading();
    return {m, n};
}

OrdinalPair ordinal_distance(const Graph& g, Vertex b, std::span<const Vertex> a) {
    auto hull = convex_closure(g, a);
    if (std::binary_search(hull.begin(), hull.end(), b)) return {0, 0};

    // Multi-source BFS out of the hull.
    std::vector<std::uint32_t> d(g.vertex_count(), kNoPath);
    std::vector<Vertex> queue;
    for (Vertex v : hull) {
        d[v] = 0;
        queue.push_back(v);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex x = queue[head];
        for (Vertex y : g.neighbors(x))
            if (d[y] == kNoPath) {
                d[y] = d[x] + 1;
                if (y == b) return {0, d[y]};
                queue.push_back(y);
            }
    }
    return {1, 0}; // a different component: omega
}

OrdinalPair tuple_rank(const Graph& g, std::span<const Vertex> tuple,
                       std::span<const Vertex> a) {
    OrdinalPair sum{0, 0};
    std::vector<Vertex> base(a.begin(), a.end());
    for (Vertex b : tuple) {
        sum = hessenberg_add(sum, ordinal_distance(g, b, base));
        base.push_back(b);
    }
    return sum;
}

bool is_independent(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b,
                    std::span<const Vertex> c) {
    auto ca = convex_closure(g, a);
    auto cb = convex_closure(g, b);
    auto cc = convex_closure(g, c);
    for (Vertex x : ca) {
        auto d = distances_from(g, x);
        for (Vertex y : cb) {
            if (d[y] == kNoPath) continue;
            auto path = unique_path(g, x, y);
            bool touches = std::any_of(path.begin(), path.end(), [&](Vertex v) {
                return std::binary_search(cc.begin(), cc.end(), v);
            });
            if (!touches) return false;
        }
    }
    return true;
}

} // namespace treecount
