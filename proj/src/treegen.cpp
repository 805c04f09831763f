#include "treecount/treegen.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <stdexcept>
#include <string>

#include "treecount/errors.hpp"

namespace treecount {

std::vector<std::pair<Vertex, Vertex>> canonical_edges(const Graph& g) {
    return g.edges(); // already (min,max), lexicographic
}

Graph lift(const Graph& g) {
    const auto base_edges = canonical_edges(g);
    const auto e = static_cast<std::uint32_t>(base_edges.size());
    const std::uint64_t vertices = static_cast<std::uint64_t>(g.vertex_count()) << std::min(e, 63u);
    if (e > kMaxLiftBaseEdges || vertices > kMaxLiftVertices)
        throw domain_error("lift capacity exceeded: base has " + std::to_string(e) +
                           " edges (max " + std::to_string(kMaxLiftBaseEdges) + "), needs " +
                           std::to_string(g.vertex_count()) + "*2^" + std::to_string(e) +
                           " vertices (max " + std::to_string(kMaxLiftVertices) + ")");

    const std::uint32_t labelings = 1u << e;
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(base_edges.size()) * labelings);
    for (std::uint32_t i = 0; i < e; ++i) {
        auto [u, v] = base_edges[i];
        for (std::uint32_t f = 0; f < labelings; ++f)
            edges.emplace_back(lift_vertex(u, f, e), lift_vertex(v, f ^ (1u << i), e));
    }
    return Graph::from_edges(static_cast<Vertex>(vertices), edges);
}

Graph gen_lifted_complete(std::uint32_t degree, std::uint32_t lifts) {
    if (degree < 2)
        throw format_error("lifted-complete requires degree >= 2");
    Graph g = complete_graph(degree + 1);
    for (std::uint32_t i = 0; i < lifts; ++i)
        g = lift(g);
    return g;
}

namespace {

std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

// Partial-graph BFS: true iff dist(u, v) <= limit in the adjacency built so far.
class ReachChecker {
public:
    explicit ReachChecker(std::uint32_t n) : stamp_(n, 0), depth_(n, 0) {}

    bool within(const std::vector<std::vector<Vertex>>& adj, Vertex u, Vertex v,
                std::uint32_t limit) {
        if (u == v) return true;
        ++epoch_;
        queue_.clear();
        queue_.push_back(u);
        stamp_[u] = epoch_;
        depth_[u] = 0;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            Vertex x = queue_[head];
            if (depth_[x] == limit) continue;
            for (Vertex y : adj[x]) {
                if (stamp_[y] == epoch_) continue;
                if (y == v) return true;
                stamp_[y] = epoch_;
                depth_[y] = depth_[x] + 1;
                queue_.push_back(y);
            }
        }
        return false;
    }

private:
    std::vector<std::uint32_t> stamp_, depth_;
    std::vector<Vertex> queue_;
    std::uint32_t epoch_ = 0;
};

struct BuildState {
    std::uint32_t min_girth;
    std::vector<std::vector<Vertex>> adj;
    std::vector<Vertex> stubs; // one entry per missing edge endpoint
    std::vector<std::pair<Vertex, Vertex>> edges;
    ReachChecker reach;

    BuildState(std::uint32_t n, std::uint32_t d, std::uint32_t g)
        : min_girth(g), adj(n), reach(n) {
        stubs.reserve(static_cast<std::size_t>(n) * d);
        for (Vertex v = 0; v < n; ++v)
            for (std::uint32_t i = 0; i < d; ++i)
                stubs.push_back(v);
    }

    bool adjacent(Vertex u, Vertex v) const {
        const auto& nb = adj[u];
        return std::find(nb.begin(), nb.end(), v) != nb.end();
    }

    // An edge {u,v} keeps girth >= min_girth iff u,v are distinct,
    // non-adjacent and at distance >= min_girth-1 (closing a pair at
    // distance t makes a (t+1)-cycle).
    bool allowed(Vertex u, Vertex v) {
        if (u == v || adjacent(u, v)) return false;
        if (min_girth > 3 && reach.within(adj, u, v, min_girth - 2)) return false;
        return true;
    }

    void add_edge(Vertex u, Vertex v) {
        adj[u].push_back(v);
        adj[v].push_back(u);
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }

    void drop_edge(std::size_t idx) {
        auto [x, y] = edges[idx];
        std::erase(adj[x], y);
        std::erase(adj[y], x);
        edges[idx] = edges.back();
        edges.pop_back();
    }

    void remove_stub_at(std::size_t idx) {
        stubs[idx] = stubs.back();
        stubs.pop_back();
    }

    void remove_stub_of(Vertex v) {
        auto it = std::find(stubs.begin(), stubs.end(), v);
        *it = stubs.back();
        stubs.pop_back();
    }

    // Exchange repair for stuck stubs u, v (possibly equal): break a placed
    // edge (x,y) and rewire to u-x and v-y, keeping every distance check.
    bool exchange(Vertex u, Vertex v, std::mt19937_64& rng) {
        for (std::uint32_t t = 0; t < 400; ++t) {
            std::size_t eidx = static_cast<std::size_t>(rng_below(rng, edges.size()));
            auto [x, y] = edges[eidx];
            if (rng() & 1) std::swap(x, y);
            if (x == u || x == v || y == u || y == v) continue;
            if (!allowed(u, x)) continue;
            drop_edge(eidx);
            add_edge(u, x);
            if (allowed(v, y)) {
                add_edge(v, y);
                remove_stub_of(u);
                remove_stub_of(v);
                return true;
            }
            drop_edge(edges.size() - 1); // undo u-x
            add_edge(x, y);              // restore
        }
        return false;
    }
};

bool try_build(std::uint32_t n, std::uint32_t d, std::uint32_t min_girth, std::mt19937_64& rng,
               std::vector<std::pair<Vertex, Vertex>>& out) {
    BuildState st(n, d, min_girth);
    const std::size_t target = static_cast<std::size_t>(n) * d / 2;
    std::uint32_t failures = 0;

    while (st.edges.size() < target) {
        std::size_t i = static_cast<std::size_t>(rng_below(rng, st.stubs.size()));
        std::size_t j = static_cast<std::size_t>(rng_below(rng, st.stubs.size() - 1));
        if (j >= i) ++j;
        Vertex u = st.stubs[i], v = st.stubs[j];

        if (st.allowed(u, v)) {
            st.remove_stub_at(std::max(i, j));
            st.remove_stub_at(std::min(i, j));
            st.add_edge(u, v);
            failures = 0;
            continue;
        }
        if (++failures < 64 && failures < st.stubs.size() * st.stubs.size()) continue;

        // Random picks keep colliding; scan for any placeable pair.
        std::vector<Vertex> open(st.stubs);
        std::sort(open.begin(), open.end());
        open.erase(std::unique(open.begin(), open.end()), open.end());
        bool placed = false;
        for (std::size_t a = 0; a < open.size() && !placed; ++a)
            for (std::size_t b = a + 1; b < open.size() && !placed; ++b)
                if (st.allowed(open[a], open[b])) {
                    st.remove_stub_of(open[a]);
                    st.remove_stub_of(open[b]);
                    st.add_edge(open[a], open[b]);
                    placed = true;
                }
        if (!placed && st.edges.size() > target / 2) {
            // End-game: rewire through an existing edge instead.
            std::size_t ri = static_cast<std::size_t>(rng_below(rng, st.stubs.size()));
            std::size_t rj = static_cast<std::size_t>(rng_below(rng, st.stubs.size() - 1));
            if (rj >= ri) ++rj;
            placed = st.exchange(st.stubs[ri], st.stubs[rj], rng);
        }
        if (!placed) return false; // dead end, restart
        failures = 0;
    }
    out = std::move(st.edges);
    return true;
}

} // namespace

Graph gen_random_regular(std::uint32_t n, std::uint32_t degree, std::uint32_t min_girth,
                         std::uint64_t seed, std::uint32_t attempt_budget) {
    if (static_cast<std::uint64_t>(n) * degree % 2 != 0)
        throw format_error("n*degree must be even (handshake parity)");
    if (degree >= n)
        throw format_error("degree must be smaller than n");

    std::mt19937_64 rng(seed);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::uint32_t attempt = 0; attempt < attempt_budget; ++attempt) {
        if (!try_build(n, degree, min_girth, rng, edges)) continue;
        Graph g = Graph::from_edges(n, edges);
        bool girth_ok = min_girth <= 3 || girth(g, min_girth - 1).exceeds(min_girth - 1);
        if (regular_degree(g) != degree || !girth_ok)
            throw std::logic_error("random regular generator produced an invalid graph");
        return g;
    }
    throw domain_error("generation failed after " + std::to_string(attempt_budget) +
                       " attempts; increase n or reduce min-girth");
}

Graph complete_graph(std::uint32_t n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

Graph path_graph(std::uint32_t n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v + 1 < n; ++v)
        edges.emplace_back(v, v + 1);
    return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::uint32_t n) {
    if (n < 3)
        throw format_error("cycle graph needs at least 3 vertices");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v < n; ++v)
        edges.emplace_back(v, (v + 1) % n);
    return Graph::from_edges(n, edges);
}

namespace {

Graph petersen_graph() {
    // Outer 5-cycle, inner pentagram, five spokes.
    static const std::pair<Vertex, Vertex> es[] = {
        {0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
        {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8},
        {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
    };
    return Graph::from_edges(10, es);
}

Graph heawood_graph() {
    // LCF notation [5,-5]^7 on a 14-cycle.
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v < 14; ++v)
        edges.emplace_back(v, (v + 1) % 14);
    for (Vertex v = 0; v < 14; v += 2)
        edges.emplace_back(v, (v + 5) % 14);
    return Graph::from_edges(14, edges);
}

Graph checked_fixture(Graph g, std::uint32_t want_degree, std::uint32_t want_girth) {
    auto gr = girth(g);
    if (regular_degree(g) != want_degree || gr.kind != GirthResult::Kind::Exact ||
        gr.value != want_girth)
        throw std::logic_error("fixture graph failed its degree/girth check");
    return g;
}

std::optional<std::uint32_t> parse_suffix(std::string_view name, std::string_view prefix) {
    if (!name.starts_with(prefix)) return std::nullopt;
    auto num = name.substr(prefix.size());
    std::uint32_t n = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
    if (ec != std::errc{} || ptr != num.data() + num.size()) return std::nullopt;
    return n;
}

} // namespace

Graph named_graph(std::string_view name) {
    if (name == "petersen") return checked_fixture(petersen_graph(), 3, 5);
    if (name == "heawood") return checked_fixture(heawood_graph(), 3, 6);
    if (name == "k3") return complete_graph(3);
    if (name == "k4") return complete_graph(4);
    if (name == "k5") return complete_graph(5);
    if (auto n = parse_suffix(name, "path_")) return path_graph(*n);
    if (auto n = parse_suffix(name, "cycle_")) return cycle_graph(*n);
    throw format_error("unknown graph name '" + std::string(name) + "'");
}

} // namespace treecount
