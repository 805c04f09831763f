#include "treecount/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>
#include <string_view>

#include "treecount/errors.hpp"

namespace treecount {

Graph Graph::from_edges(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges) {
    std::vector<std::pair<Vertex, Vertex>> es;
    es.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw format_error("edge endpoint out of range: " + std::to_string(std::max(u, v)) +
                               " >= " + std::to_string(n));
        if (u == v)
            throw format_error("self-loop at vertex " + std::to_string(u));
        es.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());

    Graph g;
    g.n_ = n;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto [u, v] : es) {
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (std::size_t i = 1; i <= n; ++i)
        g.offsets_[i] += g.offsets_[i - 1];
    g.adj_.resize(es.size() * 2);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : es) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    for (Vertex v = 0; v < n; ++v) {
        auto* first = g.adj_.data() + g.offsets_[v];
        auto* last = g.adj_.data() + g.offsets_[v + 1];
        std::sort(first, last);
    }
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> es;
    es.reserve(edge_count());
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : neighbors(u))
            if (u < v)
                es.emplace_back(u, v);
    return es;
}

namespace {

bool data_line(std::string_view line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos != std::string_view::npos && line[pos] != '#';
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line_no, const char* what) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw format_error("line " + std::to_string(line_no) + ": bad " + what + " '" +
                           std::string(tok) + "'");
    return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

} // namespace

Graph load_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    bool have_header = false;
    std::uint64_t n = 0, m = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;

    while (std::getline(in, line)) {
        ++line_no;
        if (!data_line(line)) continue;
        auto toks = split_ws(line);
        if (!have_header) {
            if (toks.size() != 2)
                throw format_error("line " + std::to_string(line_no) +
                                   ": expected header 'n m'");
            n = parse_uint(toks[0], line_no, "vertex count");
            m = parse_uint(toks[1], line_no, "edge count");
            if (n > std::numeric_limits<Vertex>::max() - 1)
                throw format_error("line " + std::to_string(line_no) + ": vertex count too large");
            have_header = true;
            continue;
        }
        if (edges.size() == m)
            throw format_error("line " + std::to_string(line_no) + ": trailing data after " +
                               std::to_string(m) + " edges");
        if (toks.size() != 2)
            throw format_error("line " + std::to_string(line_no) + ": expected edge 'u v'");
        std::uint64_t u = parse_uint(toks[0], line_no, "vertex id");
        std::uint64_t v = parse_uint(toks[1], line_no, "vertex id");
        if (u >= n || v >= n)
            throw format_error("line " + std::to_string(line_no) + ": vertex id " +
                               std::to_string(std::max(u, v)) + " out of range (n=" +
                               std::to_string(n) + ")");
        if (u == v)
            throw format_error("line " + std::to_string(line_no) + ": self-loop at vertex " +
                               std::to_string(u));
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (!have_header)
        throw format_error("missing header 'n m'");
    if (edges.size() < m)
        throw format_error("unexpected end of file: got " + std::to_string(edges.size()) +
                           " of " + std::to_string(m) + " edges");
    return Graph::from_edges(static_cast<Vertex>(n), edges);
}

std::string save_graph(const Graph& g) {
    std::ostringstream out;
    auto es = g.edges();
    out << g.vertex_count() << ' ' << es.size() << '\n';
    for (auto [u, v] : es)
        out << u << ' ' << v << '\n';
    return out.str();
}

std::optional<std::uint32_t> regular_degree(const Graph& g) {
    if (g.vertex_count() == 0) return 0;
    std::uint32_t d = g.degree(0);
    for (Vertex v = 1; v < g.vertex_count(); ++v)
        if (g.degree(v) != d) return std::nullopt;
    return d;
}

std::string GirthResult::to_string() const {
    switch (kind) {
    case Kind::Exact: return std::to_string(value);
    case Kind::Acyclic: return "inf";
    default: return "> " + std::to_string(value);
    }
}

GirthResult girth(const Graph& g, std::optional<std::uint32_t> cutoff) {
    const Vertex n = g.vertex_count();
    std::uint32_t best = kNoPath;

    // Stamped BFS state, reused across roots.
    std::vector<std::uint32_t> stamp(n, 0), depth(n), parent_of(n);
    std::vector<Vertex> queue;
    queue.reserve(n);
    std::uint32_t epoch = 0;

    for (Vertex root = 0; root < n && best > 3; ++root) {
        // A cycle of length L is certified by levels up to floor(L/2).
        std::uint32_t bound = cutoff ? *cutoff : kNoPath;
        if (best != kNoPath) bound = std::min(bound, best - 1);
        if (bound < 3) break;
        const std::uint32_t depth_cap = bound == kNoPath ? kNoPath : bound / 2;

        ++epoch;
        queue.clear();
        queue.push_back(root);
        stamp[root] = epoch;
        depth[root] = 0;
        parent_of[root] = root;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex x = queue[head];
            for (Vertex y : g.neighbors(x)) {
                if (stamp[y] != epoch) {
                    if (depth[x] + 1 > depth_cap) continue;
                    stamp[y] = epoch;
                    depth[y] = depth[x] + 1;
                    parent_of[y] = x;
                    queue.push_back(y);
                } else if (parent_of[x] != y && parent_of[y] != x) {
                    best = std::min(best, depth[x] + depth[y] + 1);
                }
            }
        }
    }

    if (cutoff && (best == kNoPath || best > *cutoff))
        return {GirthResult::Kind::AboveCutoff, *cutoff};
    if (best == kNoPath)
        return {GirthResult::Kind::Acyclic, 0};
    return {GirthResult::Kind::Exact, best};
}

std::vector<std::uint32_t> distances_from(const Graph& g, Vertex source) {
    std::vector<std::uint32_t> d(g.vertex_count(), kNoPath);
    std::vector<Vertex> queue;
    queue.reserve(g.vertex_count());
    d[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex x = queue[head];
        for (Vertex y : g.neighbors(x)) {
            if (d[y] == kNoPath) {
                d[y] = d[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return d;
}

Dist dist(const Graph& g, Vertex u, Vertex v) {
    if (u == v) return Dist(0);
    std::vector<std::uint32_t> d(g.vertex_count(), kNoPath);
    std::vector<Vertex> queue;
    d[u] = 0;
    queue.push_back(u);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex x = queue[head];
        for (Vertex y : g.neighbors(x)) {
            if (d[y] == kNoPath) {
                d[y] = d[x] + 1;
                if (y == v) return Dist(d[y]);
                queue.push_back(y);
            }
        }
    }
    return Dist::infinite();
}

std::vector<Vertex> unique_path(const Graph& g, Vertex u, Vertex v) {
    if (u == v) return {u};
    auto d = distances_from(g, u);
    if (d[v] == kNoPath)
        throw domain_error("no path between " + std::to_string(u) + " and " + std::to_string(v));

    // Walk back along shortest-path predecessors; a fork means two shortest
    // paths and hence a cycle within the search radius.
    std::vector<Vertex> path{v};
    Vertex cur = v;
    while (cur != u) {
        Vertex pred = kNoPath;
        for (Vertex w : g.neighbors(cur)) {
            if (d[w] + 1 == d[cur]) {
                if (pred != kNoPath)
                    throw domain_error("local cycle: two shortest paths between " +
                                       std::to_string(u) + " and " + std::to_string(v));
                pred = w;
            }
        }
        cur = pred;
        path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<Vertex> convex_closure(const Graph& g, std::span<const Vertex> a) {
    std::vector<Vertex> hull(a.begin(), a.end());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto d = distances_from(g, a[i]);
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (d[a[j]] == kNoPath) continue;
            auto path = unique_path(g, a[i], a[j]);
            hull.insert(hull.end(), path.begin(), path.end());
        }
    }
    std::sort(hull.begin(), hull.end());
    hull.erase(std::unique(hull.begin(), hull.end()), hull.end());
    return hull;
}

std::uint32_t hull_degree(const Graph& g, std::span<const Vertex> a, Vertex c) {
    auto hull = convex_closure(g, a);
    if (!std::binary_search(hull.begin(), hull.end(), c))
        throw domain_error("vertex " + std::to_string(c) + " is outside the convex closure");
    std::uint32_t deg = 0;
    for (Vertex w : g.neighbors(c))
        if (std::binary_search(hull.begin(), hull.end(), w))
            ++deg;
    return deg;
}

std::vector<Vertex> connected_closure(const Graph& g, std::span<const Vertex> a) {
    std::vector<std::uint32_t> seen(g.vertex_count(), 0);
    std::vector<Vertex> queue;
    for (Vertex v : a) {
        if (!seen[v]) {
            seen[v] = 1;
            queue.push_back(v);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (Vertex y : g.neighbors(queue[head]))
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
    std::sort(queue.begin(), queue.end());
    return queue;
}

} // namespace treecount
