#include "treecount/distance_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "treecount/errors.hpp"

namespace treecount {

DistanceConfig DistanceConfig::from_graph(const Graph& g, std::span<const Vertex> params) {
    for (Vertex v : params)
        if (v >= g.vertex_count())
            throw format_error("parameter vertex " + std::to_string(v) + " out of range");
    DistanceConfig cfg(static_cast<std::uint32_t>(params.size()));
    for (std::uint32_t i = 0; i < params.size(); ++i) {
        auto d = distances_from(g, params[i]);
        for (std::uint32_t j = i + 1; j < params.size(); ++j)
            cfg.set(i, j, d[params[j]] == kNoPath ? Dist::infinite() : Dist(d[params[j]]));
    }
    return cfg;
}

DistanceConfig DistanceConfig::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::uint32_t> n;
    std::optional<DistanceConfig> cfg;
    std::vector<bool> listed;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (!n) {
            std::uint32_t v = 0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || p != tok.data() + tok.size() || v == 0)
                throw format_error("line " + std::to_string(line_no) +
                                   ": expected parameter count");
            n = v;
            cfg.emplace(v);
            listed.assign(std::size_t{v} * v, false);
            continue;
        }
        std::string jtok, dtok;
        if (!(ls >> jtok >> dtok))
            throw format_error("line " + std::to_string(line_no) + ": expected 'i j d'");
        auto parse_idx = [&](const std::string& t) {
            std::uint32_t v = 0;
            auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc{} || p != t.data() + t.size() || v == 0 || v > *n)
                throw format_error("line " + std::to_string(line_no) + ": bad parameter index '" +
                                   t + "'");
            return v - 1;
        };
        std::uint32_t i = parse_idx(tok), j = parse_idx(jtok);
        if (i >= j)
            throw format_error("line " + std::to_string(line_no) + ": indices must satisfy i < j");
        if (listed[std::size_t{i} * *n + j])
            throw format_error("line " + std::to_string(line_no) + ": duplicate pair");
        listed[std::size_t{i} * *n + j] = true;
        if (dtok == "far") {
            cfg->set(i, j, Dist::infinite());
        } else {
            std::uint32_t d = 0;
            auto [p, ec] = std::from_chars(dtok.data(), dtok.data() + dtok.size(), d);
            if (ec != std::errc{} || p != dtok.data() + dtok.size())
                throw format_error("line " + std::to_string(line_no) + ": bad distance '" + dtok +
                                   "'");
            cfg->set(i, j, Dist(d));
        }
    }
    if (!cfg)
        throw format_error("empty distance configuration");
    return *cfg;
}

std::string DistanceConfig::render() const {
    std::ostringstream out;
    out << n_ << '\n';
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = i + 1; j < n_; ++j)
            if (at(i, j).finite())
                out << (i + 1) << ' ' << (j + 1) << ' ' << at(i, j).value() << '\n';
    return out.str();
}

DistanceConfig DistanceConfig::restrict(std::span<const std::uint32_t> idx) const {
    DistanceConfig out(static_cast<std::uint32_t>(idx.size()));
    for (std::uint32_t i = 0; i < idx.size(); ++i)
        for (std::uint32_t j = i + 1; j < idx.size(); ++j)
            out.set(i, j, at(idx[i], idx[j]));
    return out;
}

EllValues ell_values(const DistanceConfig& cfg, std::span<const std::uint32_t> ks) {
    if (ks.size() != cfg.size())
        throw format_error("expected " + std::to_string(cfg.size()) + " distance constants");
    EllValues out(cfg.size());
    for (std::uint32_t i = 0; i < cfg.size(); ++i)
        for (std::uint32_t j = i; j < cfg.size(); ++j) {
            if (!cfg.at(i, j).finite()) continue;
            out.set(i, j,
                    static_cast<std::int64_t>(ks[i]) + ks[j] - cfg.at(i, j).value());
        }
    return out;
}

std::uint32_t HullTree::node_of_label(std::uint32_t param) const {
    for (std::uint32_t v = 0; v < nodes_.size(); ++v)
        for (std::uint32_t l : nodes_[v].labels)
            if (l == param) return v;
    throw domain_error("parameter " + std::to_string(param + 1) + " is not in this hull class");
}

std::uint32_t HullTree::node_degree(std::uint32_t v) const {
    std::uint32_t deg = 0;
    for (const auto& e : edges_)
        if (e.a == v || e.b == v) ++deg;
    return deg;
}

void HullTree::finalize() {
    const std::size_t t = nodes_.size();
    dist_.assign(t * t, 0);
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(t);
    for (const auto& e : edges_) {
        adj[e.a].emplace_back(e.b, e.length);
        adj[e.b].emplace_back(e.a, e.length);
    }
    for (std::uint32_t root = 0; root < t; ++root) {
        std::vector<bool> seen(t, false);
        std::vector<std::uint32_t> stack{root};
        seen[root] = true;
        while (!stack.empty()) {
            std::uint32_t x = stack.back();
            stack.pop_back();
            for (auto [y, len] : adj[x])
                if (!seen[y]) {
                    seen[y] = true;
                    dist_[t * root + y] = dist_[t * root + x] + len;
                    stack.push_back(y);
                }
        }
    }
}

namespace {

std::string idx3(std::uint32_t i, std::uint32_t j, std::uint32_t k) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
           std::to_string(k + 1) + ")";
}

// Tree-metric validation over one finite class, indices into `mem`.
void validate_class(const DistanceConfig& cfg, const std::vector<std::uint32_t>& mem) {
    auto d = [&](std::uint32_t a, std::uint32_t b) {
        return static_cast<std::int64_t>(cfg.at(mem[a], mem[b]).value());
    };
    const std::uint32_t t = static_cast<std::uint32_t>(mem.size());
    for (std::uint32_t i = 0; i < t; ++i)
        for (std::uint32_t j = i + 1; j < t; ++j)
            for (std::uint32_t k = j + 1; k < t; ++k) {
                std::int64_t a = d(i, j), b = d(i, k), c = d(j, k);
                if (a > b + c || b > a + c || c > a + b)
                    throw domain_error("not a tree metric: triangle inequality fails for "
                                       "parameters " + idx3(mem[i], mem[j], mem[k]));
                if ((a + b + c) % 2 != 0)
                    throw domain_error("not a tree metric: parameters " +
                                       idx3(mem[i], mem[j], mem[k]) +
                                       " have odd perimeter (no integer tree realizes them)");
            }
    for (std::uint32_t i = 0; i < t; ++i)
        for (std::uint32_t j = i + 1; j < t; ++j)
            for (std::uint32_t k = j + 1; k < t; ++k)
                for (std::uint32_t l = k + 1; l < t; ++l) {
                    std::int64_t s1 = d(i, j) + d(k, l);
                    std::int64_t s2 = d(i, k) + d(j, l);
                    std::int64_t s3 = d(i, l) + d(j, k);
                    std::int64_t hi = std::max({s1, s2, s3});
                    if ((s1 == hi) + (s2 == hi) + (s3 == hi) < 2)
                        throw domain_error(
                            "not a tree metric: four-point condition fails for parameters (" +
                            std::to_string(mem[i] + 1) + "," + std::to_string(mem[j] + 1) + "," +
                            std::to_string(mem[k] + 1) + "," + std::to_string(mem[l] + 1) + ")");
                }
}

} // namespace

// Grants the insertion algorithm access to the tree internals.
struct HullTreeBuilder {
    HullTree tree;

    std::vector<HullTree::Node>& nodes() { return tree.nodes_; }
    std::vector<HullTree::Edge>& edges() { return tree.edges_; }
    void set_members(std::vector<std::uint32_t> m) { tree.members_ = std::move(m); }
    HullTree finish() {
        tree.finalize();
        return std::move(tree);
    }
};

namespace {

// Insertion-based realization of one validated class.
HullTree build_class(const DistanceConfig& cfg, const std::vector<std::uint32_t>& mem) {
    HullTreeBuilder builder;
    builder.set_members(mem);
    auto& tnodes = builder.nodes();
    auto& tedges = builder.edges();

    // Coincident parameters share one site.
    std::vector<std::vector<std::uint32_t>> sites; // original indices per site
    for (std::uint32_t m : mem) {
        bool merged = false;
        for (auto& s : sites)
            if (cfg.at(s.front(), m).value() == 0) {
                s.push_back(m);
                merged = true;
                break;
            }
        if (!merged) sites.push_back({m});
    }
    const std::uint32_t t = static_cast<std::uint32_t>(sites.size());
    auto d = [&](std::uint32_t a, std::uint32_t b) {
        return cfg.at(sites[a].front(), sites[b].front()).value();
    };

    std::vector<std::uint32_t> site_node(t);
    auto new_node = [&tnodes](std::vector<std::uint32_t> labels) {
        tnodes.push_back({std::move(labels)});
        return static_cast<std::uint32_t>(tnodes.size() - 1);
    };
    site_node[0] = new_node(sites[0]);

    // Tree path between nodes over the edges built so far.
    auto path_between = [&tnodes, &tedges](std::uint32_t from, std::uint32_t to) {
        std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(tnodes.size());
        for (std::uint32_t e = 0; e < tedges.size(); ++e) {
            adj[tedges[e].a].emplace_back(tedges[e].b, e);
            adj[tedges[e].b].emplace_back(tedges[e].a, e);
        }
        std::vector<std::int32_t> via(tnodes.size(), -1), via_edge(tnodes.size(), -1);
        std::vector<std::uint32_t> stack{from};
        via[from] = static_cast<std::int32_t>(from);
        while (!stack.empty()) {
            std::uint32_t x = stack.back();
            stack.pop_back();
            for (auto [y, e] : adj[x])
                if (via[y] < 0) {
                    via[y] = static_cast<std::int32_t>(x);
                    via_edge[y] = static_cast<std::int32_t>(e);
                    stack.push_back(y);
                }
        }
        std::vector<std::pair<std::uint32_t, std::uint32_t>> rev; // (node, edge used to reach it)
        for (std::uint32_t cur = to; cur != from;
             cur = static_cast<std::uint32_t>(via[cur]))
            rev.emplace_back(cur, static_cast<std::uint32_t>(via_edge[cur]));
        std::reverse(rev.begin(), rev.end());
        return rev;
    };

    for (std::uint32_t q = 1; q < t; ++q) {
        if (q == 1) {
            site_node[1] = new_node(sites[1]);
            tedges.push_back({site_node[0], site_node[1], d(0, 1)});
            continue;
        }
        // Attachment point: distance g from site 0 along the path to the
        // Gromov-product-maximizing inserted site.
        std::uint32_t g_best = 0, c_best = 1;
        for (std::uint32_t c = 1; c < q; ++c) {
            std::uint32_t g = (d(0, q) + d(0, c) - d(c, q)) / 2;
            if (g >= g_best) {
                g_best = g;
                c_best = c;
            }
        }
        std::uint32_t x;
        if (g_best == 0) {
            x = site_node[0];
        } else {
            auto path = path_between(site_node[0], site_node[c_best]);
            std::uint32_t walked = 0, prev = site_node[0];
            x = kNoPath;
            for (auto [node, eidx] : path) {
                const std::uint32_t len = tedges[eidx].length;
                if (walked + len < g_best) {
                    walked += len;
                    prev = node;
                    continue;
                }
                if (walked + len == g_best) {
                    x = node;
                } else {
                    // Split the edge at offset g_best - walked from prev.
                    const std::uint32_t off = g_best - walked;
                    std::uint32_t far_end = node;
                    x = new_node({});
                    tedges[eidx] = {prev, x, off};
                    tedges.push_back({x, far_end, len - off});
                }
                break;
            }
            if (x == kNoPath)
                throw std::logic_error("hull insertion walked past the attachment point");
        }
        const std::uint32_t stem = d(0, q) - g_best;
        if (stem == 0) {
            auto& labels = tnodes[x].labels;
            labels.insert(labels.end(), sites[q].begin(), sites[q].end());
            site_node[q] = x;
        } else {
            site_node[q] = new_node(sites[q]);
            tedges.push_back({x, site_node[q], stem});
        }
    }

    HullTree tree = builder.finish();
    for (std::uint32_t a = 0; a < t; ++a)
        for (std::uint32_t b = a + 1; b < t; ++b)
            if (tree.node_dist(site_node[a], site_node[b]) != d(a, b))
                throw std::logic_error("hull realization does not reproduce the input metric");
    for (std::uint32_t v = 0; v < tree.node_count(); ++v)
        if (tree.nodes()[v].labels.empty() && tree.node_degree(v) < 3)
            throw std::logic_error("hull realization produced a degree-2 branch vertex");
    return tree;
}

std::vector<std::vector<std::uint32_t>> finite_classes(const DistanceConfig& cfg) {
    const std::uint32_t n = cfg.size();
    std::vector<bool> assigned(n, false);
    std::vector<std::vector<std::uint32_t>> classes;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (assigned[i]) continue;
        std::vector<std::uint32_t> cls{i};
        assigned[i] = true;
        for (std::size_t head = 0; head < cls.size(); ++head)
            for (std::uint32_t j = 0; j < n; ++j)
                if (!assigned[j] && cfg.at(cls[head], j).finite()) {
                    assigned[j] = true;
                    cls.push_back(j);
                }
        std::sort(cls.begin(), cls.end());
        // Finite reachability must be transitive inside a class.
        for (std::uint32_t a : cls)
            for (std::uint32_t b : cls)
                if (!cfg.at(a, b).finite())
                    throw domain_error(
                        "inconsistent configuration: parameters " + std::to_string(a + 1) +
                        " and " + std::to_string(b + 1) +
                        " are joined through finite distances but listed as far");
        classes.push_back(std::move(cls));
    }
    return classes;
}

} // namespace

std::vector<HullTree> realize_hull(const DistanceConfig& cfg) {
    std::vector<HullTree> out;
    for (const auto& cls : finite_classes(cfg)) {
        validate_class(cfg, cls);
        out.push_back(build_class(cfg, cls));
    }
    return out;
}

namespace {

struct MergedSystem {
    bool empty = false;                      // coincident parameters with conflicting k
    std::vector<std::uint32_t> reps;         // one original index per merged group
    std::vector<std::uint32_t> ks;           // constant per group
};

MergedSystem merge_coincident(const DistanceConfig& cfg, std::span<const std::uint32_t> ks) {
    MergedSystem m;
    for (std::uint32_t i = 0; i < cfg.size(); ++i) {
        bool grouped = false;
        for (std::size_t gidx = 0; gidx < m.reps.size(); ++gidx) {
            if (cfg.at(m.reps[gidx], i).finite() && cfg.at(m.reps[gidx], i).value() == 0) {
                if (m.ks[gidx] != ks[i]) m.empty = true;
                grouped = true;
                break;
            }
        }
        if (!grouped) {
            m.reps.push_back(i);
            m.ks.push_back(ks[i]);
        }
    }
    return m;
}

} // namespace

CenterResult solve_center(const DistanceConfig& cfg, std::span<const std::uint32_t> ks) {
    if (ks.size() != cfg.size())
        throw format_error("expected " + std::to_string(cfg.size()) + " distance constants, got " +
                           std::to_string(ks.size()));
    if (cfg.size() == 0)
        throw format_error("need at least one parameter");

    CenterResult empty_result; // status Empty
    for (std::uint32_t i = 0; i < cfg.size(); ++i)
        for (std::uint32_t j = i + 1; j < cfg.size(); ++j)
            if (!cfg.at(i, j).finite()) return empty_result;

    auto merged = merge_coincident(cfg, ks);
    if (merged.empty) return empty_result;

    DistanceConfig mcfg = cfg.restrict(merged.reps);
    // Re-label the merged config 0..t-1 for the hull.
    const std::uint32_t t = mcfg.size();

    if (t == 1) {
        CenterResult r;
        r.status = CenterResult::Status::NonEmpty;
        r.level = merged.ks[0];
        r.hull_deg = 0;
        r.locus = CenterLocus{true, 0, 0, 0};
        auto trees = realize_hull(mcfg);
        r.hull = std::move(trees.front());
        return r;
    }

    std::int64_t twice_min = 0;
    bool first = true;
    for (std::uint32_t i = 0; i < t; ++i)
        for (std::uint32_t j = i + 1; j < t; ++j) {
            std::int64_t tw = static_cast<std::int64_t>(merged.ks[i]) + merged.ks[j] -
                              mcfg.at(i, j).value();
            if (tw < 0 || tw % 2 != 0) return empty_result;
            if (first || tw < twice_min) {
                twice_min = tw;
                first = false;
            }
        }
    const std::uint32_t level = static_cast<std::uint32_t>(twice_min / 2);
    for (std::uint32_t i = 0; i < t; ++i)
        if (merged.ks[i] < level) return empty_result;

    auto trees = realize_hull(mcfg);
    const HullTree& hull = trees.front();

    // Scan every integer position of the hull for the unique center with
    // dist(c, a_i) = k_i - level for all i.
    // Hull labels are positions in the merged config (0..t-1).
    std::vector<std::uint32_t> target(t), label_node(t);
    for (std::uint32_t i = 0; i < t; ++i) {
        target[i] = merged.ks[i] - level;
        label_node[i] = hull.node_of_label(i);
    }

    std::optional<CenterResult> found;
    auto consider = [&](CenterLocus locus, std::uint32_t deg,
                        auto&& dist_to) {
        for (std::uint32_t i = 0; i < t; ++i)
            if (dist_to(label_node[i]) != target[i]) return;
        if (found)
            throw std::logic_error("hull scan found two centers for one system");
        CenterResult r;
        r.status = CenterResult::Status::NonEmpty;
        r.level = level;
        r.hull_deg = deg;
        r.locus = locus;
        found = std::move(r);
    };

    for (std::uint32_t v = 0; v < hull.node_count(); ++v)
        consider(CenterLocus{true, v, 0, 0}, hull.node_degree(v),
                 [&](std::uint32_t x) { return hull.node_dist(v, x); });
    for (const auto& e : hull.edges())
        for (std::uint32_t off = 1; off < e.length; ++off)
            consider(CenterLocus{false, e.a, e.b, off}, 2, [&](std::uint32_t x) {
                return std::min(hull.node_dist(e.a, x) + off,
                                hull.node_dist(e.b, x) + (e.length - off));
            });

    if (!found) return empty_result;
    found->hull = std::move(trees.front());
    return *found;
}

bool closed_form_satisfiable(const DistanceConfig& cfg, std::span<const std::uint32_t> ks) {
    if (ks.size() != cfg.size())
        throw format_error("expected " + std::to_string(cfg.size()) + " distance constants");
    for (std::uint32_t i = 0; i < cfg.size(); ++i)
        for (std::uint32_t j = i + 1; j < cfg.size(); ++j)
            if (!cfg.at(i, j).finite()) return false;

    auto merged = merge_coincident(cfg, ks);
    if (merged.empty) return false;
    DistanceConfig mcfg = cfg.restrict(merged.reps);
    const auto& mk = merged.ks;
    const std::uint32_t t = mcfg.size();
    if (t == 1) return true;

    auto d = [&](std::uint32_t a, std::uint32_t b) {
        return static_cast<std::int64_t>(mcfg.at(a, b).value());
    };
    auto k = [&](std::uint32_t a) { return static_cast<std::int64_t>(mk[a]); };

    std::int64_t twice_min = 0;
    bool first = true;
    for (std::uint32_t i = 0; i < t; ++i)
        for (std::uint32_t j = i + 1; j < t; ++j) {
            std::int64_t tw = k(i) + k(j) - d(i, j);
            if (tw < 0 || tw % 2 != 0) return false;
            if (first || tw < twice_min) {
                twice_min = tw;
                first = false;
            }
        }

    // Condition (i), both orientations of every pair.
    for (std::uint32_t i = 0; i < t; ++i)
        for (std::uint32_t j = 0; j < t; ++j)
            if (i != j && k(i) > k(j) + d(i, j)) return false;

    // Condition (ii) for some level-minimizing pair in the (1,2) role.
    auto cond_ii = [&](std::uint32_t one, std::uint32_t two) {
        for (std::uint32_t i = 0; i < t; ++i) {
            const bool a = d(one, i) + k(two) < k(one) + d(two, i) &&
                           k(i) + d(one, two) == k(one) + d(two, i);
            const bool b = d(one, i) + k(two) >= k(one) + d(two, i) &&
                           k(i) + d(one, two) == k(two) + d(one, i);
            if (a == b) return false; // exactly one must hold
        }
        return true;
    };
    for (std::uint32_t i = 0; i < t; ++i)
        for (std::uint32_t j = 0; j < t; ++j)
            if (i != j && k(i) + k(j) - d(i, j) == twice_min && cond_ii(i, j))
                return true;
    return false;
}

} // namespace treecount
