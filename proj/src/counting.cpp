#include "treecount/counting.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "treecount/errors.hpp"

namespace treecount {

Poly2 count_positive(const DistanceConfig& cfg, std::span<const std::uint32_t> ks) {
    CenterResult c = solve_center(cfg, ks);
    if (!c.nonempty()) return {};
    if (c.level == 0) return Poly2::constant(1);
    // The polynomial has degree = level with binomial coefficients; past
    // this point it stops being representable in reasonable memory.
    if (c.level > 512)
        throw domain_error("level " + std::to_string(c.level) +
                           " too large for symbolic counting (max 512)");
    return (Poly2::t2() - Poly2::constant(c.hull_deg)) *
           pow(Poly2::t2() - Poly2::constant(1), c.level - 1);
}

namespace {

std::uint32_t max_param(const LiteralConjunction& lc) {
    std::uint32_t m = 0;
    for (const auto& a : lc.positives) m = std::max(m, a.param);
    for (const auto& a : lc.negatives) m = std::max(m, a.param);
    return m;
}

// Positive system for one inclusion-exclusion term: parameter -> constant,
// nullopt when two constants collide (empty set).
std::optional<std::map<std::uint32_t, std::uint32_t>>
positive_system(const std::vector<Atom>& positives) {
    std::map<std::uint32_t, std::uint32_t> sys;
    for (const auto& a : positives) {
        auto [it, fresh] = sys.emplace(a.param, a.k);
        if (!fresh && it->second != a.k) return std::nullopt;
    }
    return sys;
}

Poly2 count_system(const DistanceConfig& cfg,
                   const std::map<std::uint32_t, std::uint32_t>& sys) {
    if (sys.empty()) return Poly2::t1(); // the whole universe
    std::vector<std::uint32_t> idx, ks;
    for (auto [param, k] : sys) {
        idx.push_back(param - 1);
        ks.push_back(k);
    }
    return count_positive(cfg.restrict(idx), ks);
}

} // namespace

Poly2 count_conjunction(const DistanceConfig& cfg, const LiteralConjunction& lc) {
    if (std::uint32_t m = max_param(lc); m > cfg.size())
        throw format_error("configuration covers " + std::to_string(cfg.size()) +
                           " parameters but the formula mentions a" + std::to_string(m));
    if (lc.negatives.size() > kMaxNegatives)
        throw domain_error("too many negated atoms in one conjunction (max " +
                           std::to_string(kMaxNegatives) + ")");

    auto base = positive_system(lc.positives);
    if (!base) return {};
    for (const auto& a : lc.negatives) {
        auto it = base->find(a.param);
        if (it != base->end() && it->second == a.k) return {}; // both polarities
    }

    Poly2 acc;
    const std::size_t subsets = std::size_t{1} << lc.negatives.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        auto sys = *base;
        bool consistent = true;
        for (std::size_t b = 0; b < lc.negatives.size() && consistent; ++b) {
            if (!(mask & (std::size_t{1} << b))) continue;
            const Atom& a = lc.negatives[b];
            auto [it, fresh] = sys.emplace(a.param, a.k);
            if (!fresh && it->second != a.k) consistent = false;
        }
        if (!consistent) continue; // empty intersection contributes nothing
        Poly2 term = count_system(cfg, sys);
        if (std::popcount(mask) % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

Poly2 count_formula(const DistanceConfig& cfg, const Dnf& dnf) {
    if (dnf.disjuncts.size() > kMaxDisjuncts)
        throw domain_error("formula expands to " + std::to_string(dnf.disjuncts.size()) +
                           " disjuncts (max " + std::to_string(kMaxDisjuncts) + ")");
    if (!dnf.params.empty() && dnf.params.back() > cfg.size())
        throw format_error("configuration covers " + std::to_string(cfg.size()) +
                           " parameters but the formula mentions a" +
                           std::to_string(dnf.params.back()));

    Poly2 acc;
    const std::size_t subsets = std::size_t{1} << dnf.disjuncts.size();
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        LiteralConjunction merged;
        for (std::size_t b = 0; b < dnf.disjuncts.size(); ++b) {
            if (!(mask & (std::size_t{1} << b))) continue;
            const auto& lc = dnf.disjuncts[b];
            merged.positives.insert(merged.positives.end(), lc.positives.begin(),
                                    lc.positives.end());
            merged.negatives.insert(merged.negatives.end(), lc.negatives.begin(),
                                    lc.negatives.end());
        }
        for (auto* side : {&merged.positives, &merged.negatives}) {
            std::sort(side->begin(), side->end());
            side->erase(std::unique(side->begin(), side->end()), side->end());
        }
        Poly2 term = count_conjunction(cfg, merged);
        if (std::popcount(mask) % 2 == 1)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

namespace {

struct PairList {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs; // (i<j), lexicographic
};

PairList make_pairs(std::uint32_t n) {
    PairList pl;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            pl.pairs.emplace_back(i, j);
    return pl;
}

// Candidate row filter: triangle inequality on finite triples; a pair marked
// ">B" whose two companion legs are finite must be reachable above B; the
// four-point condition on all-finite quadruples.
bool realizable(const DistanceConfig& cfg, std::uint32_t bound) {
    const std::uint32_t n = cfg.size();
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            for (std::uint32_t k = j + 1; k < n; ++k) {
                Dist dij = cfg.at(i, j), dik = cfg.at(i, k), djk = cfg.at(j, k);
                int finite = dij.finite() + dik.finite() + djk.finite();
                if (finite == 3) {
                    std::int64_t a = dij.value(), b = dik.value(), c = djk.value();
                    if (a > b + c || b > a + c || c > a + b) return false;
                } else if (finite == 2) {
                    std::int64_t legs = 0;
                    if (!dij.finite()) legs = std::int64_t{dik.value()} + djk.value();
                    else if (!dik.finite()) legs = std::int64_t{dij.value()} + djk.value();
                    else legs = std::int64_t{dij.value()} + dik.value();
                    if (legs <= bound) return false;
                }
            }
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            for (std::uint32_t k = j + 1; k < n; ++k)
                for (std::uint32_t l = k + 1; l < n; ++l) {
                    if (!cfg.at(i, j).finite() || !cfg.at(i, k).finite() ||
                        !cfg.at(i, l).finite() || !cfg.at(j, k).finite() ||
                        !cfg.at(j, l).finite() || !cfg.at(k, l).finite())
                        continue;
                    std::int64_t s1 = std::int64_t{cfg.at(i, j).value()} + cfg.at(k, l).value();
                    std::int64_t s2 = std::int64_t{cfg.at(i, k).value()} + cfg.at(j, l).value();
                    std::int64_t s3 = std::int64_t{cfg.at(i, l).value()} + cfg.at(j, k).value();
                    std::int64_t hi = std::max({s1, s2, s3});
                    if ((s1 == hi) + (s2 == hi) + (s3 == hi) < 2) return false;
                }
    return true;
}

} // namespace

const PartitionTable::Row* PartitionTable::classify(const DistanceConfig& cfg) const {
    if (cfg.size() != params) return nullptr;
    auto pl = make_pairs(params);
    std::vector<Dist> key;
    key.reserve(pl.pairs.size());
    for (auto [i, j] : pl.pairs) {
        Dist d = cfg.at(i, j);
        key.push_back(d.finite() && d.value() <= bound ? d : Dist::infinite());
    }
    for (const auto& row : rows)
        if (row.pair_dist == key) return &row;
    return nullptr;
}

std::string PartitionTable::render() const {
    std::ostringstream out;
    auto pl = make_pairs(params);
    for (const auto& row : rows) {
        if (pl.pairs.empty()) {
            out << "-";
        } else {
            for (std::size_t p = 0; p < pl.pairs.size(); ++p) {
                auto [i, j] = pl.pairs[p];
                if (p) out << ',';
                out << 'd' << (i + 1) << (j + 1);
                if (row.pair_dist[p].finite())
                    out << '=' << row.pair_dist[p].value();
                else
                    out << '>' << bound;
            }
        }
        out << '\t' << row.poly.render() << '\n';
    }
    return out.str();
}

PartitionTable partition_table(const LiteralConjunction& schema) {
    std::vector<std::uint32_t> params;
    std::vector<std::uint32_t> maxc;
    for (const auto* side : {&schema.positives, &schema.negatives})
        for (const Atom& a : *side) {
            if (a.k > kMaxPartitionConstant)
                throw format_error("partition schema constant " + std::to_string(a.k) +
                                   " exceeds the guard (max " +
                                   std::to_string(kMaxPartitionConstant) + ")");
            if (a.param > maxc.size()) maxc.resize(a.param, 0);
            maxc[a.param - 1] = std::max(maxc[a.param - 1], a.k);
            params.push_back(a.param);
        }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    if (params.empty())
        throw format_error("partition schema needs at least one atom");
    const std::uint32_t n = static_cast<std::uint32_t>(params.size());
    if (n > kMaxPartitionParams)
        throw format_error("partition schema has " + std::to_string(n) +
                           " parameters (max " + std::to_string(kMaxPartitionParams) + ")");
    for (std::uint32_t i = 0; i < n; ++i)
        if (params[i] != i + 1)
            throw format_error("partition schema parameters must be contiguous from a1");

    std::uint32_t bound = 0;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            bound = std::max(bound, maxc[i] + maxc[j]);

    PartitionTable table;
    table.params = n;
    table.bound = bound;

    auto pl = make_pairs(n);
    DistanceConfig cfg(n);
    std::vector<Dist> key(pl.pairs.size());

    // Depth-first over pair assignments {0..B, ">B"}.
    auto rec = [&](auto&& self, std::size_t p) -> void {
        if (p == pl.pairs.size()) {
            if (!realizable(cfg, bound)) return;
            table.rows.push_back({key, count_conjunction(cfg, schema)});
            return;
        }
        auto [i, j] = pl.pairs[p];
        for (std::uint32_t v = 0; v <= bound + 1; ++v) {
            Dist d = v <= bound ? Dist(v) : Dist::infinite();
            cfg.set(i, j, d);
            key[p] = d;
            // Cheap prefix prune on complete triangles.
            bool ok = true;
            for (std::uint32_t k = 0; ok && k < n; ++k) {
                if (k == i || k == j) continue;
                Dist a = cfg.at(i, k), b = cfg.at(j, k);
                bool a_set = false, b_set = false;
                for (std::size_t q = 0; q < p; ++q) {
                    auto [x, y] = pl.pairs[q];
                    if ((x == std::min(i, k) && y == std::max(i, k))) a_set = true;
                    if ((x == std::min(j, k) && y == std::max(j, k))) b_set = true;
                }
                if (!a_set || !b_set) continue;
                int finite = d.finite() + a.finite() + b.finite();
                if (finite == 3) {
                    std::int64_t x = d.value(), y = a.value(), z = b.value();
                    if (x > y + z || y > x + z || z > x + y) ok = false;
                } else if (finite == 2) {
                    std::int64_t legs = 0;
                    if (!d.finite()) legs = std::int64_t{a.value()} + b.value();
                    else if (!a.finite()) legs = std::int64_t{d.value()} + b.value();
                    else legs = std::int64_t{d.value()} + a.value();
                    if (legs <= bound) ok = false;
                }
            }
            if (ok) self(self, p + 1);
        }
        cfg.set(i, j, Dist::infinite());
    };
    rec(rec, 0);
    return table;
}

} // namespace treecount
