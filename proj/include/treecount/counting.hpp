#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treecount/distance_algebra.hpp"
#include "treecount/formula.hpp"
#include "treecount/poly.hpp"

namespace treecount {

// Exact size of {x : dist(x, a_i) = k_i for all i} as a polynomial in t1
// (universe size) and t2 (regularity degree): zero when the system is
// unsatisfiable, 1 when the level is 0, otherwise (t2 - m)(t2 - 1)^(l-1).
Poly2 count_positive(const DistanceConfig& cfg, std::span<const std::uint32_t> ks);

// Inclusion-exclusion over the negated atoms. cfg row/column i corresponds
// to parameter a_{i+1} and must cover every parameter mentioned.
Poly2 count_conjunction(const DistanceConfig& cfg, const LiteralConjunction& lc);

// Size of the union of the disjuncts, by inclusion-exclusion over disjunct
// subsets (contradictory merges contribute zero).
inline constexpr std::size_t kMaxDisjuncts = 20;
inline constexpr std::size_t kMaxNegatives = 20;
Poly2 count_formula(const DistanceConfig& cfg, const Dnf& dnf);

// Definable partition of parameter space for a conjunction schema: every
// assignment of pair distances in {0..B} ∪ {">B"} that is realizable as a
// tree metric, with its counting polynomial. B is the largest pairwise sum
// of constants, beyond which all configurations count alike.
struct PartitionTable {
    std::uint32_t params = 0;
    std::uint32_t bound = 0; // B
    struct Row {
        std::vector<Dist> pair_dist; // flattened (i<j); infinite encodes ">B"
        Poly2 poly;
    };
    std::vector<Row> rows;

    // The row a concrete configuration falls into (distances above the
    // bound clamp to ">B"), or nullptr when no realizable row matches.
    const Row* classify(const DistanceConfig& cfg) const;

    std::string render() const;
};

inline constexpr std::uint32_t kMaxPartitionParams = 4;
inline constexpr std::uint32_t kMaxPartitionConstant = 8;
PartitionTable partition_table(const LiteralConjunction& schema);

} // namespace treecount
