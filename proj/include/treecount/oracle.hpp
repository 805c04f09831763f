#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "treecount/formula.hpp"
#include "treecount/graph.hpp"
#include "treecount/poly.hpp"

namespace treecount {

// |{x in V : f holds at x}| by direct evaluation over per-parameter BFS
// distances. params[i] is the vertex assigned to a_{i+1}; every parameter
// mentioned by f must be assigned.
std::uint64_t brute_count(const Graph& g, const FormulaAst& f, std::span<const Vertex> params);

// Conservative girth-sufficiency gate: g is regular and its girth exceeds
// twice the formula's interaction radius, so every ball the counting
// argument touches is acyclic and the symbolic counts are exact on g.
bool admissible(const Graph& g, const FormulaAst& f);

struct Counterexample {
    std::vector<Vertex> params;
    std::uint64_t brute = 0;
    std::string poly;
    BigInt evaluated;
};

struct VerifyReport {
    std::uint32_t n = 0;
    std::optional<std::uint32_t> degree;
    std::string girth_bound;
    std::string schema;
    std::uint64_t attempted = 0;
    std::uint64_t admissible_trials = 0;
    std::uint64_t passed = 0;
    std::uint64_t seed = 0;
    std::optional<Counterexample> counterexample;

    bool pass() const { return passed == admissible_trials; }

    // Line-oriented rendering: "RESULT pass|fail", counts, then an optional
    // COUNTEREXAMPLE block.
    std::string render() const;
};

// Samples `trials` parameter tuples uniformly (seeded, deterministic) and
// checks brute_count against the evaluated counting polynomial on every
// admissible trial; trials on an inadmissible (graph, formula) pair are
// skipped and counted as non-admissible.
VerifyReport verify(const Graph& g, const std::string& schema, std::uint64_t trials,
                    std::uint64_t seed);

} // namespace treecount
