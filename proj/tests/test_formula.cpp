#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "treecount/errors.hpp"
#include "treecount/formula.hpp"
#include "treecount/oracle.hpp"
#include "treecount/treegen.hpp"

using namespace treecount;

namespace {

FormulaAst random_formula(std::mt19937_64& rng, std::uint32_t max_params, std::uint32_t max_k,
                          std::uint32_t depth) {
    auto atom = [&] {
        return FormulaAst::make_atom(
            Atom{static_cast<std::uint32_t>(tcsupport::rng_below(rng, max_k + 1)),
                 1 + static_cast<std::uint32_t>(tcsupport::rng_below(rng, max_params))});
    };
    if (depth == 0) return atom();
    switch (tcsupport::rng_below(rng, 4)) {
    case 0: return atom();
    case 1: return FormulaAst::make_not(random_formula(rng, max_params, max_k, depth - 1));
    case 2:
        return FormulaAst::make_and(random_formula(rng, max_params, max_k, depth - 1),
                                    random_formula(rng, max_params, max_k, depth - 1));
    default:
        return FormulaAst::make_or(random_formula(rng, max_params, max_k, depth - 1),
                                   random_formula(rng, max_params, max_k, depth - 1));
    }
}

} // namespace

TEST_CASE("parse builds the expected AST") {
    FormulaAst f = parse_formula("D3(x,a1) & !D2(x,a2)");
    REQUIRE(f.kind == FormulaAst::Kind::And);
    CHECK(f.kids[0] == FormulaAst::make_atom(Atom{3, 1}));
    REQUIRE(f.kids[1].kind == FormulaAst::Kind::Not);
    CHECK(f.kids[1].kids[0] == FormulaAst::make_atom(Atom{2, 2}));

    FormulaAst g = parse_formula("D1(x,a1) | D0(x,a1)");
    CHECK(g.kind == FormulaAst::Kind::Or);

    // Precedence: ! binds tighter than &, & tighter than |.
    FormulaAst h = parse_formula("D1(x,a1) & D2(x,a2) | D3(x,a3)");
    CHECK(h.kind == FormulaAst::Kind::Or);
    CHECK(h.kids[0].kind == FormulaAst::Kind::And);

    FormulaAst p = parse_formula("D1(x,a1) & (D2(x,a2) | D3(x,a3))");
    CHECK(p.kind == FormulaAst::Kind::And);
}

TEST_CASE("parse rejects bad syntax with positions") {
    CHECK_THROWS_WITH_AS(parse_formula("D-1(x,a1)"), doctest::Contains("distance constant"),
                         format_error);
    CHECK_THROWS_AS(parse_formula("D1(y,a1)"), format_error);
    CHECK_THROWS_AS(parse_formula("D1(x,a0)"), format_error);
    CHECK_THROWS_AS(parse_formula("D1(x,a1"), format_error);
    CHECK_THROWS_AS(parse_formula("D1(x,a1) &"), format_error);
    CHECK_THROWS_AS(parse_formula(""), format_error);
    CHECK_THROWS_WITH_AS(parse_formula("D1(x,a1) D2(x,a2)"), doctest::Contains("column"),
                         format_error);
}

TEST_CASE("render/parse round-trip") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        FormulaAst f = random_formula(rng, 3, 5, 4);
        std::string text = render_formula(f);
        FormulaAst g = parse_formula(text);
        CHECK(g == f);
        CHECK(render_formula(g) == text); // parse . render is stable
    }
}

TEST_CASE("formula_params and interaction_radius") {
    FormulaAst f = parse_formula("D3(x,a1)");
    CHECK(interaction_radius(f) == 4);
    CHECK(formula_params(f) == std::vector<std::uint32_t>{1});

    FormulaAst g = parse_formula("D1(x,a1) & !D2(x,a2)");
    CHECK(interaction_radius(g) == 5);
    CHECK(formula_params(g) == std::vector<std::uint32_t>{1, 2});

    // Occurrences count, not distinct atoms.
    CHECK(interaction_radius(parse_formula("D1(x,a1) | D1(x,a1)")) == 4);
}

TEST_CASE("to_dnf normal-form shapes") {
    Dnf single = to_dnf(parse_formula("D2(x,a1)"));
    REQUIRE(single.disjuncts.size() == 1);
    CHECK(single.disjuncts[0].positives == std::vector<Atom>{{2, 1}});
    CHECK(single.disjuncts[0].negatives.empty());

    Dnf contradiction = to_dnf(parse_formula("D1(x,a1) & !D1(x,a1)"));
    CHECK(contradiction.disjuncts.empty());

    Dnf distributed = to_dnf(parse_formula("(D1(x,a1) | D2(x,a1)) & D1(x,a2)"));
    REQUIRE(distributed.disjuncts.size() == 2);
    for (const auto& lc : distributed.disjuncts) {
        CHECK(lc.positives.size() == 2);
        CHECK(lc.negatives.empty());
    }

    // Conflicting positive constants on one parameter drop the disjunct.
    Dnf conflict = to_dnf(parse_formula("D1(x,a1) & D2(x,a1)"));
    CHECK(conflict.disjuncts.empty());

    // Duplicate literals collapse.
    Dnf dup = to_dnf(parse_formula("D1(x,a1) & D1(x,a1)"));
    REQUIRE(dup.disjuncts.size() == 1);
    CHECK(dup.disjuncts[0].positives.size() == 1);

    // Negation-normal form: !(A | B) = !A & !B.
    Dnf dm = to_dnf(parse_formula("!(D1(x,a1) | D2(x,a2))"));
    REQUIRE(dm.disjuncts.size() == 1);
    CHECK(dm.disjuncts[0].negatives.size() == 2);
}

TEST_CASE("to_dnf preserves semantics on concrete graphs") {
    std::mt19937_64 rng(17);
    Graph pet = named_graph("petersen");
    Graph forest = tcsupport::random_forest(20, 2, rng);
    for (int trial = 0; trial < 150; ++trial) {
        FormulaAst f = random_formula(rng, 3, 4, 3);
        Dnf dnf = to_dnf(f);
        for (const Graph* g : {&pet, &forest}) {
            std::vector<Vertex> params;
            for (int i = 0; i < 3; ++i)
                params.push_back(
                    static_cast<Vertex>(tcsupport::rng_below(rng, g->vertex_count())));
            std::uint64_t direct = brute_count(*g, f, params);
            std::uint64_t via_dnf =
                dnf.disjuncts.empty()
                    ? 0
                    : brute_count(*g, parse_formula(render_dnf(dnf)), params);
            CHECK(direct == via_dnf);
        }
    }
}
