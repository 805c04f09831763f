#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "treecount/counting.hpp"
#include "treecount/errors.hpp"
#include "treecount/oracle.hpp"
#include "treecount/treegen.hpp"

using namespace treecount;

namespace {

DistanceConfig pair_config(std::uint32_t d12) {
    DistanceConfig cfg(2);
    cfg.set(0, 1, Dist(d12));
    return cfg;
}

Poly2 t2_pow(std::uint32_t e) { return pow(Poly2::t2(), e); }
Poly2 t2_minus(int c) { return Poly2::t2() - Poly2::constant(c); }

std::vector<std::uint32_t> ks(std::initializer_list<std::uint32_t> v) { return v; }

} // namespace

TEST_CASE("poly arithmetic and leading degree") {
    Poly2 p = Poly2::monomial(2, 1, 1) - Poly2::monomial(1, 3, 1); // t1^2*t2 - t1*t2^3
    CHECK(p.leading() == PairDegree{2, 1});

    Poly2 q = Poly2::t2() * pow(t2_minus(1), 2);
    CHECK(q.eval(10, 3) == 12);

    CHECK((q - q).is_zero());
    CHECK((q + (-q)).is_zero());
    CHECK_THROWS_AS(Poly2().leading(), domain_error);

    // Ring laws, spot-checked.
    Poly2 a = t2_minus(2) * Poly2::t1() + Poly2::constant(7);
    Poly2 b = t2_pow(2) - Poly2::t1();
    CHECK(a * b == b * a);
    CHECK((a + b) * q == a * q + b * q);
    CHECK(a * (b * q) == (a * b) * q);
}

TEST_CASE("poly render and parse") {
    Poly2 q = t2_pow(2) - Poly2::constant(3) * Poly2::t2() + Poly2::constant(2);
    CHECK(q.render() == "t2^2 - 3*t2 + 2");
    CHECK(Poly2::parse("t2^2 - 3*t2 + 2") == q);

    CHECK(Poly2().render() == "0");
    CHECK(Poly2::parse("0").is_zero());
    CHECK((Poly2::t1() - Poly2::t2()).render() == "t1 - t2");
    CHECK(Poly2::parse("t1*t2^2").leading() == PairDegree{1, 2});
    CHECK(Poly2::parse("-2*t1^2*t2 + 1").render() == "-2*t1^2*t2 + 1");
    CHECK(Poly2::parse(" t1 -  t2 ") == Poly2::t1() - Poly2::t2());

    CHECK_THROWS_AS(Poly2::parse("t3"), format_error);
    CHECK_THROWS_AS(Poly2::parse("t1 t2"), format_error);
    CHECK_THROWS_AS(Poly2::parse(""), format_error);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        Poly2 r;
        for (int t = 0; t < 4; ++t)
            r += Poly2::monomial(static_cast<std::uint32_t>(tcsupport::rng_below(rng, 3)),
                                 static_cast<std::uint32_t>(tcsupport::rng_below(rng, 4)),
                                 static_cast<std::int64_t>(tcsupport::rng_below(rng, 9)) - 4);
        CHECK(Poly2::parse(r.render()) == r);
    }
}

TEST_CASE("count_positive: base cases") {
    DistanceConfig one(1);
    CHECK(count_positive(one, ks({3})) == Poly2::t2() * pow(t2_minus(1), 2));
    CHECK(count_positive(one, ks({0})) == Poly2::constant(1));

    CHECK(count_positive(pair_config(5), ks({2, 3})) == Poly2::constant(1));
    CHECK(count_positive(pair_config(2), ks({2, 2})) == t2_minus(2));
    CHECK(count_positive(pair_config(3), ks({1, 1})).is_zero());
    CHECK(count_positive(pair_config(0), ks({1, 1})) == Poly2::t2());
}

TEST_CASE("count_positive matches the closed forms for two parameters") {
    // For distinct parameters: 1 at the sum, (t2-1)^min at the difference,
    // (t2-2)(t2-1)^(l-1) between (matching parity), 0 everywhere else.
    for (std::uint32_t k1 = 0; k1 <= 6; ++k1)
        for (std::uint32_t k2 = 0; k2 <= 6; ++k2)
            for (std::uint32_t d = 1; d <= k1 + k2 + 2; ++d) {
                Poly2 got = count_positive(pair_config(d), ks({k1, k2}));
                const std::uint32_t lo = std::min(k1, k2), hi = std::max(k1, k2);
                Poly2 want;
                if (d == k1 + k2)
                    want = Poly2::constant(1);
                else if (d == hi - lo && lo > 0)
                    want = pow(t2_minus(1), lo);
                else if (d > hi - lo && d < k1 + k2 && (k1 + k2 - d) % 2 == 0)
                    want = t2_minus(2) * pow(t2_minus(1), (k1 + k2 - d) / 2 - 1);
                CHECK(got == want);
            }
}

TEST_CASE("count_conjunction handles negated atoms") {
    LiteralConjunction pos_neg{{Atom{1, 1}}, {Atom{1, 2}}};
    CHECK(count_conjunction(pair_config(2), pos_neg) == t2_minus(1));

    LiteralConjunction neg_only{{}, {Atom{1, 1}}};
    DistanceConfig one(1);
    Poly2 p = count_conjunction(one, neg_only);
    CHECK(p == Poly2::t1() - Poly2::t2());
    CHECK(p.eval(10, 3) == 7); // petersen numbers

    LiteralConjunction not_d0{{}, {Atom{0, 1}}};
    CHECK(count_conjunction(one, not_d0) == Poly2::t1() - Poly2::constant(1));

    // Both polarities of one atom: empty.
    LiteralConjunction clash{{Atom{1, 1}}, {Atom{1, 1}}};
    CHECK(count_conjunction(one, clash).is_zero());

    // A negated atom at an unrelated far parameter changes nothing.
    LiteralConjunction far_neg{{Atom{2, 1}}, {Atom{3, 2}}};
    DistanceConfig far(2);
    CHECK(count_conjunction(far, far_neg) == Poly2::t2() * t2_minus(1));
}

TEST_CASE("count_formula over unions") {
    DistanceConfig one(1);
    auto poly_of = [&](const char* text, const DistanceConfig& cfg) {
        return count_formula(cfg, to_dnf(parse_formula(text)));
    };

    CHECK(poly_of("D1(x,a1)", one) == Poly2::t2());
    CHECK(poly_of("D1(x,a1) | D1(x,a1)", one) == Poly2::t2());
    CHECK(poly_of("D1(x,a1) | D2(x,a1)", one) == t2_pow(2));
    CHECK(poly_of("D1(x,a1) & !D1(x,a1)", one).is_zero());

    // Overlapping disjuncts: union against a contained intersection.
    Poly2 u = poly_of("D1(x,a1) | (D1(x,a1) & D1(x,a2))", pair_config(2));
    CHECK(u == Poly2::t2());

    Graph heawood = named_graph("heawood");
    std::vector<Vertex> params{0};
    auto cfg1 = DistanceConfig::from_graph(heawood, params);
    CHECK(poly_of("D1(x,a1) | D2(x,a1)", cfg1).eval(14, 3) == 9);
    CHECK(brute_count(heawood, parse_formula("D1(x,a1) | D2(x,a1)"), params) == 9);
}

TEST_CASE("count_formula guard on disjunct blowup") {
    std::string wide;
    for (int i = 0; i < 21; ++i) {
        if (i) wide += " | ";
        wide += "D" + std::to_string(i) + "(x,a1)";
    }
    DistanceConfig one(1);
    CHECK_THROWS_WITH_AS(count_formula(one, to_dnf(parse_formula(wide))),
                         doctest::Contains("disjuncts"), domain_error);
}

TEST_CASE("inclusion-exclusion consistency for conjunction pairs") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 120; ++trial) {
        std::uint32_t n = 10 + static_cast<std::uint32_t>(tcsupport::rng_below(rng, 14));
        Graph tree = tcsupport::random_tree(n, rng);
        std::vector<Vertex> params;
        for (int i = 0; i < 3; ++i)
            params.push_back(static_cast<Vertex>(tcsupport::rng_below(rng, n)));
        auto cfg = DistanceConfig::from_graph(tree, params);

        auto lit = [&](std::uint32_t param) {
            return "D" + std::to_string(tcsupport::rng_below(rng, 4)) + "(x,a" +
                   std::to_string(param) + ")";
        };
        std::string c1 = lit(1) + " & " + lit(2);
        std::string c2 = lit(2) + " & " + lit(3);

        Poly2 pc1 = count_formula(cfg, to_dnf(parse_formula(c1)));
        Poly2 pc2 = count_formula(cfg, to_dnf(parse_formula(c2)));
        Poly2 por = count_formula(cfg, to_dnf(parse_formula("(" + c1 + ") | (" + c2 + ")")));
        Poly2 pand = count_formula(cfg, to_dnf(parse_formula("(" + c1 + ") & (" + c2 + ")")));
        CHECK(por + pand == pc1 + pc2);
    }
}

TEST_CASE("counting polynomials are linear in the universe variable") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        std::uint32_t n = 12 + static_cast<std::uint32_t>(tcsupport::rng_below(rng, 10));
        Graph tree = tcsupport::random_tree(n, rng);
        std::vector<Vertex> params;
        for (int i = 0; i < 3; ++i)
            params.push_back(static_cast<Vertex>(tcsupport::rng_below(rng, n)));
        auto cfg = DistanceConfig::from_graph(tree, params);
        std::string text;
        for (int i = 0; i < 3; ++i) {
            if (i) text += tcsupport::rng_below(rng, 2) ? " & " : " | ";
            if (tcsupport::rng_below(rng, 2)) text += "!";
            text += "D" + std::to_string(tcsupport::rng_below(rng, 4)) + "(x,a" +
                    std::to_string(1 + tcsupport::rng_below(rng, 3)) + ")";
        }
        Poly2 p = count_formula(cfg, to_dnf(parse_formula(text)));
        if (!p.is_zero())
            CHECK(p.leading().first <= 1);
    }
}

// The central exactness property: on a tree with full interior degree the
// polynomial evaluated at (|V|, d) is the exact count.
TEST_CASE("polynomial counts are exact on regular-interior trees") {
    std::mt19937_64 rng(43);
    auto world = tcsupport::regular_tree(3, 10); // 3070 vertices
    const Graph& g = world.graph;
    const BigInt alpha = g.vertex_count();
    const BigInt beta = 3;

    // Parameters stay within radius 5 of the root so every ball the count
    // touches has full degree.
    auto depth = distances_from(g, world.params[0]);
    std::vector<Vertex> core;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (depth[v] <= 5) core.push_back(v);

    int nonzero = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        const std::uint64_t atoms = 1 + tcsupport::rng_below(rng, 3);
        for (std::uint64_t i = 0; i < atoms; ++i) {
            if (i) text += tcsupport::rng_below(rng, 2) ? " & " : " | ";
            if (tcsupport::rng_below(rng, 3) == 0) text += "!";
            text += "D" + std::to_string(tcsupport::rng_below(rng, 5)) + "(x,a" +
                    std::to_string(1 + tcsupport::rng_below(rng, atoms)) + ")";
        }
        FormulaAst f = parse_formula(text);
        auto mentioned = formula_params(f);
        std::vector<Vertex> params;
        for (std::uint32_t i = 0; i < mentioned.back(); ++i)
            params.push_back(core[tcsupport::rng_below(rng, core.size())]);

        auto cfg = DistanceConfig::from_graph(g, params);
        Poly2 p = count_formula(cfg, to_dnf(f));
        std::uint64_t brute = brute_count(g, f, params);
        CHECK(p.eval(alpha, beta) == brute);
        if (brute > 0) ++nonzero;
    }
    CHECK(nonzero > 50);
}

TEST_CASE("partition_table: two-parameter tables") {
    auto schema = [](const char* text) {
        auto dnf = to_dnf(parse_formula(text));
        REQUIRE(dnf.disjuncts.size() == 1);
        return dnf.disjuncts.front();
    };

    PartitionTable t1 = partition_table(schema("D1(x,a1) & D1(x,a2)"));
    CHECK(t1.bound == 2);
    REQUIRE(t1.rows.size() == 4);
    CHECK(t1.rows[0].pair_dist == std::vector<Dist>{Dist(0)});
    CHECK(t1.rows[0].poly == Poly2::t2());
    CHECK(t1.rows[1].poly.is_zero());
    CHECK(t1.rows[2].poly == Poly2::constant(1));
    CHECK(t1.rows[3].pair_dist == std::vector<Dist>{Dist::infinite()});
    CHECK(t1.rows[3].poly.is_zero());

    PartitionTable t2 = partition_table(schema("D2(x,a1) & D2(x,a2)"));
    CHECK(t2.bound == 4);
    REQUIRE(t2.rows.size() == 6);
    CHECK(t2.rows[0].poly == Poly2::t2() * t2_minus(1)); // coincident parameters
    CHECK(t2.rows[1].poly.is_zero());
    CHECK(t2.rows[2].poly == t2_minus(2));
    CHECK(t2.rows[3].poly.is_zero());
    CHECK(t2.rows[4].poly == Poly2::constant(1));
    CHECK(t2.rows[5].poly.is_zero());

    PartitionTable single = partition_table(schema("D1(x,a1)"));
    REQUIRE(single.rows.size() == 1);
    CHECK(single.rows[0].poly == Poly2::t2());

    CHECK_THROWS_AS(partition_table(schema("D9(x,a1)")), format_error);
    CHECK_THROWS_AS(
        partition_table(schema("D1(x,a1)&D1(x,a2)&D1(x,a3)&D1(x,a4)&D1(x,a5)")),
        format_error);
    CHECK_THROWS_AS(partition_table(schema("D1(x,a2)")), format_error); // gap in indices
}

TEST_CASE("partition rows drop unrealizable patterns") {
    auto dnf = to_dnf(parse_formula("D1(x,a1) & D1(x,a2) & D1(x,a3)"));
    PartitionTable t = partition_table(dnf.disjuncts.front());
    CHECK(t.bound == 2);
    for (const auto& row : t.rows) {
        auto d12 = row.pair_dist[0], d13 = row.pair_dist[1], d23 = row.pair_dist[2];
        if (d12.finite() && d13.finite() && d23.finite()) {
            CHECK(d12.value() <= d13.value() + d23.value());
            CHECK(d13.value() <= d12.value() + d23.value());
            CHECK(d23.value() <= d12.value() + d13.value());
        }
        if (!d23.finite() && d12.finite() && d13.finite())
            CHECK(d12.value() + d13.value() > t.bound);
    }
    // The all-far row survives; a pattern boxed in by two short legs cannot.
    std::vector<Dist> all_far{Dist::infinite(), Dist::infinite(), Dist::infinite()};
    bool has_all_far = false, has_boxed = false;
    for (const auto& row : t.rows) {
        if (row.pair_dist == all_far) has_all_far = true;
        if (row.pair_dist == std::vector<Dist>{Dist(1), Dist(1), Dist::infinite()})
            has_boxed = true;
    }
    CHECK(has_all_far);
    CHECK(!has_boxed);
}

TEST_CASE("partition classification is exhaustive and sound on a tree") {
    std::mt19937_64 rng(47);
    auto world = tcsupport::regular_tree(3, 9);
    const Graph& g = world.graph;
    auto depth = distances_from(g, world.params[0]);
    std::vector<Vertex> core;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (depth[v] <= 4) core.push_back(v);

    for (const char* text : {"D1(x,a1) & D1(x,a2)", "D2(x,a1) & !D1(x,a2)",
                             "D2(x,a1) & D2(x,a2) & D1(x,a3)"}) {
        auto dnf = to_dnf(parse_formula(text));
        PartitionTable table = partition_table(dnf.disjuncts.front());
        FormulaAst f = parse_formula(text);
        auto mentioned = formula_params(f);
        for (int trial = 0; trial < 400; ++trial) {
            std::vector<Vertex> params;
            for (std::uint32_t i = 0; i < mentioned.back(); ++i)
                params.push_back(core[tcsupport::rng_below(rng, core.size())]);
            auto cfg = DistanceConfig::from_graph(g, params);
            const auto* row = table.classify(cfg);
            REQUIRE(row != nullptr);
            CHECK(row->poly.eval(g.vertex_count(), 3) == brute_count(g, f, params));
        }
    }
}
