#include "treecount/oracle.hpp"

#include <random>
#include <sstream>

#include "treecount/counting.hpp"
#include "treecount/distance_algebra.hpp"
#include "treecount/errors.hpp"

namespace treecount {

namespace {

bool eval_at(const FormulaAst& f, Vertex x,
             const std::vector<std::vector<std::uint32_t>>& dist_of_param) {
    switch (f.kind) {
    case FormulaAst::Kind::Atom:
        return dist_of_param[f.atom.param - 1][x] == f.atom.k;
    case FormulaAst::Kind::Not:
        return !eval_at(f.kids[0], x, dist_of_param);
    case FormulaAst::Kind::And:
        return eval_at(f.kids[0], x, dist_of_param) && eval_at(f.kids[1], x, dist_of_param);
    case FormulaAst::Kind::Or:
        return eval_at(f.kids[0], x, dist_of_param) || eval_at(f.kids[1], x, dist_of_param);
    }
    return false;
}

std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

} // namespace

std::uint64_t brute_count(const Graph& g, const FormulaAst& f, std::span<const Vertex> params) {
    auto mentioned = formula_params(f);
    if (!mentioned.empty() && mentioned.back() > params.size())
        throw format_error("parameter a" + std::to_string(mentioned.back()) + " is unassigned");

    std::vector<std::vector<std::uint32_t>> dist_of_param(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i] >= g.vertex_count())
            throw format_error("parameter vertex " + std::to_string(params[i]) +
                               " out of range");
        dist_of_param[i] = distances_from(g, params[i]);
    }
    std::uint64_t count = 0;
    for (Vertex x = 0; x < g.vertex_count(); ++x)
        if (eval_at(f, x, dist_of_param)) ++count;
    return count;
}

bool admissible(const Graph& g, const FormulaAst& f) {
    if (!regular_degree(g)) return false;
    const std::uint64_t radius2 = 2 * interaction_radius(f);
    if (radius2 > kNoPath - 1) return false;
    return girth(g, static_cast<std::uint32_t>(radius2))
        .exceeds(static_cast<std::uint32_t>(radius2));
}

std::string VerifyReport::render() const {
    std::ostringstream out;
    out << "RESULT " << (pass() ? "pass" : "fail") << '\n';
    out << "graph: n=" << n << " degree=";
    if (degree) out << *degree;
    else out << "irregular";
    out << " girth" << girth_bound << '\n';
    out << "schema: " << schema << '\n';
    out << "trials: attempted=" << attempted << " admissible=" << admissible_trials
        << " passed=" << passed << '\n';
    out << "seed: " << seed << '\n';
    if (counterexample) {
        out << "COUNTEREXAMPLE params=";
        for (std::size_t i = 0; i < counterexample->params.size(); ++i) {
            if (i) out << ',';
            out << 'a' << (i + 1) << '=' << counterexample->params[i];
        }
        out << " brute=" << counterexample->brute << " poly=\"" << counterexample->poly
            << "\" eval=" << counterexample->evaluated << '\n';
    }
    return out.str();
}

VerifyReport verify(const Graph& g, const std::string& schema, std::uint64_t trials,
                    std::uint64_t seed) {
    FormulaAst f = parse_formula(schema);
    auto deg = regular_degree(g);
    if (!deg)
        throw domain_error("verify requires a regular graph");
    if (g.vertex_count() == 0)
        throw domain_error("verify requires a non-empty graph");

    VerifyReport report;
    report.n = g.vertex_count();
    report.degree = deg;
    report.schema = schema;
    report.seed = seed;
    report.attempted = trials;

    const std::uint64_t radius2 = 2 * interaction_radius(f);
    auto gr = girth(g, static_cast<std::uint32_t>(std::min<std::uint64_t>(radius2, kNoPath - 1)));
    switch (gr.kind) {
    case GirthResult::Kind::Exact: report.girth_bound = "=" + std::to_string(gr.value); break;
    case GirthResult::Kind::Acyclic: report.girth_bound = "=inf"; break;
    case GirthResult::Kind::AboveCutoff:
        report.girth_bound = ">" + std::to_string(gr.value);
        break;
    }
    const bool adm = gr.exceeds(static_cast<std::uint32_t>(radius2));
    if (!adm) return report; // all trials skipped as non-admissible

    auto mentioned = formula_params(f);
    const std::uint32_t nparams = mentioned.empty() ? 0 : mentioned.back();
    const Dnf dnf = to_dnf(f);
    const BigInt alpha = g.vertex_count();
    const BigInt beta = *deg;

    std::mt19937_64 rng(seed);
    std::vector<Vertex> tuple(nparams);
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (auto& v : tuple)
            v = static_cast<Vertex>(rng_below(rng, g.vertex_count()));
        ++report.admissible_trials;
        auto cfg = DistanceConfig::from_graph(g, tuple);
        Poly2 p = count_formula(cfg, dnf);
        BigInt expected = p.eval(alpha, beta);
        std::uint64_t actual = brute_count(g, f, tuple);
        if (expected == actual) {
            ++report.passed;
        } else if (!report.counterexample) {
            report.counterexample = Counterexample{tuple, actual, p.render(), expected};
        }
    }
    return report;
}

} // namespace treecount
