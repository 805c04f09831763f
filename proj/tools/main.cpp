#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "treecount/counting.hpp"
#include "treecount/distance_algebra.hpp"
#include "treecount/errors.hpp"
#include "treecount/formula.hpp"
#include "treecount/graph.hpp"
#include "treecount/oracle.hpp"
#include "treecount/poly.hpp"
#include "treecount/ranks.hpp"
#include "treecount/treegen.hpp"

namespace tc = treecount;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw tc::format_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& contents) {
    if (path.empty()) {
        std::cout << contents;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw tc::format_error("cannot write '" + path + "'");
    out << contents;
}

std::uint64_t parse_u64(const std::string& tok, const char* what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw tc::format_error(std::string("bad ") + what + " '" + tok + "'");
    return v;
}

std::vector<tc::Vertex> parse_vertex_list(const std::string& text, const tc::Graph& g) {
    std::vector<tc::Vertex> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string tok = text.substr(pos, comma - pos);
        if (!tok.empty()) {
            std::uint64_t v = parse_u64(tok, "vertex id");
            if (v >= g.vertex_count())
                throw tc::format_error("vertex " + tok + " out of range (n=" +
                                       std::to_string(g.vertex_count()) + ")");
            out.push_back(static_cast<tc::Vertex>(v));
        }
        pos = comma + 1;
    }
    return out;
}

// "a1=V,a2=V,..." covering exactly a1..ap for the formula's parameters.
std::vector<tc::Vertex> parse_param_assignment(const std::string& text, const tc::FormulaAst& f,
                                               const tc::Graph& g) {
    auto mentioned = tc::formula_params(f);
    const std::uint32_t pmax = mentioned.empty() ? 0 : mentioned.back();
    std::vector<std::optional<tc::Vertex>> slots(pmax);
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string tok = text.substr(pos, comma - pos);
        pos = comma + 1;
        if (tok.empty()) continue;
        std::size_t eq = tok.find('=');
        if (eq == std::string::npos || tok[0] != 'a')
            throw tc::format_error("bad parameter assignment '" + tok + "' (want aN=V)");
        std::uint64_t idx = parse_u64(tok.substr(1, eq - 1), "parameter index");
        std::uint64_t v = parse_u64(tok.substr(eq + 1), "vertex id");
        if (idx == 0 || idx > pmax)
            throw tc::format_error("parameter a" + std::to_string(idx) +
                                   " is not mentioned by the formula");
        if (v >= g.vertex_count())
            throw tc::format_error("vertex " + std::to_string(v) + " out of range (n=" +
                                   std::to_string(g.vertex_count()) + ")");
        if (slots[idx - 1])
            throw tc::format_error("parameter a" + std::to_string(idx) + " assigned twice");
        slots[idx - 1] = static_cast<tc::Vertex>(v);
    }
    std::vector<tc::Vertex> out(pmax);
    for (std::uint32_t i = 0; i < pmax; ++i) {
        if (!slots[i])
            throw tc::format_error("parameter a" + std::to_string(i + 1) + " is unassigned");
        out[i] = *slots[i];
    }
    return out;
}

tc::LiteralConjunction schema_conjunction(const std::string& text) {
    auto dnf = tc::to_dnf(tc::parse_formula(text));
    if (dnf.disjuncts.size() != 1)
        throw tc::format_error("schema must be a consistent conjunction of literals");
    return dnf.disjuncts.front();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact counting of distance-definable sets on regular graphs of large girth"};
    app.require_subcommand(1);
    int exit_code = 0;

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph file");
    gen->require_subcommand(1);
    struct {
        std::uint32_t degree = 3, lifts = 1;
        std::string out;
    } glc;
    auto* gen_lc = gen->add_subcommand("lifted-complete", "iterated lift of K_{d+1}");
    gen_lc->add_option("--degree", glc.degree, "regularity degree d (>= 2)")->required();
    gen_lc->add_option("--lifts", glc.lifts, "number of lift applications")->required();
    gen_lc->add_option("-o,--out", glc.out, "output file (default stdout)");
    gen_lc->callback([&] {
        write_output(glc.out, tc::save_graph(tc::gen_lifted_complete(glc.degree, glc.lifts)));
    });

    struct {
        std::uint32_t n = 0, degree = 0, min_girth = 3;
        std::uint64_t seed = 0;
        std::string out;
    } grr;
    auto* gen_rr = gen->add_subcommand("random-regular", "random d-regular graph of given girth");
    gen_rr->add_option("--n", grr.n, "vertex count")->required();
    gen_rr->add_option("--degree", grr.degree, "regularity degree")->required();
    gen_rr->add_option("--min-girth", grr.min_girth, "required girth lower bound")->required();
    gen_rr->add_option("--seed", grr.seed, "PRNG seed")->required();
    gen_rr->add_option("-o,--out", grr.out, "output file (default stdout)");
    gen_rr->callback([&] {
        write_output(grr.out, tc::save_graph(tc::gen_random_regular(grr.n, grr.degree,
                                                                    grr.min_girth, grr.seed)));
    });

    struct {
        std::string name, out;
    } gn;
    auto* gen_named = gen->add_subcommand("named", "built-in fixture graph");
    gen_named->add_option("--name", gn.name,
                          "petersen|heawood|k3|k4|k5|path_N|cycle_N")->required();
    gen_named->add_option("-o,--out", gn.out, "output file (default stdout)");
    gen_named->callback([&] { write_output(gn.out, tc::save_graph(tc::named_graph(gn.name))); });

    // girth
    struct {
        std::string file;
        std::optional<std::uint32_t> cutoff;
    } gi;
    auto* girth_cmd = app.add_subcommand("girth", "shortest cycle length of a graph file");
    girth_cmd->add_option("file", gi.file, "graph file")->required();
    girth_cmd->add_option("--cutoff", gi.cutoff, "only resolve girth up to this bound");
    girth_cmd->callback([&] {
        auto g = tc::load_graph(read_file(gi.file));
        std::cout << tc::girth(g, gi.cutoff).to_string() << '\n';
    });

    // lift
    struct {
        std::string file, out;
    } li;
    auto* lift_cmd = app.add_subcommand("lift", "lift of a graph file");
    lift_cmd->add_option("file", li.file, "graph file")->required();
    lift_cmd->add_option("-o,--out", li.out, "output file")->required();
    lift_cmd->callback([&] {
        write_output(li.out, tc::save_graph(tc::lift(tc::load_graph(read_file(li.file)))));
    });

    // count
    struct {
        std::string graph, formula, params;
    } co;
    auto* count_cmd = app.add_subcommand("count", "brute count + polynomial on a concrete graph");
    count_cmd->add_option("--graph", co.graph, "graph file")->required();
    count_cmd->add_option("--formula", co.formula, "formula over x and a1..aN")->required();
    count_cmd->add_option("--params", co.params, "assignment a1=V,a2=V,...")->required();
    count_cmd->callback([&] {
        auto g = tc::load_graph(read_file(co.graph));
        auto f = tc::parse_formula(co.formula);
        auto params = parse_param_assignment(co.params, f, g);
        std::uint64_t brute = tc::brute_count(g, f, params);
        auto cfg = tc::DistanceConfig::from_graph(g, params);
        tc::Poly2 p = tc::count_formula(cfg, tc::to_dnf(f));
        std::cout << "count: " << brute << '\n';
        std::cout << "poly: " << p.render() << '\n';
        if (auto d = tc::regular_degree(g))
            std::cout << "eval: " << p.eval(g.vertex_count(), *d) << '\n';
        else
            std::cout << "eval: n/a (graph not regular)\n";
        std::cout << "admissible: " << (tc::admissible(g, f) ? "yes" : "no") << '\n';
    });

    // poly
    struct {
        std::string config, formula;
    } po;
    auto* poly_cmd = app.add_subcommand("poly", "counting polynomial from a distance config");
    poly_cmd->add_option("--config", po.config, "distance configuration file")->required();
    poly_cmd->add_option("--formula", po.formula, "formula over x and a1..aN")->required();
    poly_cmd->callback([&] {
        auto cfg = tc::DistanceConfig::parse(read_file(po.config));
        if (cfg.size() > 8)
            throw tc::format_error("configuration has " + std::to_string(cfg.size()) +
                                   " parameters (CLI guard: 8)");
        auto f = tc::parse_formula(po.formula);
        std::cout << tc::count_formula(cfg, tc::to_dnf(f)).render() << '\n';
    });

    // partition
    struct {
        std::string schema;
    } pa;
    auto* part_cmd = app.add_subcommand("partition", "definable partition table for a schema");
    part_cmd->add_option("--schema", pa.schema, "conjunction of literals over a1..aN")->required();
    part_cmd->callback([&] {
        std::cout << tc::partition_table(schema_conjunction(pa.schema)).render();
    });

    // rank
    struct {
        std::string poly, graph, tuple, base;
    } ra;
    auto* rank_cmd = app.add_subcommand("rank", "Morley rank as w*m+n");
    rank_cmd->add_option("--poly", ra.poly, "counting polynomial text");
    rank_cmd->add_option("--graph", ra.graph, "graph file (with --tuple)");
    rank_cmd->add_option("--tuple", ra.tuple, "tuple vertices v,v,...");
    rank_cmd->add_option("--base", ra.base, "base-set vertices v,v,...");
    rank_cmd->callback([&] {
        if (!ra.poly.empty()) {
            std::cout << tc::render_ordinal(tc::rank_from_poly(tc::Poly2::parse(ra.poly)))
                      << '\n';
            return;
        }
        if (ra.graph.empty() || ra.tuple.empty())
            throw tc::format_error("rank needs either --poly or --graph with --tuple");
        auto g = tc::load_graph(read_file(ra.graph));
        auto tuple = parse_vertex_list(ra.tuple, g);
        auto base = parse_vertex_list(ra.base, g);
        std::cout << tc::render_ordinal(tc::tuple_rank(g, tuple, base)) << '\n';
    });

    // indep
    struct {
        std::string graph, a, b, c;
    } in;
    auto* indep_cmd = app.add_subcommand("indep", "path-through-C independence test");
    indep_cmd->add_option("--graph", in.graph, "graph file")->required();
    indep_cmd->add_option("--A", in.a, "vertices v,v,...")->required();
    indep_cmd->add_option("--B", in.b, "vertices v,v,...")->required();
    indep_cmd->add_option("--C", in.c, "vertices v,v,... (may be empty)");
    indep_cmd->callback([&] {
        auto g = tc::load_graph(read_file(in.graph));
        bool ind = tc::is_independent(g, parse_vertex_list(in.a, g), parse_vertex_list(in.b, g),
                                      parse_vertex_list(in.c, g));
        std::cout << (ind ? "yes" : "no") << '\n';
    });

    // verify
    struct {
        std::string graph, schema;
        std::uint64_t trials = 0, seed = 0;
    } ve;
    auto* verify_cmd = app.add_subcommand("verify", "randomized brute-vs-polynomial campaign");
    verify_cmd->add_option("--graph", ve.graph, "graph file")->required();
    verify_cmd->add_option("--schema", ve.schema, "formula over x and a1..aN")->required();
    verify_cmd->add_option("--trials", ve.trials, "number of sampled tuples")->required();
    verify_cmd->add_option("--seed", ve.seed, "PRNG seed")->required();
    verify_cmd->callback([&] {
        auto g = tc::load_graph(read_file(ve.graph));
        auto report = tc::verify(g, ve.schema, ve.trials, ve.seed);
        std::cout << report.render();
        if (!report.pass()) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const tc::format_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const tc::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
