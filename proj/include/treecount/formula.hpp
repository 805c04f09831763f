#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace treecount {

// The distance atom D_k(x, a_{param}); param indices are 1-based.
struct Atom {
    std::uint32_t k;
    std::uint32_t param;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

// Quantifier-free boolean combination of distance atoms over one object
// variable x.
//
// Grammar:   formula := disj ; disj := conj ('|' conj)* ;
//            conj := lit ('&' lit)* ; lit := '!'? (atom | '(' formula ')') ;
//            atom := 'D' INT '(' 'x' ',' 'a' INT ')' ; whitespace ignored.
struct FormulaAst {
    enum class Kind { Atom, Not, And, Or };

    Kind kind = Kind::Atom;
    Atom atom{0, 1};                // valid when kind == Atom
    std::vector<FormulaAst> kids;   // 1 for Not, 2 for And/Or

    static FormulaAst make_atom(Atom a);
    static FormulaAst make_not(FormulaAst f);
    static FormulaAst make_and(FormulaAst l, FormulaAst r);
    static FormulaAst make_or(FormulaAst l, FormulaAst r);

    bool operator==(const FormulaAst&) const = default;
};

FormulaAst parse_formula(const std::string& text);
std::string render_formula(const FormulaAst& f);

// Sorted list of distinct parameter indices mentioned by f.
std::vector<std::uint32_t> formula_params(const FormulaAst& f);

// Girth-sufficiency radius: sum of (k+1) over all atom occurrences.
std::uint64_t interaction_radius(const FormulaAst& f);

// One consistent conjunct of a DNF. Positives never repeat a parameter with
// two different constants and no atom appears with both polarities
// (inconsistent conjuncts are dropped during DNF conversion).
struct LiteralConjunction {
    std::vector<Atom> positives; // sorted, distinct
    std::vector<Atom> negatives; // sorted, distinct

    bool operator==(const LiteralConjunction&) const = default;
};

struct Dnf {
    std::vector<LiteralConjunction> disjuncts;
    std::vector<std::uint32_t> params; // sorted union over disjuncts
};

// Logically equivalent DNF; inconsistent disjuncts dropped, literals
// deduplicated. Disjuncts may overlap (counting handles the overlap).
Dnf to_dnf(const FormulaAst& f);

// The DNF rendered back into the concrete syntax; requires >= 1 disjunct.
std::string render_dnf(const Dnf& dnf);

} // namespace treecount
