#include "treecount/formula.hpp"

#include <algorithm>
#include <charconv>

#include "treecount/errors.hpp"

namespace treecount {

FormulaAst FormulaAst::make_atom(Atom a) {
    FormulaAst f;
    f.kind = Kind::Atom;
    f.atom = a;
    return f;
}

FormulaAst FormulaAst::make_not(FormulaAst k) {
    FormulaAst f;
    f.kind = Kind::Not;
    f.kids.push_back(std::move(k));
    return f;
}

FormulaAst FormulaAst::make_and(FormulaAst l, FormulaAst r) {
    FormulaAst f;
    f.kind = Kind::And;
    f.kids.push_back(std::move(l));
    f.kids.push_back(std::move(r));
    return f;
}

FormulaAst FormulaAst::make_or(FormulaAst l, FormulaAst r) {
    FormulaAst f;
    f.kind = Kind::Or;
    f.kids.push_back(std::move(l));
    f.kids.push_back(std::move(r));
    return f;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    FormulaAst run() {
        FormulaAst f = disjunction();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return f;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t depth_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw format_error("formula syntax error at line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!eat(c)) fail(std::string("expected '") + c + "' (" + what + ")");
    }

    std::uint32_t integer(const char* what) {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail(std::string("expected ") + what);
        std::uint64_t value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1'000'000) fail(std::string(what) + " too large (max 1000000)");
            ++pos_;
        }
        return static_cast<std::uint32_t>(value);
    }

    FormulaAst disjunction() {
        FormulaAst f = conjunction();
        while (eat('|'))
            f = FormulaAst::make_or(std::move(f), conjunction());
        return f;
    }

    FormulaAst conjunction() {
        FormulaAst f = literal();
        while (eat('&'))
            f = FormulaAst::make_and(std::move(f), literal());
        return f;
    }

    FormulaAst literal() {
        if (++depth_ > 256) fail("formula nested too deeply");
        FormulaAst f;
        if (eat('!')) {
            f = FormulaAst::make_not(literal());
        } else if (eat('(')) {
            f = disjunction();
            expect(')', "closing parenthesis");
        } else {
            f = atom();
        }
        --depth_;
        return f;
    }

    FormulaAst atom() {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'D')
            fail("expected atom 'Dk(x,aN)'");
        ++pos_;
        std::uint32_t k = integer("distance constant");
        expect('(', "atom arguments");
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'x')
            fail("expected object variable 'x'");
        ++pos_;
        expect(',', "atom arguments");
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'a')
            fail("expected parameter 'aN'");
        ++pos_;
        std::uint32_t p = integer("parameter index");
        if (p == 0) fail("parameter indices start at a1");
        expect(')', "atom arguments");
        return FormulaAst::make_atom(Atom{k, p});
    }
};

void render(const FormulaAst& f, std::string& out) {
    switch (f.kind) {
    case FormulaAst::Kind::Atom:
        out += 'D';
        out += std::to_string(f.atom.k);
        out += "(x,a";
        out += std::to_string(f.atom.param);
        out += ')';
        return;
    case FormulaAst::Kind::Not: {
        const FormulaAst& kid = f.kids[0];
        out += '!';
        if (kid.kind == FormulaAst::Kind::Atom) {
            render(kid, out);
        } else {
            out += '(';
            render(kid, out);
            out += ')';
        }
        return;
    }
    case FormulaAst::Kind::And:
    case FormulaAst::Kind::Or: {
        // The parser is left-associative, so a right child at the same
        // precedence level needs parentheses to reparse to the same tree.
        const bool is_and = f.kind == FormulaAst::Kind::And;
        for (std::size_t i = 0; i < 2; ++i) {
            if (i) out += is_and ? " & " : " | ";
            const FormulaAst& kid = f.kids[i];
            const bool parens = (is_and && kid.kind == FormulaAst::Kind::Or) ||
                                (i == 1 && kid.kind == f.kind);
            if (parens) {
                out += '(';
                render(kid, out);
                out += ')';
            } else {
                render(kid, out);
            }
        }
        return;
    }
    }
}

void collect_params(const FormulaAst& f, std::vector<std::uint32_t>& out) {
    if (f.kind == FormulaAst::Kind::Atom)
        out.push_back(f.atom.param);
    for (const auto& kid : f.kids)
        collect_params(kid, out);
}

struct Literal {
    Atom atom;
    bool negated;
};

// Negation-normal form expansion into DNF, one conjunct list at a time.
std::vector<std::vector<Literal>> expand(const FormulaAst& f, bool negated) {
    switch (f.kind) {
    case FormulaAst::Kind::Atom:
        return {{Literal{f.atom, negated}}};
    case FormulaAst::Kind::Not:
        return expand(f.kids[0], !negated);
    case FormulaAst::Kind::And:
    case FormulaAst::Kind::Or: {
        const bool distribute = (f.kind == FormulaAst::Kind::And) != negated;
        auto left = expand(f.kids[0], negated);
        auto right = expand(f.kids[1], negated);
        if (!distribute) {
            left.insert(left.end(), std::make_move_iterator(right.begin()),
                        std::make_move_iterator(right.end()));
            return left;
        }
        if (left.size() * right.size() > 4096)
            throw domain_error("formula expands to too many disjuncts");
        std::vector<std::vector<Literal>> out;
        out.reserve(left.size() * right.size());
        for (const auto& l : left)
            for (const auto& r : right) {
                std::vector<Literal> merged = l;
                merged.insert(merged.end(), r.begin(), r.end());
                out.push_back(std::move(merged));
            }
        return out;
    }
    }
    return {};
}

} // namespace

FormulaAst parse_formula(const std::string& text) {
    return Parser(text).run();
}

std::string render_formula(const FormulaAst& f) {
    std::string out;
    render(f, out);
    return out;
}

std::vector<std::uint32_t> formula_params(const FormulaAst& f) {
    std::vector<std::uint32_t> out;
    collect_params(f, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t interaction_radius(const FormulaAst& f) {
    if (f.kind == FormulaAst::Kind::Atom)
        return f.atom.k + std::uint64_t{1};
    std::uint64_t r = 0;
    for (const auto& kid : f.kids)
        r += interaction_radius(kid);
    return r;
}

Dnf to_dnf(const FormulaAst& f) {
    Dnf dnf;
    for (auto& lits : expand(f, false)) {
        LiteralConjunction lc;
        bool consistent = true;
        for (const auto& lit : lits)
            (lit.negated ? lc.negatives : lc.positives).push_back(lit.atom);
        for (auto* side : {&lc.positives, &lc.negatives}) {
            std::sort(side->begin(), side->end());
            side->erase(std::unique(side->begin(), side->end()), side->end());
        }
        // Two positive constants on one parameter contradict each other.
        for (std::size_t i = 0; consistent && i + 1 < lc.positives.size(); ++i)
            if (lc.positives[i].param == lc.positives[i + 1].param)
                consistent = false;
        // And so does any atom present with both polarities.
        for (std::size_t i = 0, j = 0; consistent && i < lc.positives.size();) {
            if (j == lc.negatives.size()) break;
            if (lc.positives[i] == lc.negatives[j]) consistent = false;
            else if (lc.positives[i] < lc.negatives[j]) ++i;
            else ++j;
        }
        if (!consistent) continue;
        for (const auto& a : lc.positives) dnf.params.push_back(a.param);
        for (const auto& a : lc.negatives) dnf.params.push_back(a.param);
        dnf.disjuncts.push_back(std::move(lc));
    }
    std::sort(dnf.params.begin(), dnf.params.end());
    dnf.params.erase(std::unique(dnf.params.begin(), dnf.params.end()), dnf.params.end());
    return dnf;
}

std::string render_dnf(const Dnf& dnf) {
    if (dnf.disjuncts.empty())
        throw domain_error("cannot render an empty (unsatisfiable) DNF");
    std::string out;
    for (std::size_t i = 0; i < dnf.disjuncts.size(); ++i) {
        if (i) out += " | ";
        const auto& lc = dnf.disjuncts[i];
        std::string conj;
        auto add = [&conj](const Atom& a, bool neg) {
            if (!conj.empty()) conj += " & ";
            if (neg) conj += '!';
            conj += "D" + std::to_string(a.k) + "(x,a" + std::to_string(a.param) + ")";
        };
        for (const auto& a : lc.positives) add(a, false);
        for (const auto& a : lc.negatives) add(a, true);
        out += conj;
    }
    return out;
}

} // namespace treecount
