#include "treecount/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "treecount/errors.hpp"

namespace treecount {

namespace {

bool term_before(const Poly2::Term& a, const Poly2::Term& b) {
    return std::pair{a.d1, a.d2} > std::pair{b.d1, b.d2};
}

} // namespace

void Poly2::normalize() {
    std::sort(terms_.begin(), terms_.end(), term_before);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().d1 == t.d1 && out.back().d2 == t.d2)
            out.back().coeff += t.coeff;
        else
            out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
    terms_ = std::move(out);
}

Poly2 Poly2::constant(BigInt c) {
    return monomial(0, 0, std::move(c));
}

Poly2 Poly2::monomial(std::uint32_t d1, std::uint32_t d2, BigInt c) {
    Poly2 p;
    if (c != 0) p.terms_.push_back({d1, d2, std::move(c)});
    return p;
}

Poly2 Poly2::operator-() const {
    Poly2 p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

Poly2& Poly2::operator+=(const Poly2& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
    return *this += -o;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 p;
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_)
            p.terms_.push_back({x.d1 + y.d1, x.d2 + y.d2, x.coeff * y.coeff});
    p.normalize();
    return p;
}

BigInt Poly2::eval(const BigInt& alpha, const BigInt& beta) const {
    std::map<std::uint32_t, BigInt> pow_a, pow_b;
    auto power = [](std::map<std::uint32_t, BigInt>& cache, const BigInt& base,
                    std::uint32_t e) -> const BigInt& {
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        BigInt v = 1;
        for (std::uint32_t i = 0; i < e; ++i) v *= base;
        return cache.emplace(e, std::move(v)).first->second;
    };
    BigInt sum = 0;
    for (const auto& t : terms_)
        sum += t.coeff * power(pow_a, alpha, t.d1) * power(pow_b, beta, t.d2);
    return sum;
}

PairDegree Poly2::leading() const {
    if (terms_.empty())
        throw domain_error("the zero polynomial has no leading degree");
    return {terms_.front().d1, terms_.front().d2};
}

std::string Poly2::render() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const Term& t = terms_[i];
        const bool negative = t.coeff < 0;
        BigInt mag = negative ? BigInt(-t.coeff) : t.coeff;
        if (i == 0) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        std::string vars;
        if (t.d1 > 0) {
            vars += "t1";
            if (t.d1 > 1) vars += "^" + std::to_string(t.d1);
        }
        if (t.d2 > 0) {
            if (!vars.empty()) vars += '*';
            vars += "t2";
            if (t.d2 > 1) vars += "^" + std::to_string(t.d2);
        }
        if (vars.empty()) {
            out += mag.str();
        } else {
            if (mag != 1) out += mag.str() + "*";
            out += vars;
        }
    }
    return out;
}

namespace {

class PolyParser {
public:
    explicit PolyParser(const std::string& text) : text_(text) {}

    Poly2 run() {
        Poly2 p;
        skip_ws();
        bool first = true;
        while (pos_ < text_.size() || first) {
            int sign = 1;
            if (first) {
                if (eat('-')) sign = -1;
                else eat('+');
            } else {
                if (eat('-')) sign = -1;
                else if (eat('+')) sign = 1;
                else fail("expected '+' or '-' between terms");
            }
            p += term(sign);
            first = false;
            skip_ws();
            if (pos_ == text_.size()) break;
        }
        return p;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw format_error("polynomial syntax error at position " + std::to_string(pos_ + 1) +
                           ": " + what);
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

    BigInt integer() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected integer");
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            digits += text_[pos_++];
        return BigInt(digits);
    }

    std::uint32_t exponent() {
        BigInt e = integer();
        if (e > 1000) fail("exponent too large");
        return e.convert_to<std::uint32_t>();
    }

    // term := INT ('*' factor)* | factor ('*' factor)*
    Poly2 term(int sign) {
        skip_ws();
        BigInt coeff = 1;
        std::uint32_t d1 = 0, d2 = 0;
        bool any = false;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            coeff = integer();
            any = true;
        }
        for (;;) {
            if (any && !eat('*')) break;
            skip_ws();
            if (pos_ + 1 < text_.size() && text_[pos_] == 't' &&
                (text_[pos_ + 1] == '1' || text_[pos_ + 1] == '2')) {
                const bool is_t1 = text_[pos_ + 1] == '1';
                pos_ += 2;
                std::uint32_t e = 1;
                if (eat('^')) e = exponent();
                (is_t1 ? d1 : d2) += e;
                any = true;
            } else if (any) {
                fail("expected variable after '*'");
            } else {
                fail("expected term");
            }
        }
        return Poly2::monomial(d1, d2, sign * coeff);
    }
};

} // namespace

Poly2 Poly2::parse(const std::string& text) {
    return PolyParser(text).run();
}

Poly2 pow(const Poly2& base, std::uint32_t exp) {
    Poly2 result = Poly2::constant(1);
    for (std::uint32_t i = 0; i < exp; ++i)
        result = result * base;
    return result;
}

} // namespace treecount
