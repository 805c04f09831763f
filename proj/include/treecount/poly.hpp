#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace treecount {

using BigInt = boost::multiprecision::cpp_int;

// Monomial degrees in (t1, t2); t1 carries the universe size, t2 the
// regularity degree.
using PairDegree = std::pair<std::uint32_t, std::uint32_t>;

// Sparse two-variable polynomial over arbitrary-precision integers. Terms
// are kept in descending lexicographic (deg t1, deg t2) order with no zero
// coefficients.
class Poly2 {
public:
    struct Term {
        std::uint32_t d1, d2;
        BigInt coeff;
        bool operator==(const Term&) const = default;
    };

    Poly2() = default; // zero

    static Poly2 constant(BigInt c);
    static Poly2 monomial(std::uint32_t d1, std::uint32_t d2, BigInt c);
    static Poly2 t1() { return monomial(1, 0, 1); }
    static Poly2 t2() { return monomial(0, 1, 1); }

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    Poly2 operator-() const;
    Poly2& operator+=(const Poly2& o);
    Poly2& operator-=(const Poly2& o);
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b);

    BigInt eval(const BigInt& alpha, const BigInt& beta) const;

    // Pair-degree of the lexicographically maximal monomial (t1 first).
    // Undefined for the zero polynomial.
    PairDegree leading() const;

    // Canonical text: descending terms, e.g. "t2^2 - 3*t2 + 2".
    std::string render() const;
    static Poly2 parse(const std::string& text);

    bool operator==(const Poly2&) const = default;

private:
    std::vector<Term> terms_;
    void normalize();
};

Poly2 pow(const Poly2& base, std::uint32_t exp);

} // namespace treecount
