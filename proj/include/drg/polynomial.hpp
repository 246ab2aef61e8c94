#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace drg {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);
double to_double(const Rational& r);

/// Dense univariate polynomial over Q, coefficients lowest degree first.
/// The zero polynomial has no coefficients and degree -1.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);
    UniPoly(std::initializer_list<long> coeffs);

    static UniPoly constant(const Rational& c);
    static UniPoly monomial(int degree, const Rational& c = 1);
    /// x - r
    static UniPoly linear_root(const Rational& r);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;
    const Rational& leading() const;

    Rational eval(const Rational& x) const;
    int sign_at(const Rational& x) const;
    UniPoly derivative() const;
    UniPoly monic() const;

    /// Integer multiple with coprime coefficients and positive leading term.
    std::vector<Integer> primitive_integer() const;

    UniPoly operator-() const;
    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    UniPoly& operator*=(const Rational& s);

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
    friend UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    std::string to_string(std::string_view var = "x") const;

private:
    void normalize();

    std::vector<Rational> c_;
};

/// Quotient and remainder of Euclidean division; divisor must be nonzero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly operator%(const UniPoly& a, const UniPoly& b);

/// Monic gcd (zero if both inputs are zero).
UniPoly gcd(UniPoly a, UniPoly b);

/// Polynomial with the same roots, each of multiplicity one.
UniPoly squarefree_part(const UniPoly& p);

}  // namespace drg
