#pragma once

#include "drg/polynomial.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace drg {

/// Closed interval with rational endpoints, lo <= hi.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() = default;
    Interval(Rational point) : lo(point), hi(lo) {}
    Interval(Rational l, Rational h);

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool is_point() const { return lo == hi; }
    /// -1 / +1 when the interval excludes zero, 0 for the point {0},
    /// nullopt when it straddles zero.
    std::optional<int> sign() const;

    Interval operator-() const { return {-hi, -lo}; }
    friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Rational& s);

    bool operator==(const Interval&) const = default;
};

/// Horner evaluation of p over an interval; the result encloses p(x) for
/// every x in the argument.
Interval eval(const UniPoly& p, const Interval& x);

/// Sturm chain of a squarefree polynomial.
class SturmSequence {
public:
    explicit SturmSequence(const UniPoly& p);

    int variations(const Rational& x) const;
    /// Number of distinct real roots in the half-open interval (lo, hi].
    int count(const Rational& lo, const Rational& hi) const;

private:
    std::vector<UniPoly> chain_;
};

/// Exact real algebraic number: an irreducible minimal polynomial (monic)
/// plus an interval holding exactly one of its real roots. Rationals carry
/// the linear minimal polynomial x - r and a point interval.
class AlgebraicReal {
public:
    AlgebraicReal(const Rational& r);
    AlgebraicReal(long r) : AlgebraicReal(Rational(r)) {}

    /// Checks that minpoly has exactly one root in the interval. Caller
    /// guarantees irreducibility.
    static AlgebraicReal from_isolating(UniPoly minpoly, Interval isolating);

    const UniPoly& minpoly() const { return minpoly_; }
    const Interval& interval() const { return interval_; }
    int degree() const { return minpoly_.degree(); }
    bool is_rational() const { return degree() == 1; }
    std::optional<Rational> rational() const;

    /// One bisection step on the isolating interval.
    Interval bisect(const Interval& current) const;

    double to_double() const;
    std::string to_string() const;

private:
    struct Trusted {};
    AlgebraicReal(UniPoly minpoly, Interval isolating, Trusted);

    friend std::vector<AlgebraicReal> real_roots(const UniPoly& p);

    UniPoly minpoly_;
    Interval interval_;
};

/// Distinct real roots, strictly decreasing. Throws PreconditionError on the
/// zero polynomial and UnsupportedError when a real root sits on a factor
/// the engine cannot split into pieces of degree <= 4.
std::vector<AlgebraicReal> real_roots(const UniPoly& p);

/// Monic irreducible factors over Q of a squarefree polynomial with no
/// rational roots, found by splitting off quadratic factors. Throws
/// UnsupportedError when a factor of degree >= 5 remains.
std::vector<UniPoly> irreducible_factors_small(const UniPoly& p);

std::strong_ordering compare(const AlgebraicReal& a, const AlgebraicReal& b);
inline std::strong_ordering operator<=>(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b); }
inline bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) { return compare(a, b) == 0; }

/// Interval of width <= width enclosing a; point interval for rationals.
Interval refine(const AlgebraicReal& a, const Rational& width);
/// Width 2^-bits.
Interval refine_bits(const AlgebraicReal& a, int bits);

/// Decimal rendering rounded half-to-even at `digits` places; integers are
/// printed without a fractional part.
std::string to_decimal(const AlgebraicReal& a, int digits);

}  // namespace drg
