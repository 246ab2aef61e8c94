#pragma once

#include "drg/algebraic.hpp"

#include <memory>
#include <optional>
#include <string>

namespace drg {

using FieldContext = std::shared_ptr<const AlgebraicReal>;

FieldContext make_context(AlgebraicReal theta);

/// Element of Q(theta) = Q[x]/(minpoly(theta)), embedded in R through the
/// particular root theta. The representative always has degree below the
/// minimal polynomial's.
class FieldElement {
public:
    FieldElement(FieldContext ctx, const UniPoly& rep);
    FieldElement(FieldContext ctx, const Rational& value);

    /// theta itself.
    static FieldElement generator(FieldContext ctx);

    const AlgebraicReal& context() const { return *ctx_; }
    const FieldContext& context_ptr() const { return ctx_; }
    const UniPoly& representative() const { return rep_; }

    bool is_zero() const { return rep_.is_zero(); }
    std::optional<Rational> as_rational() const;
    /// Exact sign via interval refinement of theta.
    int sign() const;
    /// Enclosure of the real value with theta refined to width 2^-bits.
    Interval enclose(int bits) const;
    double to_double() const;
    /// Polynomial in `var` standing for theta.
    std::string to_string(std::string_view var = "t") const;

    /// Same value in another context; only valid for rational elements.
    FieldElement lifted(FieldContext ctx) const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    FieldElement& operator*=(const Rational& s);

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    friend FieldElement operator*(FieldElement a, const Rational& s) { return a *= s; }
    friend FieldElement operator*(const Rational& s, FieldElement a) { return a *= s; }

    FieldElement inverse() const;

    /// Equal as elements of the same field (contexts must match).
    bool operator==(const FieldElement& o) const;

private:
    void check_same_context(const FieldElement& o) const;

    FieldContext ctx_;
    UniPoly rep_;
};

enum class FieldOp { Add, Sub, Mul, Div };
FieldElement field_arith(const FieldElement& x, const FieldElement& y, FieldOp op);

inline std::optional<Rational> as_rational(const FieldElement& x) { return x.as_rational(); }

}  // namespace drg

namespace drg {

/// "(a + b*sqrt(D))/c" with D squarefree, for rationals and elements of
/// quadratic fields; nullopt in higher degree.
std::optional<std::string> radical_form(const FieldElement& x);

/// Rounded half-to-even at `digits` places (as for AlgebraicReal).
std::string to_decimal(const FieldElement& x, int digits);

}  // namespace drg
