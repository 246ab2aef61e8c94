#include "drg/field.hpp"

#include "drg/errors.hpp"

namespace drg {

FieldContext make_context(AlgebraicReal theta)
{
    return std::make_shared<const AlgebraicReal>(std::move(theta));
}

FieldElement::FieldElement(FieldContext ctx, const UniPoly& rep) : ctx_(std::move(ctx))
{
    if (!ctx_)
        throw PreconditionError("field element without context");
    rep_ = rep.degree() >= ctx_->degree() ? rep % ctx_->minpoly() : rep;
}

FieldElement::FieldElement(FieldContext ctx, const Rational& value)
    : FieldElement(std::move(ctx), UniPoly::constant(value))
{
}

FieldElement FieldElement::generator(FieldContext ctx)
{
    return FieldElement(std::move(ctx), UniPoly::monomial(1));
}

std::optional<Rational> FieldElement::as_rational() const
{
    if (rep_.degree() > 0)
        return std::nullopt;
    return rep_.coeff(0);
}

Interval FieldElement::enclose(int bits) const
{
    if (auto r = as_rational())
        return Interval(*r);
    return eval(rep_, refine_bits(*ctx_, bits));
}

int FieldElement::sign() const
{
    if (auto r = as_rational())
        return sgn(*r);
    // Nonzero elements of a number field are nonzero reals, so this ends.
    for (int bits = 32;; bits *= 2) {
        if (auto s = enclose(bits).sign())
            return *s;
    }
}

double FieldElement::to_double() const
{
    if (auto r = as_rational())
        return r->get_d();
    return enclose(80).midpoint().get_d();
}

std::string FieldElement::to_string(std::string_view var) const
{
    return rep_.to_string(var);
}

FieldElement FieldElement::lifted(FieldContext ctx) const
{
    auto r = as_rational();
    if (!r)
        throw PreconditionError("only rational field elements can change context");
    return FieldElement(std::move(ctx), *r);
}

void FieldElement::check_same_context(const FieldElement& o) const
{
    if (ctx_ == o.ctx_)
        return;
    if (ctx_->minpoly() == o.ctx_->minpoly() && compare(*ctx_, *o.ctx_) == 0)
        return;
    throw PreconditionError("field elements from different contexts: " + ctx_->to_string() + " vs " +
                            o.ctx_->to_string());
}

FieldElement FieldElement::operator-() const
{
    return FieldElement(ctx_, -rep_);
}

FieldElement& FieldElement::operator+=(const FieldElement& o)
{
    check_same_context(o);
    rep_ += o.rep_;
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o)
{
    check_same_context(o);
    rep_ -= o.rep_;
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o)
{
    check_same_context(o);
    rep_ = (rep_ * o.rep_) % ctx_->minpoly();
    return *this;
}

FieldElement& FieldElement::operator*=(const Rational& s)
{
    rep_ *= s;
    return *this;
}

FieldElement FieldElement::inverse() const
{
    if (is_zero())
        throw PreconditionError("division by the zero field element");
    // Extended Euclid: s * rep + t * minpoly = 1 since minpoly is irreducible.
    UniPoly r0 = ctx_->minpoly(), r1 = rep_;
    UniPoly s0, s1 = UniPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        UniPoly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0)
        throw InternalError("minimal polynomial is not irreducible: " + ctx_->minpoly().to_string());
    return FieldElement(ctx_, s0 * Rational(1 / r0.coeff(0)));
}

FieldElement& FieldElement::operator/=(const FieldElement& o)
{
    check_same_context(o);
    return *this *= o.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const
{
    check_same_context(o);
    return rep_ == o.rep_;
}

FieldElement field_arith(const FieldElement& x, const FieldElement& y, FieldOp op)
{
    switch (op) {
    case FieldOp::Add:
        return x + y;
    case FieldOp::Sub:
        return x - y;
    case FieldOp::Mul:
        return x * y;
    case FieldOp::Div:
        return x / y;
    }
    throw PreconditionError("unknown field operation");
}

namespace {

// D = f^2 * core with core squarefree; trial division is plenty for the
// discriminants that occur here.
std::pair<Integer, Integer> split_square(Integer d)
{
    Integer f = 1;
    Integer core = 1;
    for (Integer p = 2; p * p <= d; ++p) {
        int e = 0;
        while (d % p == 0) {
            d /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i)
            f *= p;
        if (e % 2)
            core *= p;
    }
    return {f, core * d};
}

std::string term(const Integer& coef, const std::string& unit)
{
    Integer a = abs(coef);
    if (unit.empty())
        return a.get_str();
    return a == 1 ? unit : a.get_str() + "*" + unit;
}

}  // namespace

std::optional<std::string> radical_form(const FieldElement& x)
{
    if (auto r = x.as_rational())
        return to_string(*r);
    const UniPoly& mp = x.context().minpoly();
    if (mp.degree() != 2)
        return std::nullopt;

    // theta = (-p + s*sqrt(disc))/2 for the monic minpoly x^2 + p x + q.
    const Rational p = mp.coeff(1) / mp.coeff(2);
    const Rational q = mp.coeff(0) / mp.coeff(2);
    const Rational disc = p * p - 4 * q;
    const int s = FieldElement(x.context_ptr(), UniPoly{std::vector<Rational>{p / 2, 1}}).sign();

    // sqrt(disc) = sqrt(num*den)/den = f*sqrt(core)/den
    auto [f, core] = split_square(Integer(disc.get_num() * disc.get_den()));
    const Rational r0 = x.representative().coeff(0);
    const Rational r1 = x.representative().coeff(1);
    Rational a = r0 - r1 * p / 2;
    Rational b = r1 * s * Rational(f, disc.get_den()) / 2;
    a.canonicalize();
    b.canonicalize();

    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
    Integer an = a.get_num() * (l / a.get_den());
    Integer bn = b.get_num() * (l / b.get_den());
    const std::string root = "sqrt(" + core.get_str() + ")";

    std::string num;
    if (an != 0)
        num = (an < 0 ? "-" : "") + term(an, "") + (bn < 0 ? " - " : " + ") + term(bn, root);
    else
        num = (bn < 0 ? "-" : "") + term(bn, root);
    if (l == 1)
        return num;
    return (an != 0 ? "(" + num + ")" : num) + "/" + l.get_str();
}

std::string to_decimal(const FieldElement& x, int digits)
{
    if (auto r = x.as_rational())
        return to_decimal(AlgebraicReal(*r), digits);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const Rational half(1, 2);
    // Irrational, so never a tie: refine until both ends round alike.
    for (int bits = 64;; bits *= 2) {
        Interval iv = x.enclose(bits);
        Rational lo = iv.lo * scale + half, hi = iv.hi * scale + half;
        Integer nlo, nhi;
        mpz_fdiv_q(nlo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
        mpz_fdiv_q(nhi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
        if (nlo == nhi) {
            Rational r(nlo, scale);
            r.canonicalize();
            return to_decimal(AlgebraicReal(r), digits);
        }
    }
}

}  // namespace drg
