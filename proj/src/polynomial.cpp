#include "drg/polynomial.hpp"

#include "drg/errors.hpp"

#include <algorithm>
#include <sstream>

namespace drg {

std::string to_string(const Rational& r)
{
    return r.get_str();
}

Rational parse_rational(std::string_view text)
{
    Rational r;
    std::string s(text);
    if (s.empty() || r.set_str(s, 10) != 0)
        throw ParseError("not a rational number: '" + s + "'");
    r.canonicalize();
    if (r.get_den() == 0)
        throw ParseError("zero denominator: '" + s + "'");
    return r;
}

double to_double(const Rational& r)
{
    return r.get_d();
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    normalize();
}

UniPoly::UniPoly(std::initializer_list<long> coeffs)
{
    c_.reserve(coeffs.size());
    for (long v : coeffs)
        c_.emplace_back(v);
    normalize();
}

UniPoly UniPoly::constant(const Rational& c)
{
    return UniPoly(std::vector<Rational>{c});
}

UniPoly UniPoly::monomial(int degree, const Rational& c)
{
    std::vector<Rational> v(static_cast<size_t>(degree) + 1, Rational(0));
    v.back() = c;
    return UniPoly(std::move(v));
}

UniPoly UniPoly::linear_root(const Rational& r)
{
    return UniPoly(std::vector<Rational>{Rational(-r), Rational(1)});
}

void UniPoly::normalize()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Rational UniPoly::coeff(int i) const
{
    if (i < 0 || i >= static_cast<int>(c_.size()))
        return 0;
    return c_[static_cast<size_t>(i)];
}

const Rational& UniPoly::leading() const
{
    if (c_.empty())
        throw PreconditionError("leading coefficient of the zero polynomial");
    return c_.back();
}

Rational UniPoly::eval(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

int UniPoly::sign_at(const Rational& x) const
{
    return sgn(eval(x));
}

UniPoly UniPoly::derivative() const
{
    if (c_.size() <= 1)
        return {};
    std::vector<Rational> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        d[i - 1] = c_[i] * static_cast<long>(i);
    return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const
{
    if (c_.empty())
        return {};
    Rational inv = 1 / c_.back();
    return *this * inv;
}

std::vector<Integer> UniPoly::primitive_integer() const
{
    if (c_.empty())
        return {};
    Integer l = 1;
    for (const auto& q : c_)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> out;
    out.reserve(c_.size());
    Integer g = 0;
    for (const auto& q : c_) {
        Integer v = q.get_num() * (l / q.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        out.push_back(v);
    }
    if (sgn(out.back()) < 0)
        g = -g;
    for (auto& v : out)
        v /= g;
    return out;
}

UniPoly UniPoly::operator-() const
{
    UniPoly r = *this;
    for (auto& q : r.c_)
        q = -q;
    return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    normalize();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), Rational(0));
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    normalize();
    return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s)
{
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& q : c_)
        q *= s;
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
}

std::string UniPoly::to_string(std::string_view var) const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& q = c_[static_cast<size_t>(i)];
        if (q == 0)
            continue;
        Rational mag = abs(q);
        if (first) {
            if (q < 0)
                os << "-";
        } else {
            os << (q < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1)
            os << mag.get_str() << "*";
        os << var;
        if (i > 1)
            os << "^" << i;
    }
    return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b)
{
    if (b.is_zero())
        throw PreconditionError("polynomial division by zero");
    if (a.degree() < b.degree())
        return {UniPoly{}, a};
    std::vector<Rational> rem = a.coeffs();
    const auto& bc = b.coeffs();
    const int db = b.degree();
    std::vector<Rational> quo(static_cast<size_t>(a.degree() - db) + 1, Rational(0));
    for (int i = a.degree(); i >= db; --i) {
        const Rational& top = rem[static_cast<size_t>(i)];
        if (top == 0)
            continue;
        Rational f = top / bc.back();
        quo[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<size_t>(i - db + j)] -= f * bc[static_cast<size_t>(j)];
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly operator%(const UniPoly& a, const UniPoly& b)
{
    return divmod(a, b).second;
}

UniPoly gcd(UniPoly a, UniPoly b)
{
    while (!b.is_zero()) {
        UniPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UniPoly squarefree_part(const UniPoly& p)
{
    if (p.degree() <= 0)
        return p;
    UniPoly g = gcd(p, p.derivative());
    return divmod(p, g).first.monic();
}

}  // namespace drg
