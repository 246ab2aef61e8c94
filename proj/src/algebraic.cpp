#include "drg/algebraic.hpp"

#include "drg/errors.hpp"

#include <algorithm>
#include <optional>

namespace drg {

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h))
{
    if (lo > hi)
        throw PreconditionError("interval with lo > hi");
}

std::optional<int> Interval::sign() const
{
    if (lo > 0)
        return 1;
    if (hi < 0)
        return -1;
    if (lo == 0 && hi == 0)
        return 0;
    return std::nullopt;
}

Interval operator*(const Interval& a, const Interval& b)
{
    if (a.is_point() && b.is_point())
        return Interval(Rational(a.lo * b.lo));
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    Rational mn = std::min({p1, p2, p3, p4});
    Rational mx = std::max({p1, p2, p3, p4});
    return {std::move(mn), std::move(mx)};
}

Interval operator*(const Interval& a, const Rational& s)
{
    if (s >= 0)
        return {a.lo * s, a.hi * s};
    return {a.hi * s, a.lo * s};
}

Interval eval(const UniPoly& p, const Interval& x)
{
    if (p.is_zero())
        return Interval(Rational(0));
    const auto& c = p.coeffs();
    Interval acc(c.back());
    for (int i = p.degree() - 1; i >= 0; --i) {
        acc = acc * x;
        acc.lo += c[static_cast<size_t>(i)];
        acc.hi += c[static_cast<size_t>(i)];
    }
    return acc;
}

SturmSequence::SturmSequence(const UniPoly& p)
{
    if (p.is_zero())
        throw PreconditionError("Sturm sequence of the zero polynomial");
    auto scaled = [](const UniPoly& q) {
        if (q.is_zero())
            return q;
        return q * Rational(1 / abs(q.leading()));
    };
    chain_.push_back(scaled(p));
    UniPoly d = p.derivative();
    if (d.is_zero())
        return;
    chain_.push_back(scaled(d));
    while (true) {
        UniPoly r = -(chain_[chain_.size() - 2] % chain_.back());
        if (r.is_zero())
            break;
        chain_.push_back(scaled(r));
    }
}

int SturmSequence::variations(const Rational& x) const
{
    int changes = 0;
    int prev = 0;
    for (const auto& q : chain_) {
        int s = q.sign_at(x);
        if (s == 0)
            continue;
        if (prev != 0 && s != prev)
            ++changes;
        prev = s;
    }
    return changes;
}

int SturmSequence::count(const Rational& lo, const Rational& hi) const
{
    return variations(lo) - variations(hi);
}

namespace {

// Smallest power of two strictly above every |root| of p (Cauchy bound).
Rational dyadic_root_bound(const UniPoly& p)
{
    const Rational& lead = p.leading();
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Rational v = abs(p.coeff(i) / lead);
        if (v > m)
            m = v;
    }
    Rational bound = m + 1;
    Rational b = 1;
    while (b <= bound)
        b *= 2;
    return b;
}

Integer ipow(const Integer& base, unsigned e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Integer roots of a monic integer polynomial via Sturm bisection over
// half-integer endpoints (which are never roots).
std::vector<Integer> integer_roots(const std::vector<Integer>& monic)
{
    std::vector<Rational> qc(monic.begin(), monic.end());
    UniPoly q(qc);
    SturmSequence sturm(q);
    Integer bound = 1;
    for (size_t i = 0; i + 1 < monic.size(); ++i)
        if (abs(monic[i]) + 1 > bound)
            bound = abs(monic[i]) + 1;

    const Rational half(1, 2);
    auto endpoint = [&](const Integer& k) -> Rational { return Rational(k) + half; };

    std::vector<Integer> roots;
    std::vector<std::pair<Integer, Integer>> stack{{Integer(-bound - 1), bound}};
    while (!stack.empty()) {
        auto [l, h] = stack.back();
        stack.pop_back();
        if (sturm.count(endpoint(l), endpoint(h)) == 0)
            continue;
        if (h - l == 1) {
            if (q.eval(Rational(h)) == 0)
                roots.push_back(h);
            continue;
        }
        Integer m = l + (h - l) / 2;
        stack.emplace_back(l, m);
        stack.emplace_back(m, h);
    }
    return roots;
}

std::vector<Integer> divisors(const Integer& n)
{
    Integer a = abs(n);
    if (a > Integer("1000000000000"))
        throw UnsupportedError("constant term too large for quadratic-factor trial");
    std::vector<Integer> out;
    for (Integer d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            out.push_back(d);
            if (d * d != a)
                out.push_back(a / d);
        }
    }
    return out;
}

}  // namespace

namespace {

// Monic quadratic factor y^2 + s y + t of a monic integer polynomial f
// without rational roots. Gauss makes s, t integers; t divides f(0) and
// 1 + s + t divides f(1), which is nonzero here.
std::optional<UniPoly> quadratic_factor(const UniPoly& f)
{
    const Integer f0 = f.coeff(0).get_num();
    const Integer f1 = f.eval(1).get_num();
    for (const Integer& dt : divisors(f0))
        for (const Integer& t : {Integer(dt), Integer(-dt)})
            for (const Integer& du : divisors(f1))
                for (const Integer& u : {Integer(du), Integer(-du)}) {
                    UniPoly g({Rational(t), Rational(u - 1 - t), Rational(1)});
                    if ((f % g).is_zero())
                        return g;
                }
    return std::nullopt;
}

void split_integer_monic(const UniPoly& f, std::vector<UniPoly>& out)
{
    const int deg = f.degree();
    if (deg <= 3) {
        out.push_back(f);
        return;
    }
    if (auto g = quadratic_factor(f)) {
        out.push_back(*g);
        split_integer_monic(divmod(f, *g).first, out);
        return;
    }
    // No factor of degree <= 2: quartics and quintics are irreducible.
    if (deg == 4) {
        out.push_back(f);
        return;
    }
    throw UnsupportedError("factor of degree " + std::to_string(deg) +
                           " without linear or quadratic factors is not supported");
}

}  // namespace

std::vector<UniPoly> irreducible_factors_small(const UniPoly& p)
{
    if (p.degree() <= 3)
        return {p.monic()};

    // y = a x turns the primitive integer polynomial into a monic one.
    std::vector<Integer> ints = p.primitive_integer();
    const int n = p.degree();
    const Integer a = ints[static_cast<size_t>(n)];
    std::vector<Rational> c(static_cast<size_t>(n + 1));
    for (int i = 0; i <= n; ++i)
        c[static_cast<size_t>(i)] = ints[static_cast<size_t>(i)] * ipow(a, static_cast<unsigned>(n - 1 - std::min(i, n - 1)));
    c[static_cast<size_t>(n)] = 1;

    std::vector<UniPoly> ys;
    try {
        split_integer_monic(UniPoly(std::move(c)), ys);
    } catch (const UnsupportedError& e) {
        throw UnsupportedError(std::string(e.what()) + ": " + p.to_string());
    }

    std::vector<UniPoly> out;
    for (const UniPoly& g : ys) {
        // g(a x) / a^deg g
        std::vector<Rational> v(g.coeffs());
        Rational scale = 1;
        for (int i = g.degree(); i >= 0; --i) {
            v[static_cast<size_t>(i)] /= scale;
            scale *= a;
        }
        for (auto& q : v)
            q.canonicalize();
        out.push_back(UniPoly(std::move(v)).monic());
    }
    return out;
}

AlgebraicReal::AlgebraicReal(const Rational& r)
    : minpoly_(UniPoly::linear_root(r)), interval_(r)
{
}

AlgebraicReal::AlgebraicReal(UniPoly minpoly, Interval isolating, Trusted)
    : minpoly_(std::move(minpoly)), interval_(std::move(isolating))
{
}

AlgebraicReal AlgebraicReal::from_isolating(UniPoly minpoly, Interval isolating)
{
    if (minpoly.degree() < 1)
        throw PreconditionError("minimal polynomial must have degree >= 1");
    minpoly = minpoly.monic();
    if (minpoly.degree() == 1) {
        Rational r = -minpoly.coeff(0);
        if (!isolating.contains(r))
            throw PreconditionError("interval does not contain the rational root");
        return AlgebraicReal(r);
    }
    if (minpoly.sign_at(isolating.lo) == 0 || minpoly.sign_at(isolating.hi) == 0)
        throw PreconditionError("isolating interval endpoint is a root of " + minpoly.to_string());
    SturmSequence sturm(minpoly);
    if (sturm.count(isolating.lo, isolating.hi) != 1)
        throw PreconditionError("interval does not isolate exactly one root of " + minpoly.to_string());
    return AlgebraicReal(std::move(minpoly), std::move(isolating), Trusted{});
}

std::optional<Rational> AlgebraicReal::rational() const
{
    if (!is_rational())
        return std::nullopt;
    return interval_.lo;
}

Interval AlgebraicReal::bisect(const Interval& current) const
{
    if (is_rational())
        return interval_;
    Rational mid = current.midpoint();
    int s = minpoly_.sign_at(mid);
    if (s == 0)
        throw InternalError("irreducible minimal polynomial vanished at a rational point");
    if (s == minpoly_.sign_at(current.lo))
        return {mid, current.hi};
    return {current.lo, mid};
}

double AlgebraicReal::to_double() const
{
    if (is_rational())
        return interval_.lo.get_d();
    return refine_bits(*this, 64).midpoint().get_d();
}

std::string AlgebraicReal::to_string() const
{
    if (is_rational())
        return interval_.lo.get_str();
    return "root of " + minpoly_.to_string() + " in [" + interval_.lo.get_str() + ", " +
           interval_.hi.get_str() + "]";
}

namespace {

std::vector<AlgebraicReal> isolate(const UniPoly& f)
{
    SturmSequence sturm(f);
    Rational b = dyadic_root_bound(f);
    std::vector<AlgebraicReal> out;
    std::vector<Interval> stack{Interval(Rational(-b), b)};
    while (!stack.empty()) {
        Interval iv = stack.back();
        stack.pop_back();
        int n = sturm.count(iv.lo, iv.hi);
        if (n == 0)
            continue;
        if (n == 1) {
            out.push_back(AlgebraicReal::from_isolating(f, iv));
            continue;
        }
        Rational mid = iv.midpoint();
        stack.emplace_back(iv.lo, mid);
        stack.emplace_back(mid, iv.hi);
    }
    return out;
}

}  // namespace

std::vector<AlgebraicReal> real_roots(const UniPoly& p)
{
    if (p.is_zero())
        throw PreconditionError("real_roots of the zero polynomial");
    std::vector<AlgebraicReal> out;
    if (p.degree() == 0)
        return out;

    UniPoly q = squarefree_part(p);
    std::vector<Integer> ints = q.primitive_integer();
    const Integer lead = ints.back();
    const unsigned n = static_cast<unsigned>(q.degree());
    std::vector<Integer> monic(ints.size());
    for (unsigned i = 0; i < n; ++i)
        monic[i] = ints[i] * ipow(lead, n - 1 - i);
    monic[n] = 1;

    UniPoly rest = q;
    for (const Integer& z : integer_roots(monic)) {
        Rational r(z, lead);
        r.canonicalize();
        out.emplace_back(r);
        rest = divmod(rest, UniPoly::linear_root(r)).first;
    }

    if (rest.degree() >= 2) {
        Rational b = dyadic_root_bound(rest);
        if (SturmSequence(rest).count(-b, b) > 0) {
            for (const UniPoly& f : irreducible_factors_small(rest.monic()))
                for (auto& root : isolate(f))
                    out.push_back(std::move(root));
        }
    }

    std::sort(out.begin(), out.end(), [](const AlgebraicReal& x, const AlgebraicReal& y) {
        return compare(x, y) == std::strong_ordering::greater;
    });
    return out;
}

std::strong_ordering compare(const AlgebraicReal& a, const AlgebraicReal& b)
{
    if (a.is_rational() && b.is_rational()) {
        int c = cmp(a.interval().lo, b.interval().lo);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    if (a.minpoly() == b.minpoly()) {
        Rational lo = std::max(a.interval().lo, b.interval().lo);
        Rational hi = std::min(a.interval().hi, b.interval().hi);
        if (lo < hi && SturmSequence(a.minpoly()).count(lo, hi) >= 1)
            return std::strong_ordering::equal;
    }

    Interval ia = a.interval();
    Interval ib = b.interval();
    while (true) {
        if (ia.hi <= ib.lo)
            return std::strong_ordering::less;
        if (ib.hi <= ia.lo)
            return std::strong_ordering::greater;
        bool refine_a = !a.is_rational() && (b.is_rational() || ia.width() >= ib.width());
        if (refine_a)
            ia = a.bisect(ia);
        else
            ib = b.bisect(ib);
    }
}

Interval refine(const AlgebraicReal& a, const Rational& width)
{
    if (width <= 0)
        throw PreconditionError("refine width must be positive");
    if (a.is_rational())
        return a.interval();
    Interval iv = a.interval();
    while (iv.width() > width)
        iv = a.bisect(iv);
    return iv;
}

Interval refine_bits(const AlgebraicReal& a, int bits)
{
    Rational w(1);
    mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
    return refine(a, w);
}

namespace {

Integer floor_of(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

}  // namespace

std::string to_decimal(const AlgebraicReal& a, int digits)
{
    if (digits < 0)
        throw PreconditionError("negative digit count");
    if (auto r = a.rational(); r && r->get_den() == 1)
        return r->get_num().get_str();

    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const Rational half(1, 2);
    Integer n;
    if (auto r = a.rational()) {
        Rational x = *r * scale;
        n = floor_of(x + half);
        // Exact tie: round to even.
        if (Rational(n) - x == half && n % 2 != 0)
            n -= 1;
    } else {
        // An irrational value is never a tie, so stop once both ends round alike.
        Interval iv = a.interval();
        while (true) {
            Integer lo = floor_of(iv.lo * scale + half);
            Integer hi = floor_of(iv.hi * scale + half);
            if (lo == hi) {
                n = lo;
                break;
            }
            iv = a.bisect(iv);
        }
    }

    const bool negative = sgn(n) < 0;
    Integer mag = abs(n);
    std::string ip = Integer(mag / scale).get_str();
    std::string fp = Integer(mag % scale).get_str();
    if (fp.size() < static_cast<size_t>(digits))
        fp.insert(0, static_cast<size_t>(digits) - fp.size(), '0');
    std::string out = (negative ? "-" : "") + ip;
    if (digits > 0)
        out += "." + fp;
    return out;
}

}  // namespace drg
