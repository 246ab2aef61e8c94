#include "drg/params.hpp"

#include "drg/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace drg {

namespace {

std::int64_t checked(__int128 v, const char* what)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw UnsupportedError(std::string("64-bit overflow computing ") + what);
    return static_cast<std::int64_t>(v);
}

std::string idx(int i, int j, int h)
{
    return "p_{" + std::to_string(i) + "," + std::to_string(j) + "}^" + std::to_string(h);
}

}  // namespace

std::int64_t IntersectionArray::b_at(int i) const
{
    if (i < 0 || i > diameter())
        throw PreconditionError("b index out of range");
    return i == diameter() ? 0 : b[static_cast<size_t>(i)];
}

std::int64_t IntersectionArray::c_at(int i) const
{
    if (i < 0 || i > diameter())
        throw PreconditionError("c index out of range");
    return i == 0 ? 0 : c[static_cast<size_t>(i - 1)];
}

std::string IntersectionArray::to_string() const
{
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < b.size(); ++i)
        os << (i ? "," : "") << b[i];
    os << ";";
    for (size_t i = 0; i < c.size(); ++i)
        os << (i ? "," : "") << c[i];
    os << "}";
    return os.str();
}

IntersectionArray parse_array(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s.push_back(ch);
    auto fail = [&](const std::string& why) -> IntersectionArray {
        throw ParseError("malformed intersection array '" + std::string(text) + "': " + why);
    };
    if (s.size() < 2 || s.front() != '{' || s.back() != '}')
        return fail("expected {b0,...;c1,...}");
    std::string body = s.substr(1, s.size() - 2);
    auto semi = body.find(';');
    if (semi == std::string::npos || body.find(';', semi + 1) != std::string::npos)
        return fail("expected exactly one ';'");

    auto parse_list = [&](const std::string& part) {
        std::vector<std::int64_t> out;
        std::stringstream ss(part);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty())
                fail("empty entry");
            size_t pos = 0;
            long long v = 0;
            try {
                v = std::stoll(item, &pos);
            } catch (const std::exception&) {
                fail("'" + item + "' is not an integer");
            }
            if (pos != item.size())
                fail("'" + item + "' is not an integer");
            out.push_back(v);
        }
        if (!part.empty() && part.back() == ',')
            fail("trailing ','");
        return out;
    };
    IntersectionArray arr{parse_list(body.substr(0, semi)), parse_list(body.substr(semi + 1))};
    if (arr.b.empty() || arr.c.empty())
        return fail("empty b or c list");
    if (arr.b.size() != arr.c.size())
        return fail("b and c lists differ in length");
    return arr;
}

std::vector<std::string> shape_violations(const IntersectionArray& arr)
{
    std::vector<std::string> out;
    const int d = arr.diameter();
    if (d < 1 || arr.c.size() != arr.b.size()) {
        out.push_back("b and c must be nonempty lists of equal length");
        return out;
    }
    for (int i = 0; i < d; ++i)
        if (arr.b[static_cast<size_t>(i)] < 1)
            out.push_back("b_" + std::to_string(i) + " < 1");
    for (int i = 1; i <= d; ++i)
        if (arr.c_at(i) < 1)
            out.push_back("c_" + std::to_string(i) + " < 1");
    if (!out.empty())
        return out;
    if (arr.c_at(1) != 1)
        out.push_back("c_1 != 1");
    for (int i = 1; i < d; ++i)
        if (arr.b_at(i) > arr.b_at(i - 1))
            out.push_back("b_" + std::to_string(i) + " > b_" + std::to_string(i - 1));
    for (int i = 2; i <= d; ++i)
        if (arr.c_at(i) < arr.c_at(i - 1))
            out.push_back("c_" + std::to_string(i) + " < c_" + std::to_string(i - 1));
    for (int i = 1; i <= d; ++i) {
        if (arr.c_at(i) > arr.valency())
            out.push_back("c_" + std::to_string(i) + " > b_0");
        if (arr.a_at(i) < 0)
            out.push_back("a_" + std::to_string(i) + " < 0");
    }
    return out;
}

std::int64_t ParameterSet::p(int i, int j, int h) const
{
    const int d1 = diameter() + 1;
    if (i < 0 || j < 0 || h < 0 || i >= d1 || j >= d1 || h >= d1)
        throw PreconditionError("intersection number index out of range");
    return p_flat[static_cast<size_t>((i * d1 + j) * d1 + h)];
}

std::vector<std::int64_t> valencies(const IntersectionArray& arr)
{
    const int d = arr.diameter();
    std::vector<std::int64_t> k(static_cast<size_t>(d) + 1);
    k[0] = 1;
    for (int i = 0; i < d; ++i) {
        __int128 num = static_cast<__int128>(k[static_cast<size_t>(i)]) * arr.b_at(i);
        std::int64_t c = arr.c_at(i + 1);
        if (num % c != 0)
            throw InfeasibleError("valency k_" + std::to_string(i + 1) + " = " +
                                  std::to_string(static_cast<long long>(k[static_cast<size_t>(i)])) + "*" +
                                  std::to_string(arr.b_at(i)) + "/" + std::to_string(c) +
                                  " is not an integer");
        k[static_cast<size_t>(i) + 1] = checked(num / c, "valencies");
    }
    return k;
}

ParameterSet derive_parameters(const IntersectionArray& arr)
{
    if (auto v = shape_violations(arr); !v.empty())
        throw PreconditionError("invalid intersection array " + arr.to_string() + ": " + v.front());

    ParameterSet ps;
    ps.array = arr;
    const int d = arr.diameter();
    const int d1 = d + 1;
    ps.k = valencies(arr);
    __int128 n = 0;
    for (auto v : ps.k)
        n += v;
    ps.n = checked(n, "vertex count");
    ps.a.resize(static_cast<size_t>(d1));
    for (int i = 0; i <= d; ++i)
        ps.a[static_cast<size_t>(i)] = arr.a_at(i);

    // X[i][j] holds the coefficients of A_i A_j in the basis A_0..A_d.
    using Row = std::vector<__int128>;
    std::vector<std::vector<Row>> X(static_cast<size_t>(d1), std::vector<Row>(static_cast<size_t>(d1), Row(static_cast<size_t>(d1), 0)));
    auto times_adjacency = [&](const Row& x) {
        Row y(static_cast<size_t>(d1), 0);
        for (int h = 0; h <= d; ++h) {
            __int128 v = x[static_cast<size_t>(h)];
            if (v == 0)
                continue;
            if (h > 0)
                y[static_cast<size_t>(h - 1)] += v * arr.b_at(h - 1);
            y[static_cast<size_t>(h)] += v * arr.a_at(h);
            if (h < d)
                y[static_cast<size_t>(h + 1)] += v * arr.c_at(h + 1);
        }
        return y;
    };
    for (int j = 0; j <= d; ++j) {
        X[0][static_cast<size_t>(j)][static_cast<size_t>(j)] = 1;
        X[1][static_cast<size_t>(j)] = times_adjacency(X[0][static_cast<size_t>(j)]);
    }
    for (int i = 1; i < d; ++i) {
        const std::int64_t c_next = arr.c_at(i + 1);
        for (int j = 0; j <= d; ++j) {
            Row y = times_adjacency(X[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            for (int h = 0; h <= d; ++h) {
                __int128 v = y[static_cast<size_t>(h)] - arr.a_at(i) * X[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(h)] -
                             arr.b_at(i - 1) * X[static_cast<size_t>(i - 1)][static_cast<size_t>(j)][static_cast<size_t>(h)];
                if (v % c_next != 0)
                    throw InfeasibleError("intersection number " + idx(i + 1, j, h) + " is not an integer");
                X[static_cast<size_t>(i + 1)][static_cast<size_t>(j)][static_cast<size_t>(h)] = v / c_next;
            }
        }
    }

    ps.p_flat.resize(static_cast<size_t>(d1 * d1 * d1));
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j)
            for (int h = 0; h <= d; ++h) {
                __int128 v = X[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(h)];
                if (v < 0)
                    throw InfeasibleError("intersection number " + idx(i, j, h) + " is negative");
                ps.p_flat[static_cast<size_t>((i * d1 + j) * d1 + h)] = checked(v, "intersection numbers");
            }
    return ps;
}

UniPoly intersection_polynomial(const IntersectionArray& arr)
{
    const int d = arr.diameter();
    const UniPoly x = UniPoly::monomial(1);
    UniPoly prev = UniPoly::constant(1);
    UniPoly cur = x - UniPoly::constant(arr.a_at(0));
    for (int i = 1; i <= d; ++i) {
        UniPoly next = (x - UniPoly::constant(arr.a_at(i))) * cur -
                       prev * Rational(arr.b_at(i - 1) * arr.c_at(i));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<AlgebraicReal> spectrum(const ParameterSet& ps)
{
    const int d = ps.diameter();
    auto roots = real_roots(intersection_polynomial(ps.array));
    if (static_cast<int>(roots.size()) != d + 1)
        throw InfeasibleError("intersection matrix has " + std::to_string(roots.size()) +
                              " distinct real eigenvalues, expected " + std::to_string(d + 1));
    if (compare(roots.front(), AlgebraicReal(Rational(ps.array.valency()))) != 0)
        throw InternalError("largest eigenvalue differs from b_0 for " + ps.array.to_string());
    return roots;
}

std::vector<FieldElement> cosine_sequence(const ParameterSet& ps, const FieldContext& theta)
{
    const auto& arr = ps.array;
    const int d = ps.diameter();
    const FieldElement t = FieldElement::generator(theta);
    std::vector<FieldElement> w;
    w.reserve(static_cast<size_t>(d) + 2);
    w.emplace_back(theta, Rational(1));
    w.push_back(t * Rational(1, arr.valency()));
    for (int r = 1; r < d; ++r) {
        FieldElement next = (t - FieldElement(theta, Rational(arr.a_at(r)))) * w[static_cast<size_t>(r)] -
                            w[static_cast<size_t>(r - 1)] * Rational(arr.c_at(r));
        w.push_back(next * Rational(1, arr.b_at(r)));
    }
    FieldElement lhs = (t - FieldElement(theta, Rational(arr.a_at(d)))) * w[static_cast<size_t>(d)];
    FieldElement rhs = w[static_cast<size_t>(d - 1)] * Rational(arr.c_at(d));
    if (!(lhs == rhs))
        throw InternalError("terminal cosine identity fails for " + theta->to_string() + " on " +
                            arr.to_string());
    w.emplace_back(theta, Rational(0));
    return w;
}

std::vector<std::int64_t> multiplicities(const ParameterSet& ps,
                                         const std::vector<std::vector<FieldElement>>& cosines)
{
    const int d = ps.diameter();
    std::vector<std::int64_t> m;
    __int128 total = 0;
    for (size_t j = 0; j < cosines.size(); ++j) {
        const auto& row = cosines[j];
        FieldElement s(row.front().context_ptr(), Rational(0));
        for (int i = 0; i <= d; ++i)
            s += row[static_cast<size_t>(i)] * row[static_cast<size_t>(i)] * Rational(ps.k[static_cast<size_t>(i)]);
        FieldElement mj = FieldElement(s.context_ptr(), Rational(ps.n)) / s;
        auto q = mj.as_rational();
        if (!q)
            throw InfeasibleError("multiplicity of eigenvalue " + std::to_string(j) + " is irrational");
        if (q->get_den() != 1 || *q <= 0)
            throw InfeasibleError("multiplicity of eigenvalue " + std::to_string(j) + " is " + q->get_str() +
                                  ", not a positive integer");
        if (!q->get_num().fits_slong_p())
            throw UnsupportedError("multiplicity exceeds 64 bits");
        m.push_back(q->get_num().get_si());
        total += m.back();
    }
    if (m.front() != 1 || total != ps.n)
        throw InternalError("multiplicities do not sum to n for " + ps.array.to_string());
    return m;
}

std::string_view to_string(Sign s)
{
    switch (s) {
    case Sign::Negative:
        return "negative";
    case Sign::Zero:
        return "zero";
    case Sign::Positive:
        return "positive";
    }
    return "?";
}

bool KreinTensor::any_heuristic_zero() const
{
    for (const auto& e : entries_)
        if (e.heuristic_zero)
            return true;
    return false;
}

const FieldElement& SpectralData::cosine(int i, int j) const
{
    if (j < 0 || j > diameter() || i < 0 || i > diameter() + 1)
        throw PreconditionError("cosine index out of range");
    return w[static_cast<size_t>(j)][static_cast<size_t>(i)];
}

FieldElement SpectralData::P(const ParameterSet& ps, int j, int i) const
{
    return cosine(i, j) * Rational(ps.k.at(static_cast<size_t>(i)));
}

FieldElement SpectralData::Q(int i, int j) const
{
    return cosine(i, j) * Rational(m.at(static_cast<size_t>(j)));
}

int default_precision_bits()
{
    static const int bits = [] {
        const char* env = std::getenv("DRG_PRECISION_BITS");
        if (!env || !*env)
            return 256;
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 64 || v > 65536)
            return 256;
        return static_cast<int>(v);
    }();
    return bits;
}

namespace {

Sign to_sign(int s)
{
    return s < 0 ? Sign::Negative : s > 0 ? Sign::Positive : Sign::Zero;
}

// All irrational cosine rows among `js` live in one field: the exact path.
const FieldContext* common_context(const SpectralData& sd, std::initializer_list<int> js)
{
    const FieldContext* common = nullptr;
    for (int j : js) {
        const auto& ctx = sd.context[static_cast<size_t>(j)];
        if (ctx->is_rational())
            continue;
        if (common && *common != ctx)
            return nullptr;
        common = &ctx;
    }
    return common ? common : &sd.context[static_cast<size_t>(*js.begin())];
}

}  // namespace

KreinTensor krein_parameters(const SpectralData& sd, const ParameterSet& ps, int precision_bits)
{
    const int d = ps.diameter();
    KreinTensor q(d);
    const Rational threshold(Rational(1) / Rational(Integer("1000000000000000000000000000000")));

    std::vector<std::vector<Interval>> encl;
    int encl_bits = 0;
    auto enclosures = [&](int bits) -> const std::vector<std::vector<Interval>>& {
        if (encl_bits != bits) {
            encl.assign(static_cast<size_t>(d) + 1, {});
            for (int j = 0; j <= d; ++j)
                for (int r = 0; r <= d; ++r)
                    encl[static_cast<size_t>(j)].push_back(sd.cosine(r, j).enclose(bits));
            encl_bits = bits;
        }
        return encl;
    };

    for (int i = 0; i <= d; ++i)
        for (int j = i; j <= d; ++j)
            for (int h = 0; h <= d; ++h) {
                const Rational scale(Rational(sd.m[static_cast<size_t>(i)]) * Rational(sd.m[static_cast<size_t>(j)]) /
                                     Rational(ps.n));
                KreinEntry e;
                if (const FieldContext* ctx = common_context(sd, {i, j, h})) {
                    auto at = [&](int r, int jj) {
                        const FieldElement& x = sd.cosine(r, jj);
                        return x.context_ptr() == *ctx ? x : x.lifted(*ctx);
                    };
                    FieldElement sum(*ctx, Rational(0));
                    for (int r = 0; r <= d; ++r)
                        sum += at(r, i) * at(r, j) * at(r, h) * Rational(ps.k[static_cast<size_t>(r)]);
                    sum *= scale;
                    e.exact = true;
                    e.sign = to_sign(sum.sign());
                    e.enclosure = sum.enclose(precision_bits);
                } else {
                    for (int bits = precision_bits;; bits *= 2) {
                        const auto& en = enclosures(bits);
                        Interval sum(Rational(0));
                        for (int r = 0; r <= d; ++r)
                            sum = sum + en[static_cast<size_t>(i)][static_cast<size_t>(r)] *
                                            en[static_cast<size_t>(j)][static_cast<size_t>(r)] *
                                            en[static_cast<size_t>(h)][static_cast<size_t>(r)] *
                                            Rational(ps.k[static_cast<size_t>(r)]);
                        sum = sum * scale;
                        e.enclosure = sum;
                        if (auto s = sum.sign()) {
                            e.sign = to_sign(*s);
                            break;
                        }
                        if (sum.width() < threshold || bits >= (1 << 14)) {
                            e.sign = Sign::Zero;
                            e.heuristic_zero = true;
                            break;
                        }
                    }
                }
                q.at(i, j, h) = e;
                q.at(j, i, h) = e;
            }
    return q;
}

SpectralData spectral_data(const ParameterSet& ps, bool with_krein)
{
    SpectralData sd;
    sd.theta = spectrum(ps);
    for (const auto& t : sd.theta) {
        sd.context.push_back(make_context(t));
        sd.w.push_back(cosine_sequence(ps, sd.context.back()));
    }
    sd.m = multiplicities(ps, sd.w);
    if (with_krein)
        sd.q = krein_parameters(sd, ps);
    return sd;
}

int sign_change_count(std::span<const FieldElement> row)
{
    // zeros are skipped
    int changes = 0, last = 0;
    for (const auto& x : row) {
        const int s = x.sign();
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

FamilyClass classify_family(const ParameterSet& ps)
{
    if (ps.array.valency() <= 2)
        throw PreconditionError("family classification needs b_0 >= 3 (cycles and paths are out of scope)");
    const int d = ps.diameter();
    FamilyClass fc;
    fc.bipartite = true;
    for (auto a : ps.a)
        if (a != 0)
            fc.bipartite = false;
    fc.antipodal = d >= 2;
    for (int i = 1; i < d; ++i)
        if (ps.p(d, d, i) != 0)
            fc.antipodal = false;
    fc.primitive = !fc.bipartite && !fc.antipodal;
    return fc;
}

FamilyClass classify_family(const ParameterSet& ps, const SpectralData& sd)
{
    FamilyClass fc = classify_family(ps);
    bool least_is_minus_k = compare(sd.theta.back(), AlgebraicReal(Rational(-ps.array.valency()))) == 0;
    if (least_is_minus_k != fc.bipartite)
        throw InternalError("bipartite test disagrees with theta_d = -b_0 for " + ps.array.to_string());
    return fc;
}

}  // namespace drg
