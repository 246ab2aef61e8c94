#pragma once

// Floating-point rechecker for the triple search, sharing no code with the
// exact engine: the least eigenvalue comes from bisection on the inertia of
// the tridiagonal intersection matrix, cosines from the three-term
// recurrence, and every (alpha, beta) pair is scanned at 60 digits.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<60>>;

struct Array {
    std::vector<std::int64_t> b;  // b_0..b_{d-1}
    std::vector<std::int64_t> c;  // c_1..c_d

    int d() const { return static_cast<int>(b.size()); }
    std::int64_t k() const { return b[0]; }
    std::int64_t bi(int i) const { return i < d() ? b[static_cast<size_t>(i)] : 0; }
    std::int64_t ci(int i) const { return i == 0 ? 0 : c[static_cast<size_t>(i - 1)]; }
    std::int64_t ai(int i) const { return k() - bi(i) - ci(i); }
};

// Number of eigenvalues of the intersection matrix strictly below x.
inline int count_below(const Array& a, const Real& x)
{
    int neg = 0;
    Real piv = 0;
    for (int i = 0; i <= a.d(); ++i) {
        Real v = Real(a.ai(i)) - x;
        if (i > 0)
            v -= Real(a.bi(i - 1) * a.ci(i)) / piv;
        if (v == 0)
            v = Real("1e-55");
        if (v < 0)
            ++neg;
        piv = v;
    }
    return neg;
}

inline Real least_eigenvalue(const Array& a)
{
    Real lo = -Real(a.k()) - 1, hi = Real(a.k()) + 1;
    for (int it = 0; it < 230; ++it) {
        Real mid = (lo + hi) / 2;
        if (count_below(a, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return (lo + hi) / 2;
}

inline std::vector<Real> cosines(const Array& a, const Real& theta)
{
    const int d = a.d();
    std::vector<Real> w(static_cast<size_t>(d + 2), Real(0));
    w[0] = 1;
    w[1] = theta / Real(a.k());
    for (int i = 1; i < d; ++i)
        w[static_cast<size_t>(i + 1)] =
            ((theta - Real(a.ai(i))) * w[static_cast<size_t>(i)] - Real(a.ci(i)) * w[static_cast<size_t>(i - 1)]) /
            Real(a.bi(i));
    return w;
}

struct Triple {
    std::int64_t alpha, beta, gamma;
    auto operator<=>(const Triple&) const = default;
};

struct Result {
    std::vector<Triple> triples;
    // Set when some quantity landed in the gap between "clearly zero" and
    // "clearly nonzero"; the caller treats that as a disagreement.
    bool ambiguous = false;
};

// alpha ranges over 0..alpha_cap(a_e); pass inclusive = false for 0..a_e-1.
inline Result scan(const Array& a, int e, bool inclusive)
{
    if (e < 2 || e > a.d() - 1)
        throw std::invalid_argument("e out of range");
    const Real zero_tol("1e-45"), gap_tol("1e-20");
    const Real theta = least_eigenvalue(a);
    const auto w = cosines(a, theta);
    const Real wp = w[static_cast<size_t>(e - 1)], wc = w[static_cast<size_t>(e)], wn = w[static_cast<size_t>(e + 1)];
    const std::int64_t a_e = a.ai(e), b_e = a.bi(e);
    Result r;
    auto classify = [&](const Real& x) {
        const Real m = abs(x);
        if (m < zero_tol)
            return 0;
        if (m < gap_tol)
            r.ambiguous = true;
        return x < 0 ? -1 : 1;
    };
    for (std::int64_t alpha = 0; alpha <= (inclusive ? a_e : a_e - 1); ++alpha)
        for (std::int64_t beta = 0; beta <= b_e; ++beta) {
            const std::int64_t gamma = b_e - beta;
            if (alpha == gamma)
                continue;
            // need theta_d + a_e < gamma - alpha strictly
            if (classify(Real(gamma - alpha - a_e) - theta) <= 0)
                continue;
            const Real s = Real(alpha) * (wp - wc) + Real(beta) * (wp - wn) + Real(gamma) * (wc - wn);
            if (classify(s) == 0)
                r.triples.push_back({alpha, beta, gamma});
        }
    return r;
}

}  // namespace oracle
