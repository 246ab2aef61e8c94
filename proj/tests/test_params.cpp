#include "doctest.h"

#include "drg/errors.hpp"
#include "drg/params.hpp"

#include <cmath>

using namespace drg;

namespace {

ParameterSet ps_of(const char* text) { return derive_parameters(parse_array(text)); }

const char* const kSample[] = {"{2,1;1,1}",       "{3,2;1,1}",      "{4,2,2;1,1,2}",   "{6,5,2;1,1,3}",
                               "{5,4,2;1,1,4}",   "{6,4,2;1,2,3}",  "{18,15,9;1,1,10}", "{8,6,1;1,3,8}",
                               "{12,6,5;1,1,4}",  "{4,3,3;1,1,2}",  "{3,2,1;1,2,3}",   "{10,6,4;1,2,5}",
                               "{3,2,1,1,1;1,1,1,2,3}", "{3,2,2,2,1,1,1;1,1,1,1,1,1,3}"};

}  // namespace

TEST_CASE("array syntax")
{
    auto a = parse_array(" { 6, 5 ,2 ; 1,1, 3 } ");
    CHECK(a.b == std::vector<std::int64_t>{6, 5, 2});
    CHECK(a.c == std::vector<std::int64_t>{1, 1, 3});
    CHECK(a.to_string() == "{6,5,2;1,1,3}");
    CHECK(a.a_at(3) == 3);
    CHECK_THROWS_AS(parse_array("{6,5,2;1,1"), ParseError);
    CHECK_THROWS_AS(parse_array("{6,5;1,1,3}"), ParseError);
    CHECK_THROWS_AS(parse_array("{6,x;1,1}"), ParseError);
}

TEST_CASE("shape invariants")
{
    CHECK(shape_violations(parse_array("{6,5,2;1,1,3}")).empty());
    CHECK(!shape_violations(parse_array("{6,5,2;2,1,3}")).empty());  // c_1 != 1, c not monotone
    CHECK(!shape_violations(parse_array("{4,5,2;1,1,3}")).empty());  // b increasing
    CHECK(!shape_violations(parse_array("{3,2;1,4}")).empty());      // c_2 > b_0
    CHECK_THROWS_AS(derive_parameters(parse_array("{4,5,2;1,1,3}")), PreconditionError);
}

TEST_CASE("valencies and vertex counts")
{
    auto ps = ps_of("{6,5,2;1,1,3}");
    CHECK(ps.k == std::vector<std::int64_t>{1, 6, 30, 20});
    CHECK(ps.n == 57);
    auto qs = ps_of("{5,4,2;1,1,4}");
    CHECK(qs.k == std::vector<std::int64_t>{1, 5, 20, 10});
    CHECK(qs.n == 36);
    CHECK_THROWS_AS(valencies(parse_array("{5,4,3;1,2,4}")), InfeasibleError);
}

TEST_CASE("p tensor identities")
{
    for (const char* text : kSample) {
        CAPTURE(text);
        auto ps = ps_of(text);
        const int d = ps.diameter();
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j)
                for (int h = 0; h <= d; ++h) {
                    CHECK(ps.p(i, j, h) >= 0);
                    if (i == 0)
                        CHECK(ps.p(0, j, h) == (j == h ? 1 : 0));
                    CHECK(ps.k[static_cast<size_t>(h)] * ps.p(i, j, h) == ps.k[static_cast<size_t>(i)] * ps.p(h, j, i));
                    CHECK(ps.p(i, j, h) == ps.p(j, i, h));
                }
        for (int i = 0; i <= d; ++i)
            for (int h = 0; h <= d; ++h) {
                std::int64_t s = 0;
                for (int j = 0; j <= d; ++j)
                    s += ps.p(i, j, h);
                CHECK(s == ps.k[static_cast<size_t>(i)]);
            }
        for (int i = 1; i <= d; ++i) {
            CHECK(ps.p(1, i - 1, i) == ps.array.c_at(i));
            CHECK(ps.p(1, i, i) == ps.a[static_cast<size_t>(i)]);
            if (i < d)
                CHECK(ps.p(1, i + 1, i) == ps.array.b_at(i));
        }
    }
}

TEST_CASE("spectra")
{
    auto sd = spectral_data(ps_of("{4,2,2;1,1,2}"));
    REQUIRE(sd.theta.size() == 4);
    CHECK(sd.theta[0] == AlgebraicReal(4));
    CHECK(sd.theta[1].minpoly() == UniPoly({-1, -2, 1}));
    CHECK(sd.theta[1].to_double() == doctest::Approx(1 + std::sqrt(2.0)));
    CHECK(sd.theta[2].to_double() == doctest::Approx(1 - std::sqrt(2.0)));
    CHECK(sd.theta[3] == AlgebraicReal(-2));

    auto s2 = spectral_data(ps_of("{6,5,2;1,1,3}"));
    CHECK(s2.theta[1].minpoly() == UniPoly({1, -3, 1}));
    CHECK(s2.theta[3] == AlgebraicReal(-3));
    CHECK(s2.m == std::vector<std::int64_t>{1, 18, 18, 20});

    auto s3 = spectral_data(ps_of("{18,15,9;1,1,10}"));
    CHECK(s3.theta[1].minpoly() == s3.theta[3].minpoly());
    CHECK(to_decimal(s3.theta[1], 3) == "5.623");
    CHECK(to_decimal(s3.theta[3], 3) == "-4.623");
    CHECK(s3.m[1] == 171);
    CHECK(s3.m[3] == 171);
}

TEST_CASE("cosine sequences")
{
    auto ps = ps_of("{2,1;1,1}");
    auto sd = spectral_data(ps);
    // theta_2 = -phi, phi = (1 + sqrt5)/2 satisfies x^2 - x - 1 = 0
    auto phi = make_context(real_roots(UniPoly({-1, -1, 1}))[0]);
    CHECK(sd.theta[2].to_double() == doctest::Approx(-1.6180339887));
    FieldElement t = FieldElement::generator(sd.context[2]);  // -phi
    CHECK(sd.cosine(1, 2) == t * Rational(1, 2));
    CHECK(sd.cosine(2, 2) == (-t - FieldElement(sd.context[2], 1)) * Rational(1, 2));
    CHECK(sd.cosine(3, 2).is_zero());

    auto q = ps_of("{4,2,2;1,1,2}");
    auto sq = spectral_data(q);
    std::vector<Rational> want = {1, Rational(-1, 2), Rational(1, 4), Rational(-1, 8)};
    for (int i = 0; i <= 3; ++i)
        CHECK(sq.cosine(i, 3).as_rational() == want[static_cast<size_t>(i)]);
    // terminal identity (theta - a_3) w(3) = c_3 w(2)
    CHECK((Rational(-2) - 2) * Rational(-1, 8) == 2 * Rational(1, 4));
    for (int i = 0; i <= 3; ++i)
        CHECK(sq.cosine(i, 0).as_rational() == Rational(1));
}

TEST_CASE("multiplicity formula")
{
    auto ps = ps_of("{4,2,2;1,1,2}");
    auto sd = spectral_data(ps, false);
    Rational sum = 0;
    for (int i = 0; i <= 3; ++i)
        sum += ps.k[static_cast<size_t>(i)] * *sd.cosine(i, 3).as_rational() * *sd.cosine(i, 3).as_rational();
    CHECK(sum == Rational(21, 8));
    CHECK(sd.m[3] == 8);
    CHECK(sd.m[0] == 1);
}

TEST_CASE("spectral invariants over a sample of arrays")
{
    for (const char* text : kSample) {
        CAPTURE(text);
        auto ps = ps_of(text);
        auto sd = spectral_data(ps);
        const int d = ps.diameter();
        std::int64_t total = 0;
        for (int j = 0; j <= d; ++j) {
            total += sd.m[static_cast<size_t>(j)];
            CHECK(sd.cosine(0, j).as_rational() == Rational(1));
            CHECK(sd.cosine(1, j) * Rational(ps.array.valency()) == FieldElement::generator(sd.context[static_cast<size_t>(j)]));
            auto row = std::span(sd.w[static_cast<size_t>(j)]).first(static_cast<size_t>(d + 1));
            CHECK(sign_change_count(row) == j);
            // terminal identity
            auto th = FieldElement::generator(sd.context[static_cast<size_t>(j)]);
            CHECK((th - FieldElement(sd.context[static_cast<size_t>(j)], ps.a[static_cast<size_t>(d)])) * sd.cosine(d, j) ==
                  sd.cosine(d - 1, j) * Rational(ps.array.c_at(d)));
            // squared norm sum k_i w_i^2 = n / m_j
            FieldElement norm(sd.context[static_cast<size_t>(j)], 0);
            for (int i = 0; i <= d; ++i)
                norm += sd.cosine(i, j) * sd.cosine(i, j) * Rational(ps.k[static_cast<size_t>(i)]);
            Rational want(ps.n, sd.m[static_cast<size_t>(j)]);
            want.canonicalize();
            CHECK(norm.as_rational() == want);
        }
        CHECK(total == ps.n);
        CHECK(sd.m[0] == 1);

        // orthogonality of distinct rows, through enclosures
        for (int j = 0; j <= d; ++j)
            for (int l = j + 1; l <= d; ++l) {
                Interval s(Rational(0));
                for (int i = 0; i <= d; ++i)
                    s = s + sd.cosine(i, j).enclose(160) * sd.cosine(i, l).enclose(160) * Rational(ps.k[static_cast<size_t>(i)]);
                CHECK(s.contains(0));
                CHECK(s.width() < Rational(1, 100000) * Rational(1, 1000000000) * Rational(1, 100000));
            }

        // P Q = n I numerically
        for (int j = 0; j <= d; ++j)
            for (int l = 0; l <= d; ++l) {
                double acc = 0;
                for (int i = 0; i <= d; ++i)
                    acc += sd.P(ps, j, i).to_double() * sd.Q(i, l).to_double();
                CHECK(acc == doctest::Approx(j == l ? double(ps.n) : 0.0).epsilon(1e-9).scale(double(ps.n)));
            }

        if (sd.q) {
            for (int jj = 0; jj <= d; ++jj)
                for (int h = 0; h <= d; ++h)
                    CHECK(sd.q->at(0, jj, h).sign == (jj == h ? Sign::Positive : Sign::Zero));
        }
    }
}

TEST_CASE("Krein signs on feasible arrays")
{
    for (const char* text : {"{2,1;1,1}", "{6,5,2;1,1,3}"}) {
        auto ps = ps_of(text);
        auto sd = spectral_data(ps);
        const int d = ps.diameter();
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j)
                for (int h = 0; h <= d; ++h)
                    CHECK(sd.q->at(i, j, h).sign != Sign::Negative);
    }
}

TEST_CASE("sign changes of explicit rows")
{
    auto ps = ps_of("{4,2,2;1,1,2}");
    auto sd = spectral_data(ps, false);
    auto row = std::span(sd.w[3]).first(4);
    CHECK(sign_change_count(row) == 3);
    CHECK(sign_change_count(std::span(sd.w[0]).first(4)) == 0);
    auto c5 = spectral_data(ps_of("{2,1;1,1}"), false);
    CHECK(sign_change_count(std::span(c5.w[1]).first(3)) == 1);
}

TEST_CASE("family classification")
{
    auto check = [](const char* text, FamilyClass want) {
        auto ps = ps_of(text);
        auto sd = spectral_data(ps, false);
        CHECK(classify_family(ps) == want);
        CHECK(classify_family(ps, sd) == want);
    };
    check("{8,6,1;1,3,8}", {false, true, false});
    check("{6,5,2;1,1,3}", {false, false, true});
    check("{3,2,1,1,1;1,1,1,2,3}", {false, true, false});  // dodecahedron
    check("{3,2,2,2,1,1,1;1,1,1,1,1,1,3}", {false, false, true});  // Biggs-Smith
    check("{3,2,1;1,2,3}", {true, true, false});        // cube
    check("{4,3,3;1,1,2}", {false, false, true});
    CHECK_THROWS_AS(classify_family(ps_of("{2,1;1,1}")), PreconditionError);
}

TEST_CASE("precision override is read once")
{
    CHECK(default_precision_bits() >= 64);
}
