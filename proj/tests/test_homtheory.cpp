#include "doctest.h"

#include "fixtures.hpp"

#include "drg/errors.hpp"
#include "drg/homtheory.hpp"

#include <set>

using namespace drg;

namespace {

struct Analysed {
    ParameterSet ps;
    SpectralData sd;
};

Analysed analyse(const std::string& text)
{
    auto ps = derive_parameters(parse_array(text));
    auto sd = spectral_data(ps);
    return {std::move(ps), std::move(sd)};
}

using Triple = std::array<long, 3>;

std::vector<Triple> triples(const std::string& text, int e = 2, AlphaRange r = AlphaRange::Exclusive)
{
    auto a = analyse(text);
    std::vector<Triple> out;
    for (const auto& w : search_triples(a.ps, a.sd, e, r)) {
        CHECK(w.e == e);
        out.push_back({w.alpha, w.beta, w.gamma});
    }
    return out;
}

}  // namespace

TEST_CASE("witness lists for individual arrays")
{
    CHECK(triples("{4,2,2;1,1,2}") == std::vector<Triple>{{0, 1, 1}});
    CHECK(triples("{10,6,4;1,2,5}") == std::vector<Triple>{{0, 2, 2}, {1, 1, 3}, {2, 0, 4}});
    CHECK(triples("{6,5,2;1,1,3}").empty());
    // generalized hexagon pattern (0,1,s-1), (1,0,s) with s = 4
    CHECK(triples("{8,4,4;1,1,2}") == std::vector<Triple>{{0, 1, 3}, {1, 0, 4}});
}

TEST_CASE("witness sets match every candidate row")
{
    auto t = fixtures::load_tables();
    for (const auto& e : t.candidates) {
        if (e.array == fixtures::kNonIntegralRow)
            continue;
        CAPTURE(e.array);
        auto got = triples(e.array);
        std::set<Triple> want(e.witnesses.begin(), e.witnesses.end());
        CHECK(std::set<Triple>(got.begin(), got.end()) == want);
    }
}

TEST_CASE("inclusive alpha range admits alpha = a_e")
{
    CHECK(triples("{4,2,2;1,1,2}", 2, AlphaRange::Inclusive) == std::vector<Triple>{{0, 1, 1}, {1, 0, 2}});
    CHECK(triples("{7,6,6;1,1,2}", 2, AlphaRange::Exclusive).empty());
    auto inc = triples("{7,6,6;1,1,2}", 2, AlphaRange::Inclusive);
    CHECK(inc == std::vector<Triple>{{0, 2, 4}});
    CHECK(parse_alpha_range("inclusive") == AlphaRange::Inclusive);
    CHECK(to_string(AlphaRange::Exclusive) == "exclusive");
    CHECK_THROWS_AS(parse_alpha_range("open"), ParseError);
}

TEST_CASE("triple conditions hold for every witness")
{
    auto t = fixtures::load_tables();
    for (const auto& row : t.candidates) {
        if (row.array == fixtures::kNonIntegralRow)
            continue;
        auto a = analyse(row.array);
        const int d = a.ps.diameter();
        const auto& ps = a.ps;
        for (int e = 2; e < d; ++e)
            for (const auto& w : search_triples(ps, a.sd, e, AlphaRange::Inclusive)) {
                CAPTURE(row.array);
                CHECK(w.alpha <= ps.a[static_cast<size_t>(e)]);
                CHECK(w.beta + w.gamma == ps.array.b_at(e));
                CHECK(w.alpha != w.gamma);
                // gamma - alpha > theta_d + a_e
                CHECK(compare(AlgebraicReal(Rational(w.gamma - w.alpha - ps.a[static_cast<size_t>(e)])), a.sd.theta[static_cast<size_t>(d)]) ==
                      std::strong_ordering::greater);
                const auto& wm = a.sd.cosine(e - 1, d);
                const auto& w0 = a.sd.cosine(e, d);
                const auto& wp = a.sd.cosine(e + 1, d);
                FieldElement zero = (wm - w0) * Rational(w.alpha) + (wm - wp) * Rational(w.beta) + (w0 - wp) * Rational(w.gamma);
                CHECK(zero.is_zero());
                // regrouped form: (alpha + beta + c_e) w(e-1) + (gamma - alpha - theta_d + a_e) w(e) = 0
                auto theta = FieldElement::generator(a.sd.context[static_cast<size_t>(d)]);
                FieldElement regrouped = wm * Rational(w.alpha + w.beta + ps.array.c_at(e)) +
                                         w0 * (FieldElement(a.sd.context[static_cast<size_t>(d)], w.gamma - w.alpha + ps.a[static_cast<size_t>(e)]) - theta);
                CHECK(regrouped.is_zero());
            }
    }
}

TEST_CASE("triple search preconditions")
{
    auto a = analyse("{6,5,2;1,1,3}");
    CHECK_THROWS_AS(search_triples(a.ps, a.sd, 1), PreconditionError);
    CHECK_THROWS_AS(search_triples(a.ps, a.sd, 3), PreconditionError);
}

TEST_CASE("complete core bound")
{
    auto c5 = analyse("{2,1;1,1}");
    CHECK(complete_core_test(c5.ps, c5.sd).theta_d_vs_minus2 == Comparison::Greater);
    CHECK(!complete_core_test(c5.ps, c5.sd).bound);
    auto eq = analyse("{12,6,5;1,1,4}");
    auto r = complete_core_test(eq.ps, eq.sd);
    CHECK(r.theta_d_vs_minus2 == Comparison::Equal);
    REQUIRE(r.bound);
    CHECK(*r.bound == 12);
    auto lt = analyse("{6,5,2;1,1,3}");
    CHECK(complete_core_test(lt.ps, lt.sd).theta_d_vs_minus2 == Comparison::Less);
}

TEST_CASE("classification")
{
    auto verdict = [](const std::string& text) {
        auto a = analyse(text);
        return classify(a.ps, a.sd, classify_family(a.ps, a.sd));
    };
    auto v = verdict("{6,5,2;1,1,3}");
    CHECK(v.tag == CoreTag::ProvenCoreComplete);
    CHECK(v.witnesses.empty());

    auto c = verdict("{4,2,2;1,1,2}");
    CHECK(c.tag == CoreTag::SmallerDiameterCandidate);
    REQUIRE(c.witnesses.size() == 1);
    CHECK(c.witnesses[0] == TripleWitness{2, 0, 1, 1});

    auto o7 = verdict("{4,3,3;1,1,2}");
    CHECK(o7.tag == CoreTag::Inconclusive);
    CHECK(o7.witnesses.empty());
    CHECK(std::find(o7.notes.begin(), o7.notes.end(),
                    "far subgraph connectivity not established: a_3 = 2 <= theta_1") != o7.notes.end());

    for (const auto& a : fixtures::kAntipodal) {
        CAPTURE(a);
        auto w = verdict(a);
        CHECK(w.tag == CoreTag::NoSmallDiameterEndomorphism);
        CHECK(w.witnesses.empty());
    }
    CHECK(verdict("{3,2,1;1,2,3}").tag == CoreTag::BipartiteCoreK2);
    CHECK(verdict("{3;1}").tag == CoreTag::ProvenCore);
    // Petersen: theta_d = -2 exactly, so no upgrade to ProvenCore
    CHECK(verdict("{3,2;1,1}").tag == CoreTag::ProvenCoreComplete);
}

TEST_CASE("every core-complete row classifies as such")
{
    auto t = fixtures::load_tables();
    for (const auto& e : t.core_complete) {
        CAPTURE(e.array);
        auto a = analyse(e.array);
        CHECK(search_triples(a.ps, a.sd, 2).empty());
        CHECK(compare(AlgebraicReal(Rational(a.ps.a[3])), a.sd.theta[1]) == std::strong_ordering::greater);
        CHECK(classify(a.ps, a.sd, classify_family(a.ps, a.sd)).tag == CoreTag::ProvenCoreComplete);
    }
}

TEST_CASE("verdict json")
{
    auto a = analyse("{10,6,4;1,2,5}");
    auto v = classify(a.ps, a.sd, classify_family(a.ps, a.sd));
    auto j = to_json(v);
    CHECK(j["tag"] == "SmallerDiameterCandidate");
    CHECK(j["witnesses"]["2"] == nlohmann::json::parse("[[0,2,2],[1,1,3],[2,0,4]]"));
    CHECK(core_verdict_from_json(j) == v);
    for (auto tag : {CoreTag::BipartiteCoreK2, CoreTag::ProvenCore, CoreTag::ProvenCoreComplete,
                     CoreTag::SmallerDiameterCandidate, CoreTag::NoSmallDiameterEndomorphism, CoreTag::Inconclusive})
        CHECK(parse_core_tag(to_string(tag)) == tag);
}
