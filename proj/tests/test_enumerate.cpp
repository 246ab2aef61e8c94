#include "doctest.h"

#include "drg/enumerate.hpp"
#include "drg/errors.hpp"

#include <algorithm>

using namespace drg;

namespace {

std::vector<std::string> run(std::int64_t k_max, const char* family, unsigned jobs = 1)
{
    EnumerationOptions opt;
    opt.k_max = k_max;
    opt.filter = parse_family_filter(family);
    opt.jobs = jobs;
    std::vector<std::string> out;
    enumerate_arrays(opt, [&](const EnumerationRecord& r) { out.push_back(r.array.to_string()); });
    return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s)
{
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("small primitive survey")
{
    auto got = run(6, "primitive");
    for (const char* a : {"{4,2,2;1,1,2}", "{5,4,2;1,1,4}", "{5,4,3;1,1,2}", "{6,3,3;1,1,2}", "{6,4,2;1,2,3}",
                          "{6,4,4;1,1,3}", "{6,5,2;1,1,3}"})
        CHECK(contains(got, a));
    // the odd graph on 35 vertices is the only extra array
    CHECK(got.size() == 8);
    CHECK(contains(got, "{4,3,3;1,1,2}"));
}

TEST_CASE("valency three has no primitive diameter-three arrays")
{
    CHECK(run(3, "primitive").empty());
}

TEST_CASE("small antipodal survey")
{
    auto got = run(8, "antipodal");
    CHECK(contains(got, "{8,6,1;1,1,8}"));
    CHECK(contains(got, "{8,6,1;1,3,8}"));
    CHECK(got == std::vector<std::string>{"{4,2,1;1,1,4}", "{5,2,1;1,2,5}", "{6,4,1;1,1,6}", "{6,5,1;1,1,6}",
                                          "{7,4,1;1,2,7}", "{8,4,1;1,1,8}", "{8,6,1;1,1,8}", "{8,6,1;1,3,8}"});
}

TEST_CASE("output order and determinism do not depend on workers")
{
    auto one = run(9, "all", 1);
    auto many = run(9, "all", 4);
    CHECK(one == many);
    auto sorted = one;
    std::sort(sorted.begin(), sorted.end(), [](const std::string& x, const std::string& y) {
        auto a = parse_array(x), b = parse_array(y);
        std::vector<std::int64_t> ka = a.b, kb = b.b;
        ka.insert(ka.end(), a.c.begin() + 1, a.c.end());
        kb.insert(kb.end(), b.c.begin() + 1, b.c.end());
        return ka < kb;
    });
    CHECK(one == sorted);
}

TEST_CASE("monotone cut")
{
    auto small = run(7, "all");
    auto large = run(9, "all");
    std::vector<std::string> prefix;
    for (const auto& s : large)
        if (parse_array(s).valency() <= 7)
            prefix.push_back(s);
    CHECK(prefix == small);
}

TEST_CASE("records only carry feasible arrays and round-trip through json")
{
    EnumerationOptions opt;
    opt.k_max = 6;
    std::vector<EnumerationRecord> recs;
    auto stats = enumerate_arrays(opt, [&](const EnumerationRecord& r) { recs.push_back(r); });
    CHECK(stats.emitted == static_cast<std::int64_t>(recs.size()));
    CHECK(stats.examined > stats.emitted);
    for (const auto& r : recs) {
        CHECK(r.report.overall);
        CHECK(record_from_json(nlohmann::json::parse(to_json(r).dump())) == r);
        std::int64_t m = 0;
        for (const auto& s : r.spectrum)
            m += s.multiplicity;
        CHECK(m == r.n);
    }
}

TEST_CASE("analyze_record")
{
    auto r = analyze_record(parse_array("{6,5,2;1,1,3}"));
    REQUIRE(r);
    CHECK(r->n == 57);
    REQUIRE(r->spectrum.size() == 4);
    CHECK(r->spectrum[1].value == "2.618");
    CHECK(r->spectrum[1].multiplicity == 18);
    CHECK(r->spectrum[1].minpoly == "x^2 - 3*x + 1");
    CHECK(r->verdict.tag == CoreTag::ProvenCoreComplete);
    CHECK(family_name(r->family) == "primitive");
    CHECK(!analyze_record(parse_array("{4,1,1;1,1,4}")));
}

TEST_CASE("family filter parsing")
{
    CHECK(parse_family_filter("all").accepts({true, true, false}));
    CHECK(!parse_family_filter("antipodal").accepts({true, true, false}));
    CHECK(parse_family_filter("bipartite").accepts({true, false, false}));
    CHECK_THROWS_AS(parse_family_filter("odd"), ParseError);
}
