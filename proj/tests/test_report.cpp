#include "doctest.h"

#include "fixtures.hpp"

#include "drg/errors.hpp"
#include "drg/report.hpp"

using namespace drg;

namespace {

EnumerationRecord rec(const std::string& text)
{
    auto r = analyze_record(parse_array(text));
    REQUIRE(r);
    return *r;
}

}  // namespace

TEST_CASE("row rendering")
{
    auto row = make_row(rec("{6,5,2;1,1,3}"));
    CHECK(row.vertices == "v = 57 = 1 + 6 + 30 + 20");
    CHECK(row.eigenvalues == "6^{1} 2.618^{18} 0.382^{18} -3^{20}");
    CHECK(row.array == "{6,5,2;1,1,3}");
    CHECK(row.witnesses.empty());
    CHECK(make_row(rec("{4,2,2;1,1,2}")).witnesses == "(0, 1, 1)");
    CHECK(make_row(rec("{5,4,2;1,1,4}")).witnesses == "(0, 1, 1); (1, 0, 2)");
}

TEST_CASE("markdown table")
{
    auto md = emit_table({rec("{6,5,2;1,1,3}")}, TableFormat::Markdown);
    CHECK(md.find("| v = 57 = 1 + 6 + 30 + 20 | 6^{1} 2.618^{18} 0.382^{18} -3^{20} | {6,5,2;1,1,3} |") !=
          std::string::npos);
    CHECK(md.find("witnesses") == std::string::npos);
    auto with = emit_table({rec("{6,5,2;1,1,3}"), rec("{4,2,2;1,1,2}")}, TableFormat::Markdown);
    CHECK(with.find("| witnesses |") != std::string::npos);
    CHECK(with.find("| (0, 1, 1) |") != std::string::npos);
    // sorted: {4,...} before {6,...}
    CHECK(with.find("{4,2,2;1,1,2}") < with.find("{6,5,2;1,1,3}"));
}

TEST_CASE("empty input gives a header-only table")
{
    auto md = emit_table({}, TableFormat::Markdown);
    CHECK(md == "| vertices | eigenvalues | intersection array |\n|---|---|---|\n");
    CHECK(emit_table({}, TableFormat::Csv) == "vertices,eigenvalues,intersection array\r\n");
    CHECK(emit_table({}, TableFormat::JsonLines).empty());
}

TEST_CASE("csv quoting")
{
    auto csv = emit_table({rec("{4,2,2;1,1,2}")}, TableFormat::Csv);
    CHECK(csv.find("\"{4,2,2;1,1,2}\"") != std::string::npos);
    CHECK(csv.find("\"(0, 1, 1)\"") != std::string::npos);
    CHECK(csv.find("\r\n") != std::string::npos);
}

TEST_CASE("mixed diameters are rejected")
{
    CHECK_THROWS_AS(emit_table({rec("{6,5,2;1,1,3}"), rec("{3,2;1,1}")}, TableFormat::Markdown), PreconditionError);
}

TEST_CASE("json-lines round trip and stable sort")
{
    std::vector<EnumerationRecord> in = {rec("{10,6,4;1,2,5}"), rec("{4,2,2;1,1,2}"), rec("{6,5,2;1,1,3}")};
    auto text = emit_table(in, TableFormat::JsonLines);
    auto back = parse_json_lines(text);
    REQUIRE(back.size() == 3);
    CHECK(back[0] == in[1]);
    CHECK(back[1] == in[2]);
    CHECK(back[2] == in[0]);
    CHECK(emit_table(back, TableFormat::JsonLines) == text);
    CHECK_THROWS_AS(parse_json_lines("{not json}\n"), ParseError);
}

TEST_CASE("every reference row renders identically")
{
    auto t = fixtures::load_tables();
    for (const auto* rows : {&t.core_complete, &t.candidates})
        for (const auto& e : *rows) {
            if (e.array == fixtures::kNonIntegralRow)
                continue;
            CAPTURE(e.array);
            auto row = make_row(rec(e.array));
            CHECK(row.vertices == e.vertices);
            CHECK(row.eigenvalues == e.eigenvalues);
            CHECK(row.array == e.array);
            if (!e.witnesses.empty()) {
                std::string want;
                for (const auto& w : e.witnesses)
                    want += (want.empty() ? "" : "; ") + ("(" + std::to_string(w[0]) + ", " + std::to_string(w[1]) +
                                                          ", " + std::to_string(w[2]) + ")");
                CHECK(row.witnesses == want);
            }
        }
}
