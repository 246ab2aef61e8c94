#include "drg/report.hpp"

#include "drg/errors.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace drg {

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep)
{
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

// Pipes cannot appear in our cells, but escape them anyway so a stray one
// does not split a markdown row.
std::string md_cell(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        if (ch == '|')
            out += '\\';
        out += ch;
    }
    return out;
}

}  // namespace

TableRow make_row(const EnumerationRecord& r)
{
    TableRow row;
    std::vector<std::string> ks;
    for (auto v : r.k)
        ks.push_back(std::to_string(v));
    row.vertices = "v = " + std::to_string(r.n) + " = " + join(ks, " + ");

    std::vector<std::string> ev;
    for (const auto& s : r.spectrum)
        ev.push_back(s.value + "^{" + std::to_string(s.multiplicity) + "}");
    row.eigenvalues = join(ev, " ");
    row.array = r.array.to_string();

    std::vector<std::string> ws;
    for (const auto& w : r.verdict.witnesses)
        ws.push_back("(" + std::to_string(w.alpha) + ", " + std::to_string(w.beta) + ", " + std::to_string(w.gamma) + ")");
    row.witnesses = join(ws, "; ");
    return row;
}

TableFormat parse_table_format(std::string_view s)
{
    if (s == "markdown")
        return TableFormat::Markdown;
    if (s == "csv")
        return TableFormat::Csv;
    if (s == "json-lines" || s == "jsonl")
        return TableFormat::JsonLines;
    throw ParseError("unknown table format '" + std::string(s) + "'");
}

std::string emit_table(std::vector<EnumerationRecord> records, TableFormat format)
{
    for (const auto& r : records)
        if (r.array.diameter() != records.front().array.diameter())
            throw PreconditionError("records mix diameters " + std::to_string(records.front().array.diameter()) +
                                    " and " + std::to_string(r.array.diameter()));

    // b then c, which is the array tuple read left to right.
    std::stable_sort(records.begin(), records.end(), [](const auto& x, const auto& y) {
        return std::tie(x.array.b, x.array.c) < std::tie(y.array.b, y.array.c);
    });

    std::ostringstream out;
    if (format == TableFormat::JsonLines) {
        for (const auto& r : records)
            out << to_json(r).dump() << '\n';
        return out.str();
    }

    const bool with_witnesses = std::any_of(records.begin(), records.end(),
                                            [](const auto& r) { return !r.verdict.witnesses.empty(); });
    std::vector<std::string> header = {"vertices", "eigenvalues", "intersection array"};
    if (with_witnesses)
        header.push_back("witnesses");

    auto cells = [&](const TableRow& row) {
        std::vector<std::string> c = {row.vertices, row.eigenvalues, row.array};
        if (with_witnesses)
            c.push_back(row.witnesses);
        return c;
    };

    if (format == TableFormat::Markdown) {
        out << "| " << join(header, " | ") << " |\n";
        out << "|" << join(std::vector<std::string>(header.size(), "---"), "|") << "|\n";
        for (const auto& r : records) {
            auto c = cells(make_row(r));
            for (auto& s : c)
                s = md_cell(s);
            out << "| " << join(c, " | ") << " |\n";
        }
        return out.str();
    }

    auto csv_line = [&](std::vector<std::string> c) {
        for (auto& s : c)
            s = csv_field(s);
        return join(c, ",") + "\r\n";
    };
    out << csv_line(header);
    for (const auto& r : records)
        out << csv_line(cells(make_row(r)));
    return out.str();
}

std::vector<EnumerationRecord> parse_json_lines(std::string_view text)
{
    std::vector<EnumerationRecord> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            out.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace drg
