#pragma once

#include "drg/enumerate.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace drg {

struct TableRow {
    std::string vertices;     // "v = 57 = 1 + 6 + 30 + 20"
    std::string eigenvalues;  // "6^{1} 2.618^{18} 0.382^{18} -3^{20}"
    std::string array;        // "{6,5,2;1,1,3}"
    std::string witnesses;    // "(0, 1, 1); (1, 0, 2)", empty when none
};

TableRow make_row(const EnumerationRecord& r);

enum class TableFormat { Markdown, Csv, JsonLines };
TableFormat parse_table_format(std::string_view s);

/// Rows sorted by the array tuple (stable). Throws PreconditionError when
/// the records mix diameters.
std::string emit_table(std::vector<EnumerationRecord> records, TableFormat format);

/// Inverse of the json-lines form; blank lines are ignored.
std::vector<EnumerationRecord> parse_json_lines(std::string_view text);

}  // namespace drg
