#pragma once

#include "json.hpp"

#include <array>
#include <fstream>
#include <string>
#include <vector>

namespace fixtures {

struct TableEntry {
    std::string vertices;
    std::string eigenvalues;
    std::string array;
    std::vector<std::array<long, 3>> witnesses;
};

struct Tables {
    std::vector<TableEntry> core_complete;
    std::vector<TableEntry> candidates;
};

inline Tables load_tables()
{
    std::ifstream in(std::string(DRG_TEST_DATA_DIR) + "/reference_tables.json");
    auto j = nlohmann::json::parse(in);
    Tables t;
    auto read = [](const nlohmann::json& rows, std::vector<TableEntry>& out) {
        for (const auto& r : rows) {
            TableEntry e{r.at("vertices"), r.at("eigenvalues"), r.at("array"), {}};
            if (r.contains("witnesses"))
                for (const auto& w : r.at("witnesses"))
                    e.witnesses.push_back({w[0].get<long>(), w[1].get<long>(), w[2].get<long>()});
            out.push_back(std::move(e));
        }
    };
    read(j.at("core_complete"), t.core_complete);
    read(j.at("candidates"), t.candidates);
    return t;
}

// Arrays from the antipodal examples discussed alongside the tables.
inline const std::vector<std::string> kAntipodal = {"{8,6,1;1,1,8}", "{8,6,1;1,3,8}", "{13,8,1;1,4,13}",
                                                    "{11,8,1;1,2,11}"};

// The one candidate row whose parameters are not realizable:
// p^1_{22} = k_2 a_2 / k = 1260/24.
inline const std::string kNonIntegralRow = "{24,21,10;1,4,12}";

}  // namespace fixtures
