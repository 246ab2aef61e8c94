#pragma once

#include "drg/feasibility.hpp"
#include "drg/homtheory.hpp"

#include "json.hpp"

#include <functional>
#include <string>
#include <vector>

namespace drg {

struct SpectrumEntry {
    std::string value;  // rounded to 3 decimals, integers plain
    std::int64_t multiplicity = 0;
    std::string minpoly;

    bool operator==(const SpectrumEntry&) const = default;
};

struct EnumerationRecord {
    IntersectionArray array;
    FeasibilityReport report;
    FamilyClass family;
    std::vector<std::int64_t> k;  // k_0..k_d
    std::int64_t n = 0;
    std::vector<SpectrumEntry> spectrum;
    CoreVerdict verdict;

    bool operator==(const EnumerationRecord&) const = default;
};

struct FamilyFilter {
    bool primitive = false;
    bool antipodal = false;  // antipodal and not bipartite
    bool bipartite = false;

    static FamilyFilter all() { return {true, true, true}; }
    bool accepts(const FamilyClass& fc) const;
};

/// "primitive", "antipodal", "bipartite" or "all".
FamilyFilter parse_family_filter(std::string_view s);
std::string family_name(const FamilyClass& fc);

struct EnumerationOptions {
    int diameter = 3;
    std::int64_t k_max = 3;
    FamilyFilter filter = FamilyFilter::all();
    unsigned jobs = 0;  // 0: hardware concurrency
    AlphaRange alpha = AlphaRange::Exclusive;
};

struct EnumerationStats {
    std::int64_t examined = 0;
    std::int64_t emitted = 0;
    /// Arrays whose spectrum the engine could not certify.
    std::vector<std::pair<IntersectionArray, std::string>> unsupported;
};

/// Full record for one array, or nullopt when the battery rejects it.
std::optional<EnumerationRecord> analyze_record(const IntersectionArray& arr, AlphaRange alpha = AlphaRange::Exclusive);

/// Calls `emit` for every feasible array matching the filter, in
/// lexicographic order of (b_0, ..., b_{d-1}, c_2, ..., c_d), however many
/// workers run.
EnumerationStats enumerate_arrays(const EnumerationOptions& opt,
                                  const std::function<void(const EnumerationRecord&)>& emit);

nlohmann::json to_json(const EnumerationRecord& r);
EnumerationRecord record_from_json(const nlohmann::json& j);

}  // namespace drg
