#pragma once

#include "drg/params.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace drg {

enum class Verdict { Pass, Fail, Skipped };
std::string_view to_string(Verdict v);

struct CheckResult {
    std::string id;  // "F1".."F8"
    Verdict verdict = Verdict::Skipped;
    std::string detail;

    bool operator==(const CheckResult&) const = default;
};

struct FeasibilityReport {
    IntersectionArray array;
    std::vector<CheckResult> checks;
    bool overall = false;

    /// First failing check id, if any.
    std::optional<std::string> first_failure() const;

    bool operator==(const FeasibilityReport&) const = default;
};

/// Report plus whatever the battery managed to compute on the way, so
/// callers do not redo the spectral work.
struct BatteryOutcome {
    FeasibilityReport report;
    std::optional<ParameterSet> params;
    std::optional<SpectralData> spectral;
};

/// F1 shape, F2 integral valencies, F3 handshake parity, F4 intersection
/// numbers, F5 spectrum, F6 multiplicities, F7 Krein conditions, F8
/// absolute bound. Later checks are skipped once one fails.
BatteryOutcome run_battery_detailed(const IntersectionArray& arr);
FeasibilityReport run_battery(const IntersectionArray& arr);

nlohmann::json to_json(const FeasibilityReport& r);
FeasibilityReport feasibility_from_json(const nlohmann::json& j);

}  // namespace drg
