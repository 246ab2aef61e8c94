#include "drg/feasibility.hpp"

#include "drg/errors.hpp"

namespace drg {

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass:
        return "pass";
    case Verdict::Fail:
        return "fail";
    case Verdict::Skipped:
        return "skipped";
    }
    return "?";
}

std::optional<std::string> FeasibilityReport::first_failure() const
{
    for (const auto& c : checks)
        if (c.verdict == Verdict::Fail)
            return c.id;
    return std::nullopt;
}

namespace {

constexpr const char* kCheckIds[] = {"F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8"};

std::string join(const std::vector<std::string>& parts)
{
    std::string out;
    for (const auto& p : parts)
        out += (out.empty() ? "" : "; ") + p;
    return out;
}

std::string krein_index(int i, int j, int h)
{
    return "q_{" + std::to_string(i) + "," + std::to_string(j) + "}^" + std::to_string(h);
}

}  // namespace

BatteryOutcome run_battery_detailed(const IntersectionArray& arr)
{
    BatteryOutcome out;
    out.report.array = arr;
    auto& checks = out.report.checks;
    bool failed = false;

    auto record = [&](const char* id, auto&& body) {
        CheckResult cr{id, Verdict::Skipped, ""};
        if (!failed) {
            try {
                std::string detail;
                bool ok = body(detail);
                cr.verdict = ok ? Verdict::Pass : Verdict::Fail;
                cr.detail = std::move(detail);
            } catch (const InfeasibleError& e) {
                cr.verdict = Verdict::Fail;
                cr.detail = e.what();
            } catch (const UnsupportedError& e) {
                cr.verdict = Verdict::Fail;
                cr.detail = std::string("unsupported: ") + e.what();
            }
            failed = cr.verdict == Verdict::Fail;
        }
        checks.push_back(std::move(cr));
    };

    std::vector<std::int64_t> k;
    std::int64_t n = 0;

    record(kCheckIds[0], [&](std::string& detail) {
        auto v = shape_violations(arr);
        detail = join(v);
        return v.empty();
    });
    record(kCheckIds[1], [&](std::string&) {
        k = valencies(arr);
        __int128 total = 0;
        for (auto v : k)
            total += v;
        if (total > INT64_MAX)
            throw UnsupportedError("vertex count overflows 64 bits");
        n = static_cast<std::int64_t>(total);
        return true;
    });
    record(kCheckIds[2], [&](std::string& detail) {
        std::vector<std::string> bad;
        for (int i = 1; i <= arr.diameter(); ++i) {
            __int128 nk = static_cast<__int128>(n) * k[static_cast<size_t>(i)];
            __int128 ka = static_cast<__int128>(k[static_cast<size_t>(i)]) * arr.a_at(i);
            if (nk % 2 != 0)
                bad.push_back("n*k_" + std::to_string(i) + " is odd");
            if (ka % 2 != 0)
                bad.push_back("k_" + std::to_string(i) + "*a_" + std::to_string(i) + " is odd");
        }
        detail = join(bad);
        return bad.empty();
    });
    record(kCheckIds[3], [&](std::string&) {
        out.params = derive_parameters(arr);
        return true;
    });

    SpectralData sd;
    record(kCheckIds[4], [&](std::string&) {
        sd.theta = spectrum(*out.params);
        return true;
    });
    record(kCheckIds[5], [&](std::string&) {
        for (const auto& t : sd.theta) {
            sd.context.push_back(make_context(t));
            sd.w.push_back(cosine_sequence(*out.params, sd.context.back()));
        }
        sd.m = multiplicities(*out.params, sd.w);
        return true;
    });
    record(kCheckIds[6], [&](std::string& detail) {
        sd.q = krein_parameters(sd, *out.params);
        const int d = arr.diameter();
        std::vector<std::string> neg;
        int heuristic = 0;
        for (int i = 0; i <= d; ++i)
            for (int j = i; j <= d; ++j)
                for (int h = 0; h <= d; ++h) {
                    const auto& e = sd.q->at(i, j, h);
                    if (e.sign == Sign::Negative)
                        neg.push_back(krein_index(i, j, h) + " < 0");
                    if (e.heuristic_zero)
                        ++heuristic;
                }
        if (!neg.empty()) {
            detail = join(neg);
            return false;
        }
        if (heuristic > 0)
            detail = std::to_string(heuristic) + " entries judged zero by interval width < 1e-30";
        return true;
    });
    record(kCheckIds[7], [&](std::string& detail) {
        const int d = arr.diameter();
        std::vector<std::string> bad;
        for (int i = 1; i <= d; ++i)
            for (int j = i; j <= d; ++j) {
                __int128 sum = 0;
                for (int h = 0; h <= d; ++h)
                    if (sd.q->at(i, j, h).sign != Sign::Zero)
                        sum += sd.m[static_cast<size_t>(h)];
                __int128 mi = sd.m[static_cast<size_t>(i)], mj = sd.m[static_cast<size_t>(j)];
                __int128 bound = i == j ? mi * (mi + 1) / 2 : mi * mj;
                if (sum > bound)
                    bad.push_back("absolute bound violated for (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        detail = join(bad);
        return bad.empty();
    });

    out.report.overall = !failed;
    if (out.params && !sd.m.empty())
        out.spectral = std::move(sd);
    return out;
}

FeasibilityReport run_battery(const IntersectionArray& arr)
{
    return run_battery_detailed(arr).report;
}

nlohmann::json to_json(const FeasibilityReport& r)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"id", c.id}, {"verdict", std::string(to_string(c.verdict))}, {"detail", c.detail}});
    return {{"array", r.array.to_string()},
            {"checks", std::move(checks)},
            {"feasible", r.overall},
            {"notes", "conditions F9+ (external monograph results) are not applied"}};
}

FeasibilityReport feasibility_from_json(const nlohmann::json& j)
{
    FeasibilityReport r;
    r.array = parse_array(j.at("array").get<std::string>());
    for (const auto& c : j.at("checks")) {
        const std::string v = c.at("verdict").get<std::string>();
        Verdict verdict = v == "pass" ? Verdict::Pass : v == "fail" ? Verdict::Fail : Verdict::Skipped;
        if (v != "pass" && v != "fail" && v != "skipped")
            throw ParseError("unknown verdict '" + v + "'");
        r.checks.push_back({c.at("id").get<std::string>(), verdict, c.at("detail").get<std::string>()});
    }
    r.overall = j.at("feasible").get<bool>();
    return r;
}

}  // namespace drg
