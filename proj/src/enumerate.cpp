#include "drg/enumerate.hpp"

#include "drg/errors.hpp"

#include <atomic>
#include <condition_variable>
#include <map>
#include <mutex>
#include <thread>

namespace drg {

bool FamilyFilter::accepts(const FamilyClass& fc) const
{
    return (primitive && fc.primitive) || (antipodal && fc.antipodal && !fc.bipartite) || (bipartite && fc.bipartite);
}

FamilyFilter parse_family_filter(std::string_view s)
{
    if (s == "all")
        return FamilyFilter::all();
    if (s == "primitive")
        return {true, false, false};
    if (s == "antipodal")
        return {false, true, false};
    if (s == "bipartite")
        return {false, false, true};
    throw ParseError("unknown family '" + std::string(s) + "'");
}

std::string family_name(const FamilyClass& fc)
{
    if (fc.bipartite && fc.antipodal)
        return "bipartite+antipodal";
    if (fc.bipartite)
        return "bipartite";
    if (fc.antipodal)
        return "antipodal";
    return "primitive";
}

namespace {

enum class Outcome { Emitted, Rejected, Unsupported };

struct Analysis {
    Outcome outcome = Outcome::Rejected;
    std::optional<EnumerationRecord> record;
    std::string detail;
};

Analysis analyze(const IntersectionArray& arr, const FamilyFilter* filter, AlphaRange alpha)
{
    Analysis res;
    BatteryOutcome bo = run_battery_detailed(arr);
    if (!bo.report.overall) {
        for (const auto& c : bo.report.checks)
            if (c.verdict == Verdict::Fail && c.detail.rfind("unsupported:", 0) == 0) {
                res.outcome = Outcome::Unsupported;
                res.detail = c.detail;
            }
        return res;
    }
    const ParameterSet& ps = *bo.params;
    const SpectralData& sd = *bo.spectral;
    FamilyClass fc = classify_family(ps, sd);
    if (filter && !filter->accepts(fc))
        return res;

    EnumerationRecord r;
    r.array = arr;
    r.family = fc;
    r.k = ps.k;
    r.n = ps.n;
    for (size_t j = 0; j < sd.theta.size(); ++j)
        r.spectrum.push_back({to_decimal(sd.theta[j], 3), sd.m[j], sd.theta[j].minpoly().to_string("x")});
    r.verdict = classify(ps, sd, fc, alpha);
    r.report = std::move(bo.report);
    res.outcome = Outcome::Emitted;
    res.record = std::move(r);
    return res;
}

// F1-F4 and the family test in machine integers, so that the spectral work
// only runs on arrays that can still be emitted.
bool prefilter(const IntersectionArray& arr, const FamilyFilter& filter)
{
    const int d = arr.diameter();
    __int128 k = 1, n = 1;
    std::vector<__int128> ks{1};
    for (int i = 0; i < d; ++i) {
        __int128 num = k * arr.b_at(i);
        if (num % arr.c_at(i + 1) != 0)
            return false;
        k = num / arr.c_at(i + 1);
        if (k > (static_cast<__int128>(1) << 60))
            return true;  // leave it to the exact battery
        ks.push_back(k);
        n += k;
    }
    for (int i = 1; i <= d; ++i) {
        if ((n * ks[static_cast<size_t>(i)]) % 2 != 0)
            return false;
        if ((ks[static_cast<size_t>(i)] * arr.a_at(i)) % 2 != 0)
            return false;
    }
    try {
        ParameterSet ps = derive_parameters(arr);
        if (arr.valency() > 2 && !filter.accepts(classify_family(ps)))
            return false;
    } catch (const InfeasibleError&) {
        return false;
    }
    return true;
}

// All arrays with fixed b_0, in lexicographic order.
void grid_for_valency(int d, std::int64_t b0, const std::function<void(const IntersectionArray&)>& visit)
{
    IntersectionArray arr;
    arr.b.assign(static_cast<size_t>(d), 0);
    arr.c.assign(static_cast<size_t>(d), 0);
    arr.b[0] = b0;
    arr.c[0] = 1;

    std::function<void(int)> choose_c = [&](int i) {
        if (i > d) {
            visit(arr);
            return;
        }
        std::int64_t lo = arr.c[static_cast<size_t>(i - 2)];
        std::int64_t bi = i < d ? arr.b[static_cast<size_t>(i)] : 0;
        for (std::int64_t c = lo; c <= b0 - bi; ++c) {  // a_i >= 0
            arr.c[static_cast<size_t>(i - 1)] = c;
            choose_c(i + 1);
        }
    };
    std::function<void(int)> choose_b = [&](int i) {
        if (i == d) {
            choose_c(2);
            return;
        }
        std::int64_t hi = arr.b[static_cast<size_t>(i - 1)];
        if (i == 1)
            hi = b0 - 1;  // a_1 >= 0
        for (std::int64_t b = 1; b <= hi; ++b) {
            arr.b[static_cast<size_t>(i)] = b;
            choose_b(i + 1);
        }
    };
    if (d == 1) {
        visit(arr);
        return;
    }
    choose_b(1);
}

struct Slice {
    std::vector<EnumerationRecord> records;
    std::int64_t examined = 0;
    std::vector<std::pair<IntersectionArray, std::string>> unsupported;
};

Slice run_slice(const EnumerationOptions& opt, std::int64_t b0)
{
    Slice s;
    grid_for_valency(opt.diameter, b0, [&](const IntersectionArray& arr) {
        ++s.examined;
        if (!shape_violations(arr).empty() || !prefilter(arr, opt.filter))
            return;
        Analysis a = analyze(arr, &opt.filter, opt.alpha);
        if (a.outcome == Outcome::Emitted)
            s.records.push_back(std::move(*a.record));
        else if (a.outcome == Outcome::Unsupported)
            s.unsupported.emplace_back(arr, a.detail);
    });
    return s;
}

}  // namespace

std::optional<EnumerationRecord> analyze_record(const IntersectionArray& arr, AlphaRange alpha)
{
    return analyze(arr, nullptr, alpha).record;
}

EnumerationStats enumerate_arrays(const EnumerationOptions& opt,
                                  const std::function<void(const EnumerationRecord&)>& emit)
{
    if (opt.diameter < 1)
        throw PreconditionError("diameter must be at least 1");
    if (opt.k_max < 3)
        throw PreconditionError("k_max must be at least 3");

    const std::int64_t first = 3;
    const std::int64_t count = opt.k_max - first + 1;
    unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::int64_t>(jobs, count));

    EnumerationStats stats;
    auto consume = [&](Slice& s) {
        stats.examined += s.examined;
        for (const auto& r : s.records) {
            emit(r);
            ++stats.emitted;
        }
        for (auto& u : s.unsupported)
            stats.unsupported.push_back(std::move(u));
    };

    if (jobs <= 1) {
        for (std::int64_t b0 = first; b0 <= opt.k_max; ++b0) {
            Slice s = run_slice(opt, b0);
            consume(s);
        }
        return stats;
    }

    // Workers claim valencies in increasing order; the caller's thread emits
    // finished slices strictly in order.
    std::atomic<std::int64_t> next{first};
    std::mutex mu;
    std::condition_variable cv;
    std::map<std::int64_t, Slice> done;
    std::exception_ptr failure;

    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            while (true) {
                std::int64_t b0 = next.fetch_add(1);
                if (b0 > opt.k_max)
                    return;
                Slice s;
                try {
                    s = run_slice(opt, b0);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!failure)
                        failure = std::current_exception();
                }
                std::lock_guard lock(mu);
                done.emplace(b0, std::move(s));
                cv.notify_all();
            }
        });
    }

    for (std::int64_t b0 = first; b0 <= opt.k_max; ++b0) {
        Slice s;
        {
            std::unique_lock lock(mu);
            cv.wait(lock, [&] { return done.count(b0) > 0; });
            s = std::move(done.at(b0));
            done.erase(b0);
            if (failure)
                break;
        }
        consume(s);
    }
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
    return stats;
}

nlohmann::json to_json(const EnumerationRecord& r)
{
    nlohmann::json spectrum = nlohmann::json::array();
    for (const auto& e : r.spectrum)
        spectrum.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}, {"minpoly", e.minpoly}});
    return {{"array", r.array.to_string()},
            {"n", r.n},
            {"k", r.k},
            {"family",
             {{"bipartite", r.family.bipartite}, {"antipodal", r.family.antipodal}, {"primitive", r.family.primitive}}},
            {"spectrum", std::move(spectrum)},
            {"feasibility", to_json(r.report)},
            {"verdict", to_json(r.verdict)}};
}

EnumerationRecord record_from_json(const nlohmann::json& j)
{
    EnumerationRecord r;
    r.array = parse_array(j.at("array").get<std::string>());
    r.n = j.at("n").get<std::int64_t>();
    r.k = j.at("k").get<std::vector<std::int64_t>>();
    const auto& f = j.at("family");
    r.family = {f.at("bipartite").get<bool>(), f.at("antipodal").get<bool>(), f.at("primitive").get<bool>()};
    for (const auto& e : j.at("spectrum"))
        r.spectrum.push_back(
            {e.at("value").get<std::string>(), e.at("multiplicity").get<std::int64_t>(), e.at("minpoly").get<std::string>()});
    r.report = feasibility_from_json(j.at("feasibility"));
    r.verdict = core_verdict_from_json(j.at("verdict"));
    return r;
}

}  // namespace drg
