#include "drg/homtheory.hpp"

#include "drg/errors.hpp"

#include <algorithm>
#include <cstdio>

namespace drg {

namespace {

const AlgebraicReal& least_eigenvalue(const SpectralData& sd)
{
    return sd.theta.back();
}

std::string fmt(const AlgebraicReal& x)
{
    if (x.is_rational())
        return to_string(*x.rational());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", x.to_double());
    return buf;
}

}  // namespace

std::string_view to_string(AlphaRange r)
{
    return r == AlphaRange::Exclusive ? "exclusive" : "inclusive";
}

AlphaRange parse_alpha_range(std::string_view s)
{
    if (s == "exclusive")
        return AlphaRange::Exclusive;
    if (s == "inclusive")
        return AlphaRange::Inclusive;
    throw ParseError("alpha range must be 'exclusive' or 'inclusive', got '" + std::string(s) + "'");
}

std::vector<TripleWitness> search_triples(const ParameterSet& ps, const SpectralData& sd, int e, AlphaRange range)
{
    const int d = ps.diameter();
    if (e < 2 || e > d - 1)
        throw PreconditionError("image diameter e = " + std::to_string(e) + " outside 2.." + std::to_string(d - 1));
    if (sd.diameter() != d)
        throw PreconditionError("spectral data does not match the parameter set");

    // The cosines of theta_d alternate in sign.
    for (int i = 1; i <= d; ++i)
        if (sd.cosine(i - 1, d).sign() * sd.cosine(i, d).sign() >= 0)
            throw InternalError("cosines of the least eigenvalue do not alternate at index " + std::to_string(i));

    const FieldElement& w_prev = sd.cosine(e - 1, d);
    const FieldElement& w_cur = sd.cosine(e, d);
    const FieldElement& w_next = sd.cosine(e + 1, d);
    const FieldElement ca = w_prev - w_cur;
    const FieldElement cb = w_prev - w_next;
    const FieldElement cg = w_cur - w_next;

    const AlgebraicReal& theta_d = least_eigenvalue(sd);
    const std::int64_t a_e = ps.a[static_cast<size_t>(e)];
    const std::int64_t b_e = ps.array.b_at(e);

    const std::int64_t alpha_max = range == AlphaRange::Exclusive ? a_e - 1 : a_e;
    std::vector<TripleWitness> out;
    for (std::int64_t alpha = 0; alpha <= alpha_max; ++alpha) {
        for (std::int64_t beta = 0; beta <= b_e; ++beta) {
            const std::int64_t gamma = b_e - beta;
            if (alpha == gamma)
                continue;
            // gamma - alpha > theta_d + a_e  <=>  theta_d < gamma - alpha - a_e
            if (compare(theta_d, AlgebraicReal(Rational(gamma - alpha - a_e))) != std::strong_ordering::less)
                continue;
            FieldElement sum = ca * Rational(alpha) + cb * Rational(beta) + cg * Rational(gamma);
            if (sum.is_zero())
                out.push_back({e, alpha, beta, gamma});
        }
    }
    return out;
}

std::string_view to_string(Comparison c)
{
    switch (c) {
    case Comparison::Greater:
        return "Greater";
    case Comparison::Equal:
        return "Equal";
    case Comparison::Less:
        return "Less";
    }
    return "?";
}

CompleteCoreReport complete_core_test(const ParameterSet& ps, const SpectralData& sd)
{
    if (ps.diameter() < 2)
        throw PreconditionError("complete core test needs diameter >= 2");
    CompleteCoreReport r;
    auto c = compare(least_eigenvalue(sd), AlgebraicReal(Rational(-2)));
    if (c == std::strong_ordering::greater) {
        r.theta_d_vs_minus2 = Comparison::Greater;
    } else if (c == std::strong_ordering::less) {
        r.theta_d_vs_minus2 = Comparison::Less;
    } else {
        r.theta_d_vs_minus2 = Comparison::Equal;
        Rational bound(ps.array.b_at(0), ps.array.c_at(2));
        bound.canonicalize();
        r.bound = bound;
    }
    return r;
}

std::string_view to_string(CoreTag t)
{
    switch (t) {
    case CoreTag::BipartiteCoreK2:
        return "BipartiteCoreK2";
    case CoreTag::ProvenCore:
        return "ProvenCore";
    case CoreTag::ProvenCoreComplete:
        return "ProvenCoreComplete";
    case CoreTag::SmallerDiameterCandidate:
        return "SmallerDiameterCandidate";
    case CoreTag::NoSmallDiameterEndomorphism:
        return "NoSmallDiameterEndomorphism";
    case CoreTag::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

CoreTag parse_core_tag(std::string_view s)
{
    for (CoreTag t : {CoreTag::BipartiteCoreK2, CoreTag::ProvenCore, CoreTag::ProvenCoreComplete,
                      CoreTag::SmallerDiameterCandidate, CoreTag::NoSmallDiameterEndomorphism,
                      CoreTag::Inconclusive})
        if (to_string(t) == s)
            return t;
    throw ParseError("unknown verdict tag '" + std::string(s) + "'");
}

CoreVerdict classify(const ParameterSet& ps, const SpectralData& sd, const FamilyClass& fc, AlphaRange range)
{
    const int d = ps.diameter();
    CoreVerdict v;
    if (fc.bipartite) {
        v.tag = CoreTag::BipartiteCoreK2;
        v.notes.push_back("bipartite: the core is K2");
        return v;
    }
    if (d == 1) {
        v.tag = CoreTag::ProvenCore;
        v.notes.push_back("complete graph: its own core");
        return v;
    }

    for (int e = 2; e <= d - 1; ++e) {
        auto w = search_triples(ps, sd, e, range);
        v.notes.push_back("triple search e = " + std::to_string(e) + " (alpha range " + std::string(to_string(range)) +
                          "): " + std::to_string(w.size()) + " found");
        v.witnesses.insert(v.witnesses.end(), w.begin(), w.end());
    }
    const CompleteCoreReport cc = complete_core_test(ps, sd);
    v.notes.push_back("theta_d vs -2: " + std::string(to_string(cc.theta_d_vs_minus2)));

    const std::int64_t a_d = ps.a[static_cast<size_t>(d)];
    const AlgebraicReal& theta1 = sd.theta[1];
    const bool far_connected = compare(AlgebraicReal(Rational(a_d)), theta1) == std::strong_ordering::greater;
    const std::string a_d_name = "a_" + std::to_string(d) + " = " + std::to_string(a_d);

    if (fc.primitive && v.witnesses.empty()) {
        if (far_connected) {
            v.notes.push_back("far subgraph connected by interlacing: " + a_d_name + " > theta_1 = " + fmt(theta1));
            if (cc.theta_d_vs_minus2 == Comparison::Greater) {
                v.tag = CoreTag::ProvenCore;
                v.notes.push_back("complete core excluded: theta_d > -2");
            } else {
                v.tag = CoreTag::ProvenCoreComplete;
            }
            return v;
        }
    }
    if (!v.witnesses.empty()) {
        v.tag = CoreTag::SmallerDiameterCandidate;
        return v;
    }
    if (fc.antipodal && d % 2 == 1) {
        v.tag = CoreTag::NoSmallDiameterEndomorphism;
        v.notes.push_back("antipodal with odd diameter: no triple for any e");
        return v;
    }
    v.tag = CoreTag::Inconclusive;
    if (fc.primitive)
        v.notes.push_back("far subgraph connectivity not established: " + a_d_name + " <= theta_1");
    else
        v.notes.push_back("antipodal with even diameter: equal-cell condition does not apply");
    return v;
}

nlohmann::json to_json(const TripleWitness& w)
{
    return nlohmann::json::array({w.alpha, w.beta, w.gamma});
}

nlohmann::json to_json(const CoreVerdict& v)
{
    nlohmann::json w = nlohmann::json::object();
    for (const auto& t : v.witnesses)
        w[std::to_string(t.e)].push_back(to_json(t));
    return {{"tag", std::string(to_string(v.tag))}, {"witnesses", std::move(w)}, {"notes", v.notes}};
}

CoreVerdict core_verdict_from_json(const nlohmann::json& j)
{
    CoreVerdict v;
    v.tag = parse_core_tag(j.at("tag").get<std::string>());
    std::vector<TripleWitness> ws;
    for (const auto& [key, list] : j.at("witnesses").items()) {
        int e = std::stoi(key);
        for (const auto& t : list)
            ws.push_back({e, t.at(0).get<std::int64_t>(), t.at(1).get<std::int64_t>(), t.at(2).get<std::int64_t>()});
    }
    std::sort(ws.begin(), ws.end());
    v.witnesses = std::move(ws);
    v.notes = j.at("notes").get<std::vector<std::string>>();
    return v;
}

}  // namespace drg
