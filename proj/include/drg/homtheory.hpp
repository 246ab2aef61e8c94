#pragma once

#include "drg/params.hpp"

#include "json.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace drg {

/// Cell sizes (|C_{e,e-1}|, |C_{e+1,e-1}|, |C_{e+1,e}|) a retraction onto a
/// diameter-e image would have to realize.
struct TripleWitness {
    int e = 0;
    std::int64_t alpha = 0;
    std::int64_t beta = 0;
    std::int64_t gamma = 0;

    auto operator<=>(const TripleWitness&) const = default;
};

/// Range scanned for alpha. Exclusive (0 <= alpha < a_e) reproduces the
/// reference witness tables; Inclusive (0 <= alpha <= a_e) is the bound the
/// theorem states and admits extra triples when alpha = a_e.
enum class AlphaRange { Exclusive, Inclusive };
std::string_view to_string(AlphaRange r);
AlphaRange parse_alpha_range(std::string_view s);

/// All triples for image diameter e, ordered by (alpha, beta).
/// Requires 2 <= e <= d-1.
std::vector<TripleWitness> search_triples(const ParameterSet& ps, const SpectralData& sd, int e,
                                          AlphaRange range = AlphaRange::Exclusive);

enum class Comparison { Greater, Equal, Less };
std::string_view to_string(Comparison c);

struct CompleteCoreReport {
    Comparison theta_d_vs_minus2 = Comparison::Greater;
    std::optional<Rational> bound;  // b_0 / c_2, only when theta_d = -2
};

/// Requires d >= 2.
CompleteCoreReport complete_core_test(const ParameterSet& ps, const SpectralData& sd);

enum class CoreTag {
    BipartiteCoreK2,
    ProvenCore,
    ProvenCoreComplete,
    SmallerDiameterCandidate,
    NoSmallDiameterEndomorphism,
    Inconclusive,
};
std::string_view to_string(CoreTag t);
CoreTag parse_core_tag(std::string_view s);

struct CoreVerdict {
    CoreTag tag = CoreTag::Inconclusive;
    std::vector<TripleWitness> witnesses;
    std::vector<std::string> notes;

    bool operator==(const CoreVerdict&) const = default;
};

CoreVerdict classify(const ParameterSet& ps, const SpectralData& sd, const FamilyClass& fc,
                     AlphaRange range = AlphaRange::Exclusive);

nlohmann::json to_json(const TripleWitness& w);
nlohmann::json to_json(const CoreVerdict& v);
CoreVerdict core_verdict_from_json(const nlohmann::json& j);

}  // namespace drg
