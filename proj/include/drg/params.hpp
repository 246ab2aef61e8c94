#pragma once

#include "drg/field.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drg {

/// {b_0,...,b_{d-1}; c_1,...,c_d}
struct IntersectionArray {
    std::vector<std::int64_t> b;
    std::vector<std::int64_t> c;

    int diameter() const { return static_cast<int>(b.size()); }
    std::int64_t valency() const { return b.empty() ? 0 : b.front(); }
    /// b_i with b_d = 0.
    std::int64_t b_at(int i) const;
    /// c_i with c_0 = 0.
    std::int64_t c_at(int i) const;
    std::int64_t a_at(int i) const { return valency() - b_at(i) - c_at(i); }

    std::string to_string() const;

    auto operator<=>(const IntersectionArray&) const = default;
};

/// Parses `{b0,b1,...;c1,c2,...}` with optional whitespace. Only the shape
/// (two equally long nonempty lists of integers) is checked here.
IntersectionArray parse_array(std::string_view text);

/// Human-readable violations of the array invariants (c_1 = 1, monotone b and
/// c, c_i <= b_0, a_i >= 0, positive entries); empty when valid.
std::vector<std::string> shape_violations(const IntersectionArray& arr);

struct ParameterSet {
    IntersectionArray array;
    std::vector<std::int64_t> a;  // a_0..a_d
    std::vector<std::int64_t> k;  // k_0..k_d
    std::int64_t n = 0;
    std::vector<std::int64_t> p_flat;  // (d+1)^3, index (i, j, h)

    int diameter() const { return array.diameter(); }
    std::int64_t p(int i, int j, int h) const;
};

/// Valencies k_0..k_d; throws InfeasibleError naming the first non-integral index.
std::vector<std::int64_t> valencies(const IntersectionArray& arr);

/// Throws PreconditionError on shape violations and InfeasibleError on
/// non-integral valencies or negative / non-integral intersection numbers.
ParameterSet derive_parameters(const IntersectionArray& arr);

/// det(xI - L) for the tridiagonal intersection matrix L.
UniPoly intersection_polynomial(const IntersectionArray& arr);

std::vector<AlgebraicReal> spectrum(const ParameterSet& ps);

/// w(0), ..., w(d), w(d+1) = 0 for the eigenvalue theta (length d+2).
/// Throws InternalError when the terminal recurrence identity fails.
std::vector<FieldElement> cosine_sequence(const ParameterSet& ps, const FieldContext& theta);

/// m_j = n / sum_i k_i w(i,j)^2 for each cosine row (rows as returned by
/// cosine_sequence). Throws InfeasibleError for non-integral or
/// non-positive multiplicities and InternalError when a value is irrational
/// or the multiplicities do not sum to n.
std::vector<std::int64_t> multiplicities(const ParameterSet& ps,
                                         const std::vector<std::vector<FieldElement>>& cosines);

enum class Sign { Negative, Zero, Positive };
std::string_view to_string(Sign s);

struct KreinEntry {
    Sign sign = Sign::Zero;
    Interval enclosure;
    bool exact = false;           // decided in a single number field
    bool heuristic_zero = false;  // interval still straddles 0 below 1e-30
};

class KreinTensor {
public:
    KreinTensor() = default;
    explicit KreinTensor(int d) : d_(d), entries_(static_cast<size_t>((d + 1) * (d + 1) * (d + 1))) {}

    const KreinEntry& at(int i, int j, int h) const { return entries_[index(i, j, h)]; }
    KreinEntry& at(int i, int j, int h) { return entries_[index(i, j, h)]; }
    int diameter() const { return d_; }
    bool any_heuristic_zero() const;

private:
    size_t index(int i, int j, int h) const { return static_cast<size_t>((i * (d_ + 1) + j) * (d_ + 1) + h); }

    int d_ = 0;
    std::vector<KreinEntry> entries_;
};

struct SpectralData {
    std::vector<AlgebraicReal> theta;     // strictly decreasing, theta_0 = b_0
    std::vector<FieldContext> context;    // one quotient field per eigenvalue
    std::vector<std::int64_t> m;          // multiplicities
    std::vector<std::vector<FieldElement>> w;  // w[j] = cosine row of theta_j, length d+2
    std::optional<KreinTensor> q;

    int diameter() const { return static_cast<int>(theta.size()) - 1; }
    /// w(i, j) for 0 <= i <= d+1.
    const FieldElement& cosine(int i, int j) const;
    /// P(j, i) = k_i w(i, j)
    FieldElement P(const ParameterSet& ps, int j, int i) const;
    /// Q(i, j) = m_j w(i, j)
    FieldElement Q(int i, int j) const;
};

/// Working precision (bits) for interval refinement. Reads
/// DRG_PRECISION_BITS once, default 256.
int default_precision_bits();

/// Krein parameters q_ij^h = (m_i m_j / n) sum_r k_r w(r,i) w(r,j) w(r,h).
KreinTensor krein_parameters(const SpectralData& sd, const ParameterSet& ps,
                             int precision_bits = default_precision_bits());

/// Spectrum, cosines and multiplicities, plus Krein parameters when asked.
SpectralData spectral_data(const ParameterSet& ps, bool with_krein = true);

/// Sign changes along the row, ignoring zero entries.
int sign_change_count(std::span<const FieldElement> row);

struct FamilyClass {
    bool bipartite = false;
    bool antipodal = false;
    bool primitive = false;

    bool operator==(const FamilyClass&) const = default;
};

/// From the intersection numbers alone. Throws PreconditionError for b_0 <= 2.
FamilyClass classify_family(const ParameterSet& ps);
/// Same, cross-checking bipartiteness against theta_d = -b_0.
FamilyClass classify_family(const ParameterSet& ps, const SpectralData& sd);

}  // namespace drg
