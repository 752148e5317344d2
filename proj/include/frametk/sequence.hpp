#pragma once

#include "frametk/extended_real.hpp"
#include "frametk/linalg.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace frametk {

/// n vectors psi_1..psi_n in C^d; the columns of the synthesis matrix.
class FiniteSequence {
public:
    /// Throws InvalidInput if dimension or count is zero, a vector has the
    /// wrong length, or an entry is not finite.
    FiniteSequence(std::size_t dimension, std::vector<std::vector<cplx>> vectors,
                   std::optional<std::string> label = std::nullopt);

    /// Columns of a d x n matrix.
    static FiniteSequence from_matrix(const Matrix& synthesis, std::optional<std::string> label = std::nullopt);
    /// Canonical basis delta_1..delta_n of C^n.
    static FiniteSequence canonical_basis(std::size_t n);

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t size() const noexcept { return vectors_.size(); }
    const std::vector<std::vector<cplx>>& vectors() const noexcept { return vectors_; }
    const std::vector<cplx>& operator[](std::size_t k) const { return vectors_.at(k); }
    const std::optional<std::string>& label() const noexcept { return label_; }

    /// d x n matrix with psi_k in column k.
    Matrix synthesis_matrix() const;

    friend bool operator==(const FiniteSequence&, const FiniteSequence&) = default;

private:
    std::size_t dimension_;
    std::vector<std::vector<cplx>> vectors_;
    std::optional<std::string> label_;
};

/// Extended-range scalar for structured sequences and probe coefficients.
using lcplx = std::complex<long double>;

/// One element psi_k = weight * e_index of a weighted indexed ONB sequence.
/// Indices are 1-based to match the usual e_1, e_2, ... numbering.
struct Atom {
    std::size_t index;
    long double weight;
};

/// Closed-form facts about a structured sequence. Each is optional; a
/// missing annotation leaves the dependent verdicts inconclusive.
struct Annotations {
    std::optional<ExtendedReal> sup_fiber_sum;      ///< sup_n s_n
    std::optional<ExtendedReal> inf_fiber_sum_all;  ///< inf over all n (s_n = 0 off the range of sigma)
    std::optional<ExtendedReal> inf_fiber_sum_range; ///< inf over n in the range of sigma
    std::optional<bool> sigma_injective;
    std::optional<bool> sigma_surjective;           ///< over indices with nonzero weight
    std::optional<ExtendedReal> inf_weight_sq;      ///< inf_k w_k^2
    /// s_n <= scale * ratio^n for all n; lets weighted sums against
    /// geometrically decaying coordinates be decided in closed form.
    struct Growth {
        long double scale;
        long double ratio;
    };
    std::optional<Growth> fiber_growth;
    /// Whether the sup/inf above are the exact optimal bounds.
    bool bounds_are_limits = true;
};

/// Infinite sequence psi_k = w_k e_{sigma(k)} against the canonical ONB
/// (e_n) of l^2, given by a generator plus analytic annotations.
class StructuredSequence {
public:
    using Generator = std::function<Atom(std::size_t k)>;
    using FiberSum = std::function<ExtendedReal(std::size_t n)>;

    StructuredSequence(std::string label, Generator generator, FiberSum fiber_sum, Annotations annotations);

    const std::string& label() const noexcept { return label_; }
    /// k is 1-based.
    Atom atom(std::size_t k) const;
    /// s_n = sum over k with sigma(k) = n of w_k^2; n is 1-based.
    ExtendedReal fiber_sum(std::size_t n) const { return fiber_sum_(n); }
    const Annotations& annotations() const noexcept { return annotations_; }

    /// Atoms 1..N.
    std::vector<Atom> prefix(std::size_t N) const;

private:
    std::string label_;
    Generator generator_;
    FiberSum fiber_sum_;
    Annotations annotations_;
};

/// Prefix fiber sums sum_{k <= N, sigma(k) = n} w_k^2, indexed by n - 1.
std::vector<long double> prefix_fiber_sums(const StructuredSequence& s, std::size_t N);

/// First N vectors embedded in C^{d(N)}, d(N) = max_{k <= N} sigma(k).
/// Throws InvalidInput when N == 0.
FiniteSequence truncate(const StructuredSequence& s, std::size_t N);

/// Scalar sequence indexed from 1: either coordinates <f, e_n> of a vector
/// or coefficients (c_k).
class CoefficientSequence {
public:
    enum class Kind { finitely_supported, closed_form };
    /// |value(k)| <= scale * ratio^k for all k.
    struct Decay {
        long double scale;
        long double ratio;
    };

    static CoefficientSequence finite(std::vector<lcplx> values, std::string label);
    static CoefficientSequence closed_form(std::function<lcplx(std::size_t)> values, std::string label,
                                           std::optional<Decay> decay = std::nullopt);

    static CoefficientSequence zeros();
    /// delta_j (1-based).
    static CoefficientSequence delta(std::size_t j);
    /// (1, -1/2, 1/3, -1/4, ...).
    static CoefficientSequence alternating_harmonic();
    /// (1, 1/2, 1/3, ...): the alternating harmonic coefficients with signs flipped back.
    static CoefficientSequence harmonic();
    /// value(k) = first * ratio^(k-1).
    static CoefficientSequence geometric(long double first, long double ratio, std::string label);

    Kind kind() const noexcept { return kind_; }
    const std::string& label() const noexcept { return label_; }
    /// k is 1-based.
    lcplx operator()(std::size_t k) const;
    /// Largest index that may be nonzero, for finitely supported sequences.
    std::optional<std::size_t> support_bound() const;
    const std::optional<Decay>& decay() const noexcept { return decay_; }
    bool is_zero() const;

private:
    CoefficientSequence() = default;
    Kind kind_ = Kind::finitely_supported;
    std::vector<lcplx> finite_values_;
    std::function<lcplx(std::size_t)> closed_form_;
    std::optional<Decay> decay_;
    std::string label_;
};

enum class MembershipStatus { in_domain, not_in_domain, numeric_converges, numeric_diverges, inconclusive };

std::string_view to_string(MembershipStatus s);

enum class OperatorDomain { C, D, S, G };

/// A checkable claim about a fixture. The id names the check:
///   "label:<Label>"         classify_structured verdict (expects bool)
///   "dom_<x>:<coeff>"       membership probe, x in {c,d,s,g} (expects MembershipStatus)
///   "fiber_sum_infinite"    s_n = inf for the first 4096 n (expects bool)
///   "series_limit_ln2"      partial sums of sum c_k psi_k approach (ln 2) e_1 (expects double)
///   "gram_rows_square_summable"  sum_l |<psi_l, psi_k>|^2 < inf for every k (expects bool)
///   "gram_hilbert_schmidt"  sum_k sum_l |<psi_l, psi_k>|^2 < inf (expects bool)
///   "same_gram_as_onb"      truncated Gram equals that of (e_1, e_2, ...) (expects bool)
/// Coefficient names are resolved by named_coefficient().
struct Fact {
    std::string id;
    std::variant<bool, double, MembershipStatus> expected;
    std::string anchor;
    /// Truncation levels for numeric checks; empty means the probe defaults.
    std::vector<std::size_t> levels = {};
};

struct Fixture {
    std::string id;
    StructuredSequence sequence;
    std::vector<Fact> expected;
};

/// The seven counterexample sequences R1..R7 with their pinned facts.
std::vector<Fixture> gallery();
/// Throws InvalidInput on an unknown id.
Fixture fixture_by_id(std::string_view id);
/// (e_1, e_2, e_3, ...).
StructuredSequence canonical_onb();

/// Named probe vectors/coefficients used by the gallery facts and the CLI:
/// "zeros", "delta1" / "e1", "harmonic-alt", "harmonic", "h" (4^{-(n-1)}).
/// Throws InvalidInput on an unknown name.
CoefficientSequence named_coefficient(std::string_view name);

} // namespace frametk
