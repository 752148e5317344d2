#pragma once

#include "frametk/extended_real.hpp"
#include "frametk/linalg.hpp"
#include "frametk/sequence.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace frametk {

enum class Label { bessel, frame_sequence, frame, riesz_basis, lower_frame_sequence, riesz_fischer, complete };

inline constexpr std::array<Label, 7> kAllLabels = {
    Label::bessel,     Label::frame_sequence,       Label::frame,   Label::riesz_basis,
    Label::lower_frame_sequence, Label::riesz_fischer, Label::complete,
};

std::string_view to_string(Label l);
/// Throws InvalidInput on an unknown name.
Label label_from_string(std::string_view name);

/// Three-valued verdict: the Gram route has no criterion for lower frame
/// sequences, and structured sequences may lack an annotation.
enum class Truth { yes, no, undetermined };

/// A and B; a label that only has one bound leaves the other empty.
struct FrameBounds {
    std::optional<ExtendedReal> lower;
    std::optional<ExtendedReal> upper;
    bool optimal = false;
};

struct LabelVerdict {
    Label label = Label::bessel;
    Truth holds = Truth::undetermined;
    FrameBounds bounds;
    std::string via;    ///< "C", "D", "S", "G", "consensus" or "annotation"
    std::string anchor; ///< criterion that decided the verdict
    bool borderline = false;
    /// Deciding quantity relative to the rank cutoff (sigma / cutoff); > 1
    /// means the rank test passed. NaN when no rank test was involved.
    double margin = 0.0;
};

struct VerdictSet {
    std::array<LabelVerdict, 7> verdicts;
    LabelVerdict& operator[](Label l) { return verdicts[static_cast<std::size_t>(l)]; }
    const LabelVerdict& operator[](Label l) const { return verdicts[static_cast<std::size_t>(l)]; }
    bool holds(Label l) const { return (*this)[l].holds == Truth::yes; }
};

struct ClassificationReport {
    std::string subject;
    std::optional<VerdictSet> via_c;
    std::optional<VerdictSet> via_d;
    std::optional<VerdictSet> via_s;
    std::optional<VerdictSet> via_g;
    VerdictSet consensus;
    bool agreement = true;
    bool borderline = false;
    Tolerance tol = Tolerance::for_shape(1, 1);
};

/// Classifies with each of the four operators independently; consensus is
/// the intersection over the routes that decide a label.
ClassificationReport classify_finite(const FiniteSequence& seq, const Tolerance& tol);
ClassificationReport classify_finite(const FiniteSequence& seq);

struct SectionsResult {
    double a_est = 0.0;               ///< min over n of sigma_min(G_n)
    std::vector<double> per_section;  ///< sigma_min(G_n), n = 1..size
    double threshold = 0.0;           ///< rank cutoff on the Gram scale
    bool riesz_fischer = false;       ///< a_est > threshold
};

/// Riesz-Fischer test through the leading sections G_n of the Gram matrix.
SectionsResult riesz_fischer_via_sections(const FiniteSequence& seq, const Tolerance& tol);

/// Closed-form classification of a weighted indexed ONB sequence from its
/// annotations.
ClassificationReport classify_structured(const StructuredSequence& s);

struct Disagreement {
    Label label;
    std::string route_a;
    std::string route_b;
    Truth holds_a;
    Truth holds_b;
    double margin_a;
    double margin_b;
};

struct AgreementReport {
    bool agreement = true;
    std::vector<Disagreement> disagreements;
};

AgreementReport cross_check(const FiniteSequence& seq, const Tolerance& tol);
AgreementReport cross_check(const ClassificationReport& report);

/// Label implications RB => Frame => FS, Complete, LFS, Bessel.
/// Returns a description of the first violated implication, or empty.
std::string taxonomy_violation(const VerdictSet& set);

} // namespace frametk
