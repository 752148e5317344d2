#include "frametk/classifier.hpp"

#include "frametk/errors.hpp"
#include "frametk/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frametk {

namespace {

constexpr double kBorderlineBand = 0.10;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ExtendedReal fin(double x) { return ExtendedReal::finite(x); }

// Singular-value summary of one operator matrix under the shared cutoff.
struct Spectrum {
    SvdResult svd;
    std::size_t rank = 0;
    double cutoff = 0.0;
    double sigma_max = 0.0;
    double smallest_retained = 0.0;
    bool borderline = false;

    // sigma_i / cutoff for the 1-based singular value index i; 0 if absent.
    double margin(std::size_t i) const {
        if (i == 0 || i > svd.singular_values.size()) return 0.0;
        if (cutoff == 0.0) return svd.singular_values[i - 1] > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        return svd.singular_values[i - 1] / cutoff;
    }
    double sigma(std::size_t i) const {
        return (i == 0 || i > svd.singular_values.size()) ? 0.0 : svd.singular_values[i - 1];
    }
};

Spectrum analyze(const Matrix& m, const Tolerance& tol) {
    Spectrum s;
    s.svd = svd(m);
    s.sigma_max = s.svd.sigma_max();
    s.cutoff = tol.rank_rel * s.sigma_max;
    s.rank = numerical_rank(s.svd, tol);
    s.smallest_retained = smallest_retained_singular_value(s.svd, tol);
    for (double x : s.svd.singular_values)
        if (s.cutoff > 0.0 && x >= (1.0 - kBorderlineBand) * s.cutoff && x <= (1.0 + kBorderlineBand) * s.cutoff)
            s.borderline = true;
    return s;
}

Truth truth(bool b) { return b ? Truth::yes : Truth::no; }

VerdictSet empty_set(const std::string& via) {
    VerdictSet set;
    for (Label l : kAllLabels) {
        set[l].label = l;
        set[l].via = via;
        set[l].margin = kNaN;
    }
    return set;
}

void put(VerdictSet& set, Label l, bool holds, FrameBounds bounds, std::string anchor, double margin,
         bool borderline) {
    auto& v = set[l];
    v.holds = truth(holds);
    if (holds) v.bounds = bounds;
    v.anchor = std::move(anchor);
    v.margin = margin;
    v.borderline = borderline;
}

FrameBounds upper_only(double b) { return FrameBounds{std::nullopt, fin(b), true}; }
FrameBounds lower_only(double a) { return FrameBounds{fin(a), std::nullopt, true}; }
FrameBounds both(double a, double b) { return FrameBounds{fin(a), fin(b), true}; }

// C (n x d) and D (d x n) carry the bounds as squared singular values.
VerdictSet classify_via_c(const Matrix& C, std::size_t d, std::size_t n, const Tolerance& tol) {
    const Spectrum sp = analyze(C, tol);
    VerdictSet set = empty_set("C");
    const double B = sp.sigma_max * sp.sigma_max;
    const double a_span = sp.smallest_retained * sp.smallest_retained;
    const double a_d = sp.sigma(d) * sp.sigma(d);
    const double a_n = sp.sigma(n) * sp.sigma(n);
    const bool injective = sp.rank == d;
    const bool surjective = sp.rank == n;
    const bool bl = sp.borderline;

    put(set, Label::bessel, true, upper_only(B), "dom(C)=H, B=||C||^2", kNaN, false);
    put(set, Label::frame_sequence, sp.rank > 0, both(a_span, B), "ran(C) closed and nonzero", sp.margin(sp.rank), bl);
    put(set, Label::frame, injective, both(a_d, B), "ran(C) closed and C injective", sp.margin(d), bl);
    put(set, Label::riesz_basis, injective && surjective, both(a_d, B), "C bijective", sp.margin(std::max(d, n)), bl);
    put(set, Label::lower_frame_sequence, injective, lower_only(a_d), "C injective with closed range", sp.margin(d),
        bl);
    put(set, Label::riesz_fischer, surjective, lower_only(a_n), "C surjective", sp.margin(n), bl);
    put(set, Label::complete, injective, FrameBounds{}, "C injective", sp.margin(d), bl);
    return set;
}

VerdictSet classify_via_d(const Matrix& D, std::size_t d, std::size_t n, const Tolerance& tol) {
    const Spectrum sp = analyze(D, tol);
    VerdictSet set = empty_set("D");
    const double B = sp.sigma_max * sp.sigma_max;
    const double a_span = sp.smallest_retained * sp.smallest_retained;
    const double a_d = sp.sigma(d) * sp.sigma(d);
    const double a_n = sp.sigma(n) * sp.sigma(n);
    const bool surjective = sp.rank == d;
    const bool injective = sp.rank == n;
    const bool bl = sp.borderline;

    put(set, Label::bessel, true, upper_only(B), "dom(D)=l^2, B=||D||^2", kNaN, false);
    put(set, Label::frame_sequence, sp.rank > 0, both(a_span, B), "ran(D) closed and nonzero", sp.margin(sp.rank), bl);
    put(set, Label::frame, surjective, both(a_d, B), "D surjective", sp.margin(d), bl);
    put(set, Label::riesz_basis, surjective && injective, both(a_d, B), "D bijective", sp.margin(std::max(d, n)), bl);
    put(set, Label::lower_frame_sequence, surjective, lower_only(a_d), "ran(D) dense and ran(D^*) closed",
        sp.margin(d), bl);
    put(set, Label::riesz_fischer, injective, lower_only(a_n), "D injective with bounded inverse", sp.margin(n), bl);
    put(set, Label::complete, surjective, FrameBounds{}, "ran(D) dense", sp.margin(d), bl);
    return set;
}

// S and G are on the squared scale already.
VerdictSet classify_via_s(const Matrix& S, const Matrix& D, std::size_t d, std::size_t n, const Tolerance& tol) {
    const Spectrum sp = analyze(S, tol.squared_scale());
    VerdictSet set = empty_set("S");
    const double B = sp.sigma_max;
    const double a_span = sp.smallest_retained;
    const double a_d = sp.sigma(d);
    const bool bijective = sp.rank == d;
    const bool bl = sp.borderline;

    // (S^+ psi_k) biorthogonal to (psi_k) <=> D^H S^+ D = I_n. D^H S^+ D is an
    // orthogonal projection, so its distance from I_n is either ~0 or ~1.
    const Matrix P = D.adjoint() * pseudo_inverse(S, tol.squared_scale()) * D;
    const double biorth_defect = operator_norm(P - Matrix::identity(n));
    const bool biorthogonal = sp.rank > 0 && biorth_defect < 0.5;

    put(set, Label::bessel, true, upper_only(B), "dom(S)=H, B=||S||", kNaN, false);
    put(set, Label::frame_sequence, sp.rank > 0, both(a_span, B), "ran(S) closed and nonzero", sp.margin(sp.rank), bl);
    put(set, Label::frame, bijective, both(a_d, B), "S surjective", sp.margin(d), bl);
    put(set, Label::riesz_basis, bijective && biorthogonal, both(a_d, B),
        "S bijective and (S^-1 psi_k) biorthogonal to (psi_k)", sp.margin(d), bl);
    put(set, Label::lower_frame_sequence, bijective, lower_only(a_d), "S injective and ran(C) closed", sp.margin(d),
        bl);
    put(set, Label::riesz_fischer, biorthogonal, lower_only(a_span),
        "(S^+ psi_k) biorthogonal to (psi_k) on span", sp.margin(sp.rank), bl);
    put(set, Label::complete, bijective, FrameBounds{}, "S injective", sp.margin(d), bl);
    return set;
}

VerdictSet classify_via_g(const Matrix& G, std::size_t d, std::size_t n, const SectionsResult& sections,
                          const Tolerance& tol) {
    const Spectrum sp = analyze(G, tol.squared_scale());
    VerdictSet set = empty_set("G");
    const double B = sp.sigma_max;
    const double a_span = sp.smallest_retained;
    // Completeness is not a property of G alone: the rank must reach the
    // ambient dimension d, which G does not encode.
    const bool complete = sp.rank == d;
    const bool invertible = sp.rank == n;
    const bool bl = sp.borderline;

    put(set, Label::bessel, true, upper_only(B), "dom(G)=l^2, B=||G||", kNaN, false);
    put(set, Label::frame_sequence, sp.rank > 0, both(a_span, B), "G on ran(C) bounded with bounded inverse",
        sp.margin(sp.rank), bl);
    put(set, Label::frame, complete && sp.rank > 0, both(a_span, B),
        "complete and G on ran(C) bounded with bounded inverse", sp.margin(d), bl);
    put(set, Label::riesz_basis, complete && invertible, both(a_span, B), "complete and G bounded invertible",
        sp.margin(std::max(d, n)), bl);

    auto& lfs = set[Label::lower_frame_sequence];
    lfs.holds = Truth::undetermined;
    lfs.anchor = "open: no Gram-matrix criterion for lower frame sequences";

    const double section_margin = sections.threshold > 0.0 ? sections.a_est / sections.threshold : 0.0;
    put(set, Label::riesz_fischer, sections.riesz_fischer, lower_only(sections.a_est),
        "sections: A||c|| <= ||G_n c|| for all n", section_margin, bl);
    put(set, Label::complete, complete, FrameBounds{}, "rank(G) = dimension", sp.margin(d), bl);
    return set;
}

VerdictSet combine(const std::vector<const VerdictSet*>& routes, const VerdictSet& bounds_source) {
    VerdictSet out = empty_set("consensus");
    for (Label l : kAllLabels) {
        bool any = false;
        bool all_yes = true;
        bool borderline = false;
        for (const VerdictSet* r : routes) {
            const auto& v = (*r)[l];
            borderline = borderline || v.borderline;
            if (v.holds == Truth::undetermined) continue;
            any = true;
            if (v.holds == Truth::no) all_yes = false;
        }
        auto& c = out[l];
        c.holds = any ? truth(all_yes) : Truth::undetermined;
        c.borderline = borderline;
        c.anchor = bounds_source[l].anchor;
        c.margin = bounds_source[l].margin;
        if (c.holds == Truth::yes) c.bounds = bounds_source[l].bounds;
    }
    return out;
}

std::vector<std::pair<std::string, const VerdictSet*>> routes_of(const ClassificationReport& r) {
    std::vector<std::pair<std::string, const VerdictSet*>> out;
    if (r.via_c) out.emplace_back("C", &*r.via_c);
    if (r.via_d) out.emplace_back("D", &*r.via_d);
    if (r.via_s) out.emplace_back("S", &*r.via_s);
    if (r.via_g) out.emplace_back("G", &*r.via_g);
    return out;
}

} // namespace

std::string_view to_string(Label l) {
    switch (l) {
    case Label::bessel: return "Bessel";
    case Label::frame_sequence: return "FrameSequence";
    case Label::frame: return "Frame";
    case Label::riesz_basis: return "RieszBasis";
    case Label::lower_frame_sequence: return "LowerFrameSequence";
    case Label::riesz_fischer: return "RieszFischer";
    case Label::complete: return "Complete";
    }
    return "?";
}

Label label_from_string(std::string_view name) {
    for (Label l : kAllLabels)
        if (to_string(l) == name) return l;
    throw InvalidInput("unknown label '" + std::string(name) + "'");
}

SectionsResult riesz_fischer_via_sections(const FiniteSequence& seq, const Tolerance& tol) {
    const OperatorSuite suite = build_suite(seq, tol);
    const Matrix& G = suite.gram;
    SectionsResult out;
    out.threshold = tol.squared_scale().rank_rel * operator_norm(G);
    out.a_est = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= G.rows(); ++n) {
        const SvdResult s = svd(G.leading_block(n));
        const double smin = s.singular_values.back();
        out.per_section.push_back(smin);
        out.a_est = std::min(out.a_est, smin);
    }
    out.riesz_fischer = out.threshold > 0.0 && out.a_est > out.threshold;
    return out;
}

ClassificationReport classify_finite(const FiniteSequence& seq, const Tolerance& tol) {
    const OperatorSuite suite = build_suite(seq, tol);
    const std::size_t d = seq.dimension();
    const std::size_t n = seq.size();

    ClassificationReport r;
    r.subject = seq.label().value_or("finite sequence");
    r.tol = tol;
    r.via_c = classify_via_c(suite.analysis, d, n, tol);
    r.via_d = classify_via_d(suite.synthesis, d, n, tol);
    r.via_s = classify_via_s(suite.frame_op, suite.synthesis, d, n, tol);
    r.via_g = classify_via_g(suite.gram, d, n, riesz_fischer_via_sections(seq, tol), tol);
    r.consensus = combine({&*r.via_c, &*r.via_d, &*r.via_s, &*r.via_g}, *r.via_d);
    r.agreement = cross_check(r).agreement;
    for (const auto& [name, set] : routes_of(r))
        for (const auto& v : set->verdicts) r.borderline = r.borderline || v.borderline;
    return r;
}

ClassificationReport classify_finite(const FiniteSequence& seq) {
    return classify_finite(seq, Tolerance::for_shape(seq.dimension(), seq.size()));
}

AgreementReport cross_check(const ClassificationReport& report) {
    AgreementReport out;
    const auto routes = routes_of(report);
    for (Label l : kAllLabels) {
        for (std::size_t i = 0; i < routes.size(); ++i) {
            for (std::size_t j = i + 1; j < routes.size(); ++j) {
                const auto& a = (*routes[i].second)[l];
                const auto& b = (*routes[j].second)[l];
                if (a.holds == Truth::undetermined || b.holds == Truth::undetermined) continue;
                if (a.holds != b.holds)
                    out.disagreements.push_back({l, routes[i].first, routes[j].first, a.holds, b.holds, a.margin,
                                                 b.margin});
            }
        }
    }
    out.agreement = out.disagreements.empty();
    return out;
}

AgreementReport cross_check(const FiniteSequence& seq, const Tolerance& tol) {
    return cross_check(classify_finite(seq, tol));
}

ClassificationReport classify_structured(const StructuredSequence& s) {
    const Annotations& a = s.annotations();
    ClassificationReport r;
    r.subject = s.label();
    VerdictSet set = empty_set("annotation");
    const bool optimal = a.bounds_are_limits;
    auto decide = [&](Label l, std::optional<bool> holds, FrameBounds bounds, std::string anchor) {
        auto& v = set[l];
        v.anchor = std::move(anchor);
        if (!holds) {
            v.holds = Truth::undetermined;
            return;
        }
        v.holds = truth(*holds);
        bounds.optimal = optimal;
        if (*holds) v.bounds = bounds;
    };
    const ExtendedReal zero = ExtendedReal::finite(0.0L);

    std::optional<bool> bessel;
    if (a.sup_fiber_sum) bessel = a.sup_fiber_sum->is_finite();
    decide(Label::bessel, bessel, FrameBounds{std::nullopt, a.sup_fiber_sum, true}, "sup_fiber_sum < inf");

    std::optional<bool> lower;
    if (a.inf_fiber_sum_all) lower = *a.inf_fiber_sum_all > zero;
    decide(Label::lower_frame_sequence, lower, FrameBounds{a.inf_fiber_sum_all, std::nullopt, true},
           "inf_fiber_sum_all > 0");

    std::optional<bool> frame;
    if (bessel && lower) frame = *bessel && *lower;
    else if ((bessel && !*bessel) || (lower && !*lower)) frame = false;
    decide(Label::frame, frame, FrameBounds{a.inf_fiber_sum_all, a.sup_fiber_sum, true},
           "sup_fiber_sum < inf and inf_fiber_sum_all > 0");

    std::optional<bool> frame_seq;
    if (frame && *frame) frame_seq = true;
    else if (bessel && !*bessel) frame_seq = false;
    else if (bessel && a.inf_fiber_sum_range) frame_seq = *a.inf_fiber_sum_range > zero;
    decide(Label::frame_sequence, frame_seq, FrameBounds{a.inf_fiber_sum_range, a.sup_fiber_sum, true},
           "sup_fiber_sum < inf and inf_fiber_sum_range > 0");

    decide(Label::complete, a.sigma_surjective, FrameBounds{}, "sigma_surjective");

    std::optional<bool> rf;
    if (a.sigma_injective && !*a.sigma_injective) rf = false;
    else if (a.sigma_injective && a.inf_weight_sq) rf = *a.inf_weight_sq > zero;
    decide(Label::riesz_fischer, rf, FrameBounds{a.inf_weight_sq, std::nullopt, true},
           "sigma_injective and inf_weight_sq > 0");

    std::optional<bool> rb;
    if ((frame && !*frame) || (a.sigma_injective && !*a.sigma_injective) ||
        (a.sigma_surjective && !*a.sigma_surjective))
        rb = false;
    else if (frame && a.sigma_injective && a.sigma_surjective)
        rb = *frame && *a.sigma_injective && *a.sigma_surjective;
    decide(Label::riesz_basis, rb, FrameBounds{a.inf_fiber_sum_all, a.sup_fiber_sum, true},
           "frame with sigma bijective");

    r.consensus = set;
    r.agreement = true;
    r.borderline = false;
    return r;
}

std::string taxonomy_violation(const VerdictSet& set) {
    auto yes = [&](Label l) { return set[l].holds == Truth::yes; };
    auto no = [&](Label l) { return set[l].holds == Truth::no; };
    if (yes(Label::riesz_basis) && no(Label::frame)) return "RieszBasis without Frame";
    if (yes(Label::riesz_basis) && no(Label::riesz_fischer)) return "RieszBasis without RieszFischer";
    if (yes(Label::frame)) {
        for (Label l : {Label::frame_sequence, Label::complete, Label::lower_frame_sequence, Label::bessel})
            if (no(l)) return "Frame without " + std::string(to_string(l));
    }
    return {};
}

} // namespace frametk
