#include "frametk/transforms.hpp"

#include "frametk/errors.hpp"

#include <string>

namespace frametk {

FiniteSequence apply_operator(const Matrix& f, const FiniteSequence& seq) {
    if (f.cols() != seq.dimension())
        throw InvalidInput("operator has " + std::to_string(f.cols()) + " columns, sequence dimension is " +
                           std::to_string(seq.dimension()));
    if (f.rows() == 0) throw InvalidInput("operator has no rows");
    std::vector<std::vector<cplx>> out;
    out.reserve(seq.size());
    for (const auto& v : seq.vectors()) out.push_back(f * std::span<const cplx>(v));
    return FiniteSequence(f.rows(), std::move(out), seq.label());
}

std::string_view to_string(Rule r) {
    switch (r) {
    case Rule::bessel: return "bessel";
    case Rule::frame: return "frame";
    case Rule::riesz_basis: return "riesz_basis";
    case Rule::lower_frame: return "lower_frame";
    case Rule::riesz_fischer: return "riesz_fischer";
    }
    return "?";
}

Rule rule_from_string(std::string_view name) {
    for (Rule r : {Rule::bessel, Rule::frame, Rule::riesz_basis, Rule::lower_frame, Rule::riesz_fischer})
        if (to_string(r) == name) return r;
    throw InvalidInput("unknown rule '" + std::string(name) + "'");
}

Label label_for(Rule r) {
    switch (r) {
    case Rule::bessel: return Label::bessel;
    case Rule::frame: return Label::frame;
    case Rule::riesz_basis: return Label::riesz_basis;
    case Rule::lower_frame: return Label::lower_frame_sequence;
    case Rule::riesz_fischer: return Label::riesz_fischer;
    }
    return Label::bessel;
}

TransformPrediction predict_bounds(const FrameBounds& input, const Matrix& f, Rule rule, const Tolerance& tol) {
    if (f.empty()) throw InvalidInput("operator is empty");
    const SvdResult s = svd(f);
    const std::size_t r = numerical_rank(s, tol);

    TransformPrediction p;
    p.input = input;
    p.rule = rule;
    p.op_norm = s.sigma_max();

    switch (rule) {
    case Rule::bessel: break;
    case Rule::frame:
    case Rule::lower_frame:
        if (r != f.rows())
            throw HypothesisError("F is not surjective: rank " + std::to_string(r) + " < " +
                                  std::to_string(f.rows()) + " rows");
        break;
    case Rule::riesz_basis:
        if (f.rows() != f.cols()) throw HypothesisError("F is not bijective: not square");
        if (r != f.rows()) throw HypothesisError("F is not bijective: rank " + std::to_string(r));
        break;
    case Rule::riesz_fischer:
        if (r != f.cols())
            throw HypothesisError("F is not injective: rank " + std::to_string(r) + " < " +
                                  std::to_string(f.cols()) + " columns");
        break;
    }

    const long double b_scale = static_cast<long double>(p.op_norm) * p.op_norm;
    if (input.upper) p.predicted.upper = input.upper->scaled(b_scale);
    if (rule != Rule::bessel) {
        const double smin = s.singular_values[r - 1];
        p.inv_norm = 1.0 / smin;
        if (input.lower) p.predicted.lower = input.lower->scaled(static_cast<long double>(smin) * smin);
    }
    return p;
}

SandwichReport verify_transform(const FiniteSequence& seq, const Matrix& f, Rule rule, const Tolerance& tol,
                                double slack) {
    const Label label = label_for(rule);
    const ClassificationReport before = classify_finite(seq, tol);
    if (!before.consensus.holds(label))
        throw HypothesisError("input sequence is not " + std::string(to_string(label)));

    FrameBounds input = before.consensus[label].bounds;
    if (!input.upper) input.upper = before.consensus[Label::bessel].bounds.upper;

    SandwichReport out;
    out.slack = slack;
    out.prediction = predict_bounds(input, f, rule, tol);

    const FiniteSequence image = apply_operator(f, seq);
    out.transformed = classify_finite(image, Tolerance::for_shape(image.dimension(), image.size()));
    const auto& v = out.transformed.consensus[label];
    out.label_holds = v.holds == Truth::yes;
    out.actual = v.bounds;
    if (!out.actual.upper) out.actual.upper = out.transformed.consensus[Label::bessel].bounds.upper;

    bool ok = out.label_holds;
    const auto& pred = out.prediction.predicted;
    if (ok && pred.upper && out.actual.upper)
        ok = out.actual.upper->value() <= pred.upper->value() + slack;
    if (ok && pred.lower && rule != Rule::bessel)
        ok = out.actual.lower && pred.lower->value() - slack <= out.actual.lower->value();
    out.sandwich = ok;
    return out;
}

std::map<Label, bool> FactorizationReport::labels() const {
    const bool nonzero = norm > 0.0;
    return {
        {Label::bessel, bounded},
        {Label::frame_sequence, closed_range && nonzero},
        {Label::frame, surjective},
        {Label::riesz_basis, bijective},
        {Label::lower_frame_sequence, surjective},
        {Label::riesz_fischer, injective},
        {Label::complete, dense_range},
    };
}

FactorizationReport factorize_via_onb(const FiniteSequence& seq, const Tolerance& tol) {
    FactorizationReport r;
    // V = D_Psi C_(delta_k); C_(delta_k) is the identity on C^n.
    r.v = seq.synthesis_matrix() * Matrix::identity(seq.size());
    const SvdResult s = svd(r.v);
    const std::size_t rank = numerical_rank(s, tol);
    r.norm = s.sigma_max();
    r.surjective = rank == seq.dimension();
    r.injective = rank == seq.size();
    r.bijective = r.surjective && r.injective;
    r.dense_range = r.surjective;
    const double smin = smallest_retained_singular_value(s, tol);
    r.inverse_norm = smin > 0.0 ? 1.0 / smin : 0.0;
    return r;
}

} // namespace frametk
