#pragma once

#include "frametk/classifier.hpp"
#include "frametk/linalg.hpp"
#include "frametk/sequence.hpp"

#include <map>
#include <string>
#include <string_view>

namespace frametk {

/// (F psi_k)_k in C^{F.rows()}. Throws InvalidInput when F.cols() != dimension.
FiniteSequence apply_operator(const Matrix& f, const FiniteSequence& seq);

enum class Rule { bessel, frame, riesz_basis, lower_frame, riesz_fischer };

std::string_view to_string(Rule r);
/// Throws InvalidInput on an unknown name.
Rule rule_from_string(std::string_view name);
/// Label a sequence must carry before and after the transform.
Label label_for(Rule r);

struct TransformPrediction {
    FrameBounds input;
    double op_norm = 0.0;  ///< ||F||
    double inv_norm = 0.0; ///< ||F^+||, ||F^-1|| or K depending on the rule; 0 for bessel
    FrameBounds predicted;
    Rule rule = Rule::bessel;
};

/// Predicted bounds of (F psi_k) from bounds of (psi_k):
///   B' = B ||F||^2 for every rule,
///   A' = A / inv_norm^2 where inv_norm is 1/sigma_r(F) and F must be
///   surjective (frame, lower_frame), bijective (riesz_basis) or injective
///   (riesz_fischer). Throws HypothesisError naming the failed condition.
TransformPrediction predict_bounds(const FrameBounds& input, const Matrix& f, Rule rule, const Tolerance& tol);

struct SandwichReport {
    TransformPrediction prediction;
    FrameBounds actual; ///< optimal bounds of the transformed sequence
    bool label_holds = false;
    bool sandwich = false;
    double slack = 0.0;
    ClassificationReport transformed;
};

/// Classifies seq, predicts, applies F, classifies again and checks
/// predicted.A - slack <= A* and B* <= predicted.B + slack. Throws
/// HypothesisError when seq lacks the rule's label or F fails the hypothesis.
SandwichReport verify_transform(const FiniteSequence& seq, const Matrix& f, Rule rule, const Tolerance& tol,
                                double slack = 1e-6);

struct FactorizationReport {
    Matrix v; ///< d x n, v * delta_k = psi_k
    double norm = 0.0;
    bool bounded = true;
    bool closed_range = true;
    bool surjective = false;
    bool injective = false;
    bool bijective = false;
    bool dense_range = false;
    double inverse_norm = 0.0; ///< ||v^-1|| on ran v; 0 when v = 0
    /// Labels implied by the operator properties of v.
    std::map<Label, bool> labels() const;
};

/// Writes psi_k = V delta_k with (delta_k) the canonical basis of C^n.
FactorizationReport factorize_via_onb(const FiniteSequence& seq, const Tolerance& tol);

} // namespace frametk
