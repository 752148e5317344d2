#include "frametk/sequence.hpp"

#include "frametk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace frametk {

std::string ExtendedReal::to_string() const {
    if (infinite_) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << static_cast<double>(value_);
    return os.str();
}

std::string_view to_string(MembershipStatus s) {
    switch (s) {
    case MembershipStatus::in_domain: return "InDomain";
    case MembershipStatus::not_in_domain: return "NotInDomain";
    case MembershipStatus::numeric_converges: return "NumericEvidenceConverges";
    case MembershipStatus::numeric_diverges: return "NumericEvidenceDiverges";
    case MembershipStatus::inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

FiniteSequence::FiniteSequence(std::size_t dimension, std::vector<std::vector<cplx>> vectors,
                               std::optional<std::string> label)
    : dimension_(dimension), vectors_(std::move(vectors)), label_(std::move(label)) {
    if (dimension_ == 0) throw InvalidInput("sequence dimension must be positive");
    if (vectors_.empty()) throw InvalidInput("sequence must contain at least one vector");
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
        if (vectors_[k].size() != dimension_)
            throw InvalidInput("vector " + std::to_string(k) + " has length " + std::to_string(vectors_[k].size()) +
                               ", expected " + std::to_string(dimension_));
        for (const auto& z : vectors_[k])
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw InvalidInput("vector " + std::to_string(k) + " has a non-finite entry");
    }
}

FiniteSequence FiniteSequence::from_matrix(const Matrix& synthesis, std::optional<std::string> label) {
    std::vector<std::vector<cplx>> vs;
    vs.reserve(synthesis.cols());
    for (std::size_t j = 0; j < synthesis.cols(); ++j) vs.push_back(synthesis.column(j));
    return FiniteSequence(synthesis.rows(), std::move(vs), std::move(label));
}

FiniteSequence FiniteSequence::canonical_basis(std::size_t n) {
    return from_matrix(Matrix::identity(n), "canonical basis of C^" + std::to_string(n));
}

Matrix FiniteSequence::synthesis_matrix() const { return Matrix::from_columns(vectors_, dimension_); }

StructuredSequence::StructuredSequence(std::string label, Generator generator, FiberSum fiber_sum,
                                       Annotations annotations)
    : label_(std::move(label)), generator_(std::move(generator)), fiber_sum_(std::move(fiber_sum)),
      annotations_(annotations) {}

Atom StructuredSequence::atom(std::size_t k) const {
    if (k == 0) throw InvalidInput("structured sequences are indexed from 1");
    return generator_(k);
}

std::vector<Atom> StructuredSequence::prefix(std::size_t N) const {
    std::vector<Atom> out;
    out.reserve(N);
    for (std::size_t k = 1; k <= N; ++k) out.push_back(generator_(k));
    return out;
}

std::vector<long double> prefix_fiber_sums(const StructuredSequence& s, std::size_t N) {
    std::vector<long double> sums;
    for (std::size_t k = 1; k <= N; ++k) {
        const Atom a = s.atom(k);
        if (a.index > sums.size()) sums.resize(a.index, 0.0L);
        sums[a.index - 1] += a.weight * a.weight;
    }
    return sums;
}

FiniteSequence truncate(const StructuredSequence& s, std::size_t N) {
    if (N == 0) throw InvalidInput("truncation level must be positive");
    const std::vector<Atom> atoms = s.prefix(N);
    std::size_t d = 0;
    for (const auto& a : atoms) d = std::max(d, a.index);
    std::vector<std::vector<cplx>> vs(N, std::vector<cplx>(d, cplx{0.0}));
    for (std::size_t k = 0; k < N; ++k) vs[k][atoms[k].index - 1] = static_cast<double>(atoms[k].weight);
    return FiniteSequence(d, std::move(vs), s.label() + " truncated at " + std::to_string(N));
}

CoefficientSequence CoefficientSequence::finite(std::vector<lcplx> values, std::string label) {
    for (const auto& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidInput("coefficient sequence has a non-finite entry");
    CoefficientSequence c;
    c.kind_ = Kind::finitely_supported;
    c.finite_values_ = std::move(values);
    c.label_ = std::move(label);
    return c;
}

CoefficientSequence CoefficientSequence::closed_form(std::function<lcplx(std::size_t)> values, std::string label,
                                                     std::optional<Decay> decay) {
    CoefficientSequence c;
    c.kind_ = Kind::closed_form;
    c.closed_form_ = std::move(values);
    c.decay_ = decay;
    c.label_ = std::move(label);
    return c;
}

CoefficientSequence CoefficientSequence::zeros() { return finite({}, "zeros"); }

CoefficientSequence CoefficientSequence::delta(std::size_t j) {
    if (j == 0) throw InvalidInput("delta index is 1-based");
    std::vector<lcplx> v(j, lcplx{0.0L});
    v[j - 1] = 1.0L;
    return finite(std::move(v), "delta" + std::to_string(j));
}

CoefficientSequence CoefficientSequence::alternating_harmonic() {
    return closed_form(
        [](std::size_t k) {
            const long double mag = 1.0L / static_cast<long double>(k);
            return lcplx{k % 2 == 1 ? mag : -mag};
        },
        "harmonic-alt");
}

CoefficientSequence CoefficientSequence::harmonic() {
    return closed_form([](std::size_t k) { return lcplx{1.0L / static_cast<long double>(k)}; }, "harmonic");
}

CoefficientSequence CoefficientSequence::geometric(long double first, long double ratio, std::string label) {
    std::optional<Decay> decay;
    if (ratio > 0.0L && ratio < 1.0L) decay = Decay{std::abs(first) / ratio, ratio};
    return closed_form(
        [first, ratio](std::size_t k) { return lcplx{first * std::pow(ratio, static_cast<long double>(k - 1))}; },
        std::move(label), decay);
}

lcplx CoefficientSequence::operator()(std::size_t k) const {
    if (k == 0) throw InvalidInput("coefficient sequences are indexed from 1");
    if (kind_ == Kind::closed_form) return closed_form_(k);
    return k <= finite_values_.size() ? finite_values_[k - 1] : lcplx{0.0L};
}

std::optional<std::size_t> CoefficientSequence::support_bound() const {
    if (kind_ == Kind::closed_form) return std::nullopt;
    return finite_values_.size();
}

bool CoefficientSequence::is_zero() const {
    return kind_ == Kind::finitely_supported &&
           std::all_of(finite_values_.begin(), finite_values_.end(), [](const lcplx& z) { return z == lcplx{0.0L}; });
}

} // namespace frametk
