#include "frametk/fact_check.hpp"

#include "frametk/classifier.hpp"
#include "frametk/errors.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace frametk {

namespace {

constexpr std::size_t kScanLimit = 4096;
constexpr std::size_t kLn2Level = 1000;
constexpr std::size_t kGramCompareLevel = 64;

std::string truth_text(Truth t) {
    switch (t) {
    case Truth::yes: return "true";
    case Truth::no: return "false";
    case Truth::undetermined: return "undetermined";
    }
    return "?";
}

std::string number_text(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

OperatorDomain domain_from_letter(char c) {
    switch (c) {
    case 'c': return OperatorDomain::C;
    case 'd': return OperatorDomain::D;
    case 's': return OperatorDomain::S;
    case 'g': return OperatorDomain::G;
    }
    throw InvalidInput(std::string("unknown operator domain '") + c + "'");
}

Matrix truncated_gram(const StructuredSequence& s, std::size_t N) {
    const std::vector<Atom> atoms = s.prefix(N);
    Matrix g(N, N);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l)
            if (atoms[k].index == atoms[l].index)
                g(k, l) = static_cast<double>(atoms[k].weight * atoms[l].weight);
    return g;
}

} // namespace

double ln2_partial_distance(const StructuredSequence& s, std::size_t N) {
    SparseVector p = partial_synthesis(s, CoefficientSequence::alternating_harmonic(), N);
    p[1] -= std::numbers::ln2_v<long double>;
    long double acc = 0.0L;
    for (const auto& [n, z] : p) acc += std::norm(z);
    return static_cast<double>(std::sqrt(acc));
}

FactResult check_fact(const Fixture& fixture, const Fact& fact) {
    FactResult r;
    r.fixture = fixture.id;
    r.fact = fact.id;
    r.anchor = fact.anchor;
    const StructuredSequence& s = fixture.sequence;
    const std::string& id = fact.id;

    if (id.rfind("label:", 0) == 0) {
        const Label label = label_from_string(id.substr(6));
        const Truth got = classify_structured(s).consensus[label].holds;
        r.observed = truth_text(got);
        r.passed = got == (std::get<bool>(fact.expected) ? Truth::yes : Truth::no);
    } else if (id.rfind("dom_", 0) == 0 && id.size() > 6 && id[5] == ':') {
        const OperatorDomain dom = domain_from_letter(id[4]);
        const CoefficientSequence c = named_coefficient(id.substr(6));
        const auto levels = fact.levels.empty() ? default_probe_levels() : fact.levels;
        MembershipVerdict v = membership(dom, s, c, levels);
        if (v.analytic() && v.anchor.empty()) v.anchor = fact.anchor;
        r.observed = std::string(to_string(v.status));
        r.passed = v.status == std::get<MembershipStatus>(fact.expected);
        r.verdict = std::move(v);
    } else if (id == "fiber_sum_infinite") {
        bool all = true;
        for (std::size_t n = 1; n <= kScanLimit && all; ++n) all = s.fiber_sum(n).is_infinite();
        r.observed = all ? "true" : "false";
        r.passed = all == std::get<bool>(fact.expected);
    } else if (id == "series_limit_ln2") {
        const double dist = ln2_partial_distance(s, kLn2Level);
        r.observed = number_text(dist);
        r.passed = dist <= 1.0 / (kLn2Level + 1);
    } else if (id == "gram_rows_square_summable") {
        bool all = true;
        for (std::size_t k = 1; k <= kScanLimit && all; ++k) all = gram_row_square_sum(s, k).is_finite();
        r.observed = all ? "true" : "false";
        r.passed = all == std::get<bool>(fact.expected);
    } else if (id == "gram_hilbert_schmidt") {
        std::vector<double> q;
        for (std::size_t N : default_probe_levels())
            q.push_back(static_cast<double>(truncated_gram_frobenius_sq(s, N)));
        // Increments must shrink geometrically and leave a small tail.
        bool converges = true;
        for (std::size_t i = 2; i < q.size(); ++i)
            if (q[i] - q[i - 1] > (q[i - 1] - q[i - 2]) / 2.0) converges = false;
        converges = converges && q.back() - q[q.size() - 2] < 1e-6;
        r.observed = number_text(q.back());
        r.passed = converges == std::get<bool>(fact.expected);
    } else if (id == "same_gram_as_onb") {
        const double diff =
            (truncated_gram(s, kGramCompareLevel) - truncated_gram(canonical_onb(), kGramCompareLevel)).max_abs();
        const bool same = diff == 0.0;
        r.observed = number_text(diff);
        r.passed = same == std::get<bool>(fact.expected);
    } else {
        throw InvalidInput("unknown fact '" + id + "'");
    }
    return r;
}

std::vector<FactResult> check_fixture(const Fixture& fixture) {
    std::vector<FactResult> out;
    for (const Fact& f : fixture.expected) out.push_back(check_fact(fixture, f));
    return out;
}

} // namespace frametk
