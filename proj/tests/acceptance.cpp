// Acceptance suite: one PASS/FAIL line per criterion.

#include "frametk/classifier.hpp"
#include "frametk/fact_check.hpp"
#include "frametk/operators.hpp"
#include "frametk/transforms.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

using namespace frametk;
using namespace frametk::testing;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && passed) detail << what;
        passed = passed && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double as_double(const std::optional<ExtendedReal>& x) { return x ? static_cast<double>(x->value()) : 0.0; }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// 1. Gallery ground truth.
void gallery_truth(Outcome& o) {
    const auto levels = default_probe_levels();
    Rng rng(1001);

    const auto r1 = fixture_by_id("R1").sequence;
    for (int i = 0; i < 10; ++i) {
        std::vector<lcplx> f(uniform(rng, 1, 30));
        for (auto& x : f) x = lcplx(gaussian(rng).real(), gaussian(rng).imag());
        f[uniform(rng, 0, f.size() - 1)] += lcplx{1.0L};
        const auto v = dom_c_membership(r1, CoefficientSequence::finite(f, "random"), levels);
        o.require(v.status == MembershipStatus::not_in_domain, "R1: random f reported in dom(C)");
    }

    const auto r2 = fixture_by_id("R2").sequence;
    const auto h = named_coefficient("h");
    const auto c2 = dom_c_membership(r2, h, levels);
    o.require(c2.status == MembershipStatus::in_domain, "R2: h not in dom(C)");
    o.require(c2.tail_estimate && *c2.tail_estimate < 1e-6, "R2: sum |<h,psi_k>|^2 tail >= 1e-6 at N=4096");
    o.require(dom_s_membership(r2, h, levels).status == MembershipStatus::numeric_diverges,
              "R2: dom(S) probe for h does not diverge");

    const auto r3 = fixture_by_id("R3").sequence;
    const auto d1 = named_coefficient("delta1");
    o.require(dom_d_membership(r3, d1, levels).status == MembershipStatus::in_domain, "R3: delta1 not in dom(D)");
    o.require(dom_g_membership(r3, d1, levels).status == MembershipStatus::not_in_domain, "R3: delta1 in dom(G)");

    const auto r4 = fixture_by_id("R4").sequence;
    const double dist = ln2_partial_distance(r4, 1000);
    o.require(dist <= 1.0 / 1001.0, "R4: ||P_1000 - ln2 e1|| = " + fmt(dist) + " > 1/1001");
    const SparseVector flipped = partial_synthesis(r4, named_coefficient("harmonic"), 1000);
    long double norm_sq = 0.0L;
    for (const auto& [n, z] : flipped) norm_sq += std::norm(z);
    o.require(std::sqrt(norm_sq) > 5.0L, "R4: sign-flipped partial sum below 5 at N=1000");

    for (const auto& f : gallery())
        for (const auto& r : check_fixture(f)) o.require(r.passed, f.id + " " + r.fact + " observed " + r.observed);
}

// 2. Hilbert-Schmidt Gram of R6.
void hilbert_schmidt(Outcome& o) {
    const auto r6 = fixture_by_id("R6").sequence;
    long double oracle = 0.0L;
    for (int k = 100; k >= 1; --k) oracle += 1.0L / (static_cast<long double>(k) * k * k * k);
    const double closed = static_cast<double>(truncated_gram_frobenius_sq(r6, 100));
    const FiniteSequence t = truncate(r6, 100);
    const double frob = build_suite(t, Tolerance::for_shape(100, 100)).gram.frobenius_norm();
    const double explicit_sq = frob * frob;
    const double zeta4 = std::pow(std::numbers::pi, 4) / 90.0;
    o.require(std::abs(closed - static_cast<double>(oracle)) <= 1e-12, "closed form differs from sum k^-4");
    o.require(std::abs(explicit_sq - static_cast<double>(oracle)) <= 1e-12, "explicit Gram differs from sum k^-4");
    o.require(std::abs(closed - zeta4) <= 1e-4, "not within 1e-4 of pi^4/90");
    o.require(zeta4 - closed <= 1.0 / (3.0 * 100 * 100 * 100), "tail exceeds 1/(3 N^3)");
}

// 3. Operator identities on random families.
void identities(Outcome& o) {
    Rng rng(3003);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = uniform(rng, 1, 16);
        const std::size_t n = uniform(rng, 1, 32);
        const FiniteSequence s = random_family(rng, d, n, trial % 3);
        const OperatorSuite suite = build_suite(s, Tolerance::for_shape(d, n));
        const IdentityReport r = check_identities(suite);
        o.require(r.at("C=D^H").residual == 0.0, "C != D^H exactly");
        // Absolute residuals, recomputed here rather than read from the report.
        const double s_res = (suite.frame_op - suite.synthesis * suite.analysis).frobenius_norm();
        const double g_res = (suite.gram - suite.analysis * suite.synthesis).frobenius_norm();
        o.require(s_res <= 1e-9, "S=DC residual " + fmt(s_res));
        o.require(g_res <= 1e-9, "G=CD residual " + fmt(g_res));
        for (const char* name : {"ker S=ker C", "ker C=(ran D)^perp", "ker S=(ran D)^perp", "ran S<=ran D",
                                 "ran S=ran D"}) {
            const double angle = r.at(name).residual;
            worst = std::max(worst, angle);
            o.require(angle <= 1e-9, std::string(name) + " angle " + fmt(angle));
        }
    }
    o.detail << (o.passed ? "max angle " + fmt(worst) : "");
}

// 4. Cross-check and brute-force bounds. Also feeds criterion 5's monotonicity check.
std::vector<FiniteSequence> g_classified;

void cross_check_bounds(Outcome& o) {
    Rng rng(4004);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t d = uniform(rng, 1, 8);
        const std::size_t n = uniform(rng, 1, 16);
        FiniteSequence s = random_family(rng, d, n, trial % 4 == 3 ? 0 : trial);
        if (trial % 4 == 3) {
            // Column scales spread over four decades.
            Matrix m = s.synthesis_matrix();
            for (std::size_t j = 0; j < n; ++j) {
                const double t = std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
                for (std::size_t i = 0; i < d; ++i) m(i, j) = s[j][i] * t;
            }
            s = FiniteSequence::from_matrix(m);
        }
        g_classified.push_back(s);
        const ClassificationReport r = classify_finite(s);
        const AgreementReport a = cross_check(r);
        if (!a.agreement) {
            const auto& dis = a.disagreements.front();
            o.require(false, "routes " + dis.route_a + "/" + dis.route_b + " disagree on " +
                                 std::string(to_string(dis.label)) + " (d=" + std::to_string(d) +
                                 ", n=" + std::to_string(n) + ")");
        }
        o.require(taxonomy_violation(r.consensus).empty(), taxonomy_violation(r.consensus));

        const double B = as_double(r.consensus[Label::bessel].bounds.upper);
        const double A = r.consensus.holds(Label::frame) ? as_double(r.consensus[Label::frame].bounds.lower) : 0.0;
        double qmin = INFINITY;
        double qmax = 0.0;
        for (int i = 0; i < 500; ++i) {
            const double q = frame_quotient(s, random_unit(rng, d));
            qmin = std::min(qmin, q);
            qmax = std::max(qmax, q);
        }
        o.require(A - 1e-6 <= qmin, "min quotient " + fmt(qmin) + " below A " + fmt(A));
        o.require(qmax <= B + 1e-6, "max quotient " + fmt(qmax) + " above B " + fmt(B));
    }
}

// 5. Gram sections.
void sections(Outcome& o) {
    for (const auto& s : g_classified) {
        const Tolerance tol = Tolerance::for_shape(s.dimension(), s.size());
        const SectionsResult sec = riesz_fischer_via_sections(s, tol);
        // Nonincreasing up to the rounding level of the computed sections.
        const double slack = 64.0 * static_cast<double>(s.size()) * std::numeric_limits<double>::epsilon() *
                             operator_norm(build_suite(s, tol).gram);
        for (std::size_t i = 1; i < sec.per_section.size(); ++i)
            o.require(sec.per_section[i] <= sec.per_section[i - 1] + slack,
                      "sigma_min(G_n) increased by " + fmt(sec.per_section[i] - sec.per_section[i - 1]));
    }
    Rng rng(5005);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = uniform(rng, 1, 10);
        const std::size_t d = uniform(rng, n, 12);
        const FiniteSequence s = random_sequence(rng, d, n);
        const Tolerance tol = Tolerance::for_shape(d, n);
        const SectionsResult sec = riesz_fischer_via_sections(s, tol);
        const ClassificationReport r = classify_finite(s, tol);
        o.require(r.consensus.holds(Label::riesz_fischer) && sec.riesz_fischer, "injective family not Riesz-Fischer");
        const double diff = std::abs(sec.a_est - as_double(r.consensus[Label::riesz_fischer].bounds.lower));
        worst = std::max(worst, diff);
        o.require(diff <= 1e-9, "A_est differs from the Riesz-Fischer bound by " + fmt(diff));
    }
    for (int trial = 0; trial < 100; ++trial) {
        // Dependent columns: a repeated column or more vectors than dimensions.
        const bool repeat = trial % 2 == 1;
        const std::size_t d = uniform(rng, repeat ? 2 : 1, 6);
        Matrix m = random_matrix(rng, d, repeat ? d : d + uniform(rng, 1, 4));
        if (repeat) m.set_column(d - 1, m.column(0));
        const FiniteSequence s = FiniteSequence::from_matrix(m);
        const SectionsResult sec = riesz_fischer_via_sections(s, Tolerance::for_shape(d, m.cols()));
        o.require(sec.a_est <= sec.threshold && !sec.riesz_fischer, "dependent family passes the sections test");
    }
    o.detail << (o.passed ? "max |A_est - A_RF| " + fmt(worst) : "");
}

// 6. Transform sandwich.
void sandwich(Outcome& o) {
    Rng rng(6006);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = uniform(rng, 1, 6);
        const std::size_t n = uniform(rng, d, 10);
        const FiniteSequence s = random_sequence(rng, d, n);
        const Matrix f = random_matrix(rng, uniform(rng, 1, d), d);
        const SandwichReport r = verify_transform(s, f, Rule::frame, Tolerance::for_shape(d, n), 1e-6);
        o.require(r.sandwich, "sandwich violated at trial " + std::to_string(trial));
    }
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = uniform(rng, 1, 6);
        const std::size_t n = uniform(rng, d, 10);
        const FiniteSequence s = random_sequence(rng, d, n);
        const Tolerance tol = Tolerance::for_shape(d, n);
        const Matrix u = subspace_basis(random_matrix(rng, d, d), Subspace::range, Tolerance::for_shape(d, d));
        const double t = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
        const FrameBounds in = classify_finite(s, tol).consensus[Label::frame].bounds;
        const double A = as_double(in.lower);
        const double B = as_double(in.upper);

        const SandwichReport ru = verify_transform(s, u, Rule::frame, tol);
        o.require(std::abs(as_double(ru.actual.lower) - A) <= 1e-9 * B &&
                      std::abs(as_double(ru.actual.upper) - B) <= 1e-9 * B,
                  "unitary F changed the bounds");
        o.require(std::abs(as_double(ru.prediction.predicted.lower) - A) <= 1e-12 * B, "unitary prediction != A");

        const SandwichReport rt = verify_transform(s, t * Matrix::identity(d), Rule::frame, tol);
        const double t2 = t * t;
        o.require(std::abs(as_double(rt.prediction.predicted.lower) - t2 * A) <= 1e-12 * t2 * B &&
                      std::abs(as_double(rt.prediction.predicted.upper) - t2 * B) <= 1e-12 * t2 * B,
                  "tI prediction != t^2 (A, B)");
        o.require(std::abs(as_double(rt.actual.lower) - t2 * A) <= 1e-9 * t2 * B &&
                      std::abs(as_double(rt.actual.upper) - t2 * B) <= 1e-9 * t2 * B,
                  "tI actual bounds != t^2 (A, B)");
    }
}

// 7. Factorization round trip and the R7 Gram test.
void factorization(Outcome& o) {
    Rng rng(7007);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = uniform(rng, 1, 8);
        const std::size_t n = uniform(rng, 1, 12);
        const FiniteSequence s = random_family(rng, d, n, trial % 3);
        const Tolerance tol = Tolerance::for_shape(d, n);
        const FactorizationReport f = factorize_via_onb(s, tol);
        const FiniteSequence back = apply_operator(f.v, FiniteSequence::canonical_basis(n));
        double err = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < d; ++i) err = std::max(err, std::abs(back[k][i] - s[k][i]));
        o.require(err <= 1e-12, "re-synthesis error " + fmt(err));
        const ClassificationReport c = classify_finite(s, tol);
        for (const auto& [label, holds] : f.labels())
            o.require(c.consensus[label].holds == (holds ? Truth::yes : Truth::no),
                      "property report disagrees on " + std::string(to_string(label)));
    }
    const auto r7 = fixture_by_id("R7").sequence;
    const auto onb = canonical_onb();
    for (std::size_t N : {16u, 64u}) {
        const FiniteSequence a = truncate(r7, N);
        const FiniteSequence b = truncate(onb, N);
        const Tolerance tol = Tolerance::for_shape(N + 1, N);
        o.require(build_suite(a, tol).gram == build_suite(b, tol).gram, "truncated Grams differ");
        o.require(!classify_finite(a).consensus.holds(Label::complete) &&
                      classify_finite(b).consensus.holds(Label::complete),
                  "finite Complete verdicts do not differ");
    }
    o.require(classify_structured(r7).consensus[Label::complete].holds == Truth::no &&
                  classify_structured(onb).consensus[Label::complete].holds == Truth::yes,
              "structured Complete verdicts do not differ");
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<void(Outcome&)> body;
    };
    const std::vector<Criterion> criteria = {
        {1, "gallery ground truth", 10.0, gallery_truth},
        {2, "R6 Hilbert-Schmidt Gram", 1.0, hilbert_schmidt},
        {3, "operator identities", 30.0, identities},
        {4, "classification cross-check", 60.0, cross_check_bounds},
        {5, "Gram sections", 60.0, sections},
        {6, "transform sandwich", 60.0, sandwich},
        {7, "ONB factorization round trip", 60.0, factorization},
    };

    const auto start = std::chrono::steady_clock::now();
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed = seconds_since(t0);
        o.require(elapsed <= c.budget_s, "over time budget");
        if (!o.passed) ++failures;
        std::printf("[%s] %d %s (%.2f s) %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, elapsed,
                    o.detail.str().c_str());
    }
    const double total = seconds_since(start);
    std::printf("total %.2f s, %d of %zu criteria failed\n", total, failures, criteria.size());
    return failures == 0 && total <= 180.0 ? 0 : 1;
}
