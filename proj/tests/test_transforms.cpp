#include "frametk/errors.hpp"
#include "frametk/transforms.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace frametk;
using namespace frametk::testing;

namespace {

FrameBounds bounds(double a, double b) { return {ExtendedReal::finite(a), ExtendedReal::finite(b), true}; }
double val(const std::optional<ExtendedReal>& x) { return static_cast<double>(x.value().value()); }

// Q R with Q unitary: Gram-Schmidt on a Gaussian matrix.
Matrix random_unitary(Rng& rng, std::size_t n) {
    return subspace_basis(random_matrix(rng, n, n), Subspace::range, Tolerance::for_shape(n, n));
}

} // namespace

TEST_CASE("apply_operator") {
    const FiniteSequence onb = FiniteSequence::canonical_basis(2);
    CHECK(apply_operator(Matrix::identity(2), onb).vectors() == onb.vectors());
    const FiniteSequence zero = apply_operator(Matrix(3, 2), onb);
    CHECK(zero.dimension() == 3);
    for (const auto& v : zero.vectors()) CHECK(norm2(v) == 0.0);
    const double f[] = {1, 0, 0, 2};
    const FiniteSequence img = apply_operator(Matrix::from_real(2, 2, f), onb);
    CHECK(img[0] == std::vector<cplx>{1.0, 0.0});
    CHECK(img[1] == std::vector<cplx>{0.0, 2.0});
    CHECK_THROWS_AS(apply_operator(Matrix::identity(3), onb), InvalidInput);
}

TEST_CASE("rule names") {
    for (Rule r : {Rule::bessel, Rule::frame, Rule::riesz_basis, Rule::lower_frame, Rule::riesz_fischer})
        CHECK(rule_from_string(to_string(r)) == r);
    CHECK_THROWS_AS(rule_from_string("tight"), InvalidInput);
}

TEST_CASE("predicted bounds for scalings and isometries") {
    const Tolerance tol = Tolerance::for_shape(3, 3);
    const TransformPrediction p = predict_bounds(bounds(0.5, 3.0), 2.0 * Matrix::identity(3), Rule::frame, tol);
    CHECK(val(p.predicted.lower) == doctest::Approx(2.0));
    CHECK(val(p.predicted.upper) == doctest::Approx(12.0));
    CHECK(p.inv_norm == doctest::Approx(0.5));

    Rng rng(3);
    const Matrix u = random_unitary(rng, 3);
    const TransformPrediction q = predict_bounds(bounds(0.5, 3.0), u, Rule::frame, tol);
    CHECK(val(q.predicted.lower) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(val(q.predicted.upper) == doctest::Approx(3.0).epsilon(1e-12));

    const double f[] = {1, 0, 0, 2};
    const TransformPrediction rb =
        predict_bounds(bounds(1.0, 1.0), Matrix::from_real(2, 2, f), Rule::riesz_basis, Tolerance::for_shape(2, 2));
    CHECK(val(rb.predicted.lower) == doctest::Approx(1.0));
    CHECK(val(rb.predicted.upper) == doctest::Approx(4.0));

    const TransformPrediction b = predict_bounds(bounds(1.0, 2.0), Matrix(2, 3), Rule::bessel, tol);
    CHECK_FALSE(b.predicted.lower);
    CHECK(val(b.predicted.upper) == 0.0);
}

TEST_CASE("hypothesis failures name the condition") {
    const Tolerance tol = Tolerance::for_shape(3, 3);
    const double deficient[] = {1, 0, 0, 0, 1, 0, 0, 0, 0};
    const Matrix f = Matrix::from_real(3, 3, deficient);
    CHECK_THROWS_WITH_AS(predict_bounds(bounds(1, 1), f, Rule::frame, tol), doctest::Contains("surjective"),
                         HypothesisError);
    CHECK_THROWS_WITH_AS(predict_bounds(bounds(1, 1), f, Rule::riesz_basis, tol), doctest::Contains("bijective"),
                         HypothesisError);
    CHECK_THROWS_WITH_AS(predict_bounds(bounds(1, 1), f, Rule::riesz_fischer, tol), doctest::Contains("injective"),
                         HypothesisError);
    CHECK_THROWS_AS(predict_bounds(bounds(1, 1), Matrix(2, 3), Rule::riesz_basis, tol), HypothesisError);
    const FiniteSequence line(2, {{1.0, 0.0}});
    CHECK_THROWS_AS(verify_transform(line, Matrix::identity(2), Rule::frame, Tolerance::for_shape(2, 1)),
                    HypothesisError);
}

TEST_CASE("prediction scales quadratically with the operator") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = uniform(rng, 1, 5);
        const Matrix f = random_matrix(rng, d, d + uniform(rng, 0, 3));
        const double t = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
        const Tolerance tol = Tolerance::for_shape(f.rows(), f.cols());
        const auto p1 = predict_bounds(bounds(0.7, 2.5), f, Rule::frame, tol);
        const auto pt = predict_bounds(bounds(0.7, 2.5), t * f, Rule::frame, tol);
        CHECK(val(pt.predicted.lower) == doctest::Approx(t * t * val(p1.predicted.lower)).epsilon(1e-12));
        CHECK(val(pt.predicted.upper) == doctest::Approx(t * t * val(p1.predicted.upper)).epsilon(1e-12));
    }
}

TEST_CASE("sandwich holds for every rule") {
    Rng rng(17);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto rule = static_cast<Rule>(trial % 5);
        std::size_t d = uniform(rng, 1, 5);
        std::size_t n = 0;
        Matrix f;
        switch (rule) {
        case Rule::bessel: n = uniform(rng, 1, 7); f = random_matrix(rng, uniform(rng, 1, 6), d); break;
        case Rule::frame:
        case Rule::lower_frame: n = uniform(rng, d, 8); f = random_matrix(rng, uniform(rng, 1, d), d); break;
        case Rule::riesz_basis: n = d; f = random_matrix(rng, d, d); break;
        case Rule::riesz_fischer: n = uniform(rng, 1, d); f = random_matrix(rng, d + uniform(rng, 0, 3), d); break;
        }
        const FiniteSequence s = random_sequence(rng, d, n);
        const SandwichReport r = verify_transform(s, f, rule, Tolerance::for_shape(d, n));
        CAPTURE(to_string(rule));
        CHECK(r.label_holds);
        CHECK(r.sandwich);
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("identity transform reproduces the bounds") {
    Rng rng(4);
    const FiniteSequence s = random_sequence(rng, 3, 6);
    const SandwichReport r = verify_transform(s, Matrix::identity(3), Rule::frame, Tolerance::for_shape(3, 6));
    CHECK(val(r.actual.lower) == doctest::Approx(val(r.prediction.predicted.lower)).epsilon(1e-12));
    CHECK(val(r.actual.upper) == doctest::Approx(val(r.prediction.predicted.upper)).epsilon(1e-12));
}

TEST_CASE("factorization through the canonical basis") {
    SUBCASE("ONB") {
        const auto f = factorize_via_onb(FiniteSequence::canonical_basis(3), Tolerance::for_shape(3, 3));
        CHECK(f.v == Matrix::identity(3));
        CHECK(f.bijective);
    }
    SUBCASE("(e1, e1, e2)") {
        const FiniteSequence s(2, {{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
        const auto f = factorize_via_onb(s, Tolerance::for_shape(2, 3));
        const double v[] = {1, 1, 0, 0, 0, 1};
        CHECK(f.v == Matrix::from_real(2, 3, v));
        CHECK(f.surjective);
        CHECK_FALSE(f.injective);
        CHECK(f.labels().at(Label::frame));
        CHECK_FALSE(f.labels().at(Label::riesz_fischer));
    }
    SUBCASE("(e1, e2/2) in C^3") {
        const FiniteSequence s(3, {{1.0, 0.0, 0.0}, {0.0, 0.5, 0.0}});
        const auto f = factorize_via_onb(s, Tolerance::for_shape(3, 2));
        CHECK(f.injective);
        CHECK_FALSE(f.surjective);
        CHECK(f.inverse_norm == doctest::Approx(2.0));
        CHECK(f.labels().at(Label::frame_sequence));
        CHECK_FALSE(f.labels().at(Label::complete));
        const auto c = classify_finite(s);
        CHECK(val(c.consensus[Label::riesz_fischer].bounds.lower) == doctest::Approx(0.25));
    }
}

TEST_CASE("factorization round trip matches classification") {
    Rng rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = uniform(rng, 1, 6);
        const std::size_t n = uniform(rng, 1, 8);
        const FiniteSequence s = random_family(rng, d, n, trial);
        const Tolerance tol = Tolerance::for_shape(d, n);
        const auto f = factorize_via_onb(s, tol);
        const FiniteSequence back = apply_operator(f.v, FiniteSequence::canonical_basis(n));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(back[k][i] - s[k][i]) <= 1e-12 * std::max(1.0, std::abs(s[k][i])));
        const auto c = classify_finite(s, tol);
        const auto c_back = classify_finite(back, tol);
        for (const auto& [label, holds] : f.labels()) {
            CAPTURE(to_string(label));
            CHECK(c.consensus[label].holds == (holds ? Truth::yes : Truth::no));
            CHECK(c_back.consensus[label].holds == c.consensus[label].holds);
        }
    }
}
