#include "frametk/operators.hpp"

#include "frametk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frametk {

OperatorSuite build_suite(const FiniteSequence& seq, const Tolerance& tol) {
    const std::size_t d = seq.dimension();
    const std::size_t n = seq.size();
    Matrix D = seq.synthesis_matrix();
    Matrix C = D.adjoint();

    Matrix S(d, d);
    for (const auto& psi : seq.vectors())
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) S(i, j) += psi[i] * std::conj(psi[j]);

    Matrix G(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) G(k, l) = inner(seq[l], seq[k]);

    return OperatorSuite{std::move(D), std::move(C), std::move(S), std::move(G), seq, tol};
}

bool IdentityReport::all_passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const IdentityResidual& r) { return r.passed; });
}

const IdentityResidual& IdentityReport::at(std::string_view name) const {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw InvalidInput("no identity named '" + std::string(name) + "'");
}

IdentityReport check_identities(const OperatorSuite& suite) {
    const Tolerance& tol = suite.tol;
    const double thr = tol.residual_abs;
    IdentityReport report;
    auto add = [&](std::string name, double residual, double threshold) {
        report.entries.push_back({std::move(name), residual, threshold, residual <= threshold});
    };

    const Matrix& D = suite.synthesis;
    const Matrix& C = suite.analysis;
    const Matrix& S = suite.frame_op;
    const Matrix& G = suite.gram;

    // Exact: C is built as the entrywise conjugate transpose.
    add("C=D^H", (C - D.adjoint()).max_abs(), 0.0);
    // Product residuals are relative to ||S||_F = ||G||_F once that exceeds 1.
    const double scale = std::max(1.0, S.frobenius_norm());
    add("S=DC", (S - D * C).frobenius_norm() / scale, thr);
    add("G=CD", (G - C * D).frobenius_norm() / scale, thr);
    add("S=S^H", (S - S.adjoint()).frobenius_norm() / scale, thr);
    add("S>=0", std::max(0.0, -hermitian_eigen(S).values.front()) / scale, thr);

    const Matrix ker_s = subspace_basis(S, Subspace::nullspace, tol.squared_scale());
    const Matrix ker_c = subspace_basis(C, Subspace::nullspace, tol);
    const Matrix ran_d = subspace_basis(D, Subspace::range, tol);
    const Matrix ran_d_perp = orthogonal_complement(ran_d, tol);
    const Matrix ran_s = subspace_basis(S, Subspace::range, tol.squared_scale());

    // Computed subspaces of an operator are only accurate to about
    // eps * ||op|| / (smallest retained singular value).
    const double m = static_cast<double>(std::max(D.rows(), D.cols()));
    auto angle_threshold = [&](const Matrix& op, const Tolerance& t) {
        const SvdResult s = svd(op);
        const double gap = smallest_retained_singular_value(s, t);
        if (gap == 0.0) return thr;
        return std::max(thr, 16.0 * m * std::numeric_limits<double>::epsilon() * s.sigma_max() / gap);
    };
    const double thr_d = angle_threshold(D, tol);
    const double thr_s = std::max(thr_d, angle_threshold(S, tol.squared_scale()));

    add("ker S=ker C", principal_angle(ker_s, ker_c), thr_s);
    add("ker C=(ran D)^perp", principal_angle(ker_c, ran_d_perp), thr_d);
    add("ker S=(ran D)^perp", principal_angle(ker_s, ran_d_perp), thr_s);
    add("ran S<=ran D", std::asin(containment_sine(ran_s, ran_d)), thr_s);
    add("ran S=ran D", principal_angle(ran_s, ran_d), thr_s);
    return report;
}

SparseVector partial_synthesis(const StructuredSequence& s, const CoefficientSequence& c, std::size_t N) {
    SparseVector out;
    for (std::size_t k = 1; k <= N; ++k) {
        const lcplx ck = c(k);
        if (ck == lcplx{0.0L}) continue;
        const Atom a = s.atom(k);
        out[a.index] += ck * a.weight;
    }
    return out;
}

ExtendedReal gram_row_square_sum(const StructuredSequence& s, std::size_t k) {
    const Atom a = s.atom(k);
    const ExtendedReal fiber = s.fiber_sum(a.index);
    if (a.weight == 0.0L) return ExtendedReal::finite(0.0L);
    if (fiber.is_infinite()) return ExtendedReal::infinity();
    return ExtendedReal::finite(a.weight * a.weight * fiber.value());
}

long double truncated_gram_frobenius_sq(const StructuredSequence& s, std::size_t N) {
    long double total = 0.0L;
    for (long double ps : prefix_fiber_sums(s, N)) total += ps * ps;
    return total;
}

} // namespace frametk
