#pragma once

#include "frametk/linalg.hpp"
#include "frametk/sequence.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace frametk {

/// The four frame-related operators of a finite sequence.
struct OperatorSuite {
    Matrix synthesis; ///< D, d x n
    Matrix analysis;  ///< C = D^H, n x d
    Matrix frame_op;  ///< S, d x d
    Matrix gram;      ///< G, n x n, G(k, l) = <psi_l, psi_k>
    FiniteSequence source;
    Tolerance tol;
};

/// S is accumulated as sum_k psi_k psi_k^H and G from pairwise inner
/// products, so S = DC and G = CD are genuine checks rather than definitions.
OperatorSuite build_suite(const FiniteSequence& seq, const Tolerance& tol);

struct IdentityResidual {
    std::string name;
    double residual;
    double threshold;
    bool passed;
};

struct IdentityReport {
    std::vector<IdentityResidual> entries;
    bool all_passed() const;
    const IdentityResidual& at(std::string_view name) const;
};

/// Residuals for C = D^H, S = DC, G = CD, Hermitian/PSD S, the kernel chain
/// ker S = ker C = (ran D)^perp (principal angles), ran S inside ran D, and
/// ran S = ran D. Product residuals are relative to max(1, ||S||_F); angle
/// thresholds widen to the perturbation bound 16 m eps cond(op) for
/// ill-conditioned operators. S subspaces use tol.squared_scale().
IdentityReport check_identities(const OperatorSuite& suite);

/// Answer to "is this vector/coefficient sequence in the operator's domain?".
struct MembershipVerdict {
    MembershipStatus status = MembershipStatus::inconclusive;
    /// (truncation level, partial quantity) pairs.
    std::vector<std::pair<std::size_t, double>> evidence;
    /// Geometric tail estimate from the last two increments, when computable.
    std::optional<double> tail_estimate;
    /// Rule that decided an analytic verdict; empty for numeric verdicts.
    std::string anchor;

    bool analytic() const {
        return status == MembershipStatus::in_domain || status == MembershipStatus::not_in_domain;
    }
};

/// Default probe levels: 64, 256, 1024, 4096.
std::vector<std::size_t> default_probe_levels();

/// f given by its coordinates <f, e_n>. f is in dom(C) iff sum_n s_n |f_n|^2 < inf.
MembershipVerdict dom_c_membership(const StructuredSequence& s, const CoefficientSequence& f,
                                   const std::vector<std::size_t>& levels);
/// Probes partial sums of sum_k <f, psi_k> psi_k in sequence order.
MembershipVerdict dom_s_membership(const StructuredSequence& s, const CoefficientSequence& f,
                                   const std::vector<std::size_t>& levels);
/// Probes partial sums of sum_k c_k psi_k in sequence order.
MembershipVerdict dom_d_membership(const StructuredSequence& s, const CoefficientSequence& c,
                                   const std::vector<std::size_t>& levels);
/// Probes the row sums sum_l G(k, l) c_l and the l^2 norm of the result.
MembershipVerdict dom_g_membership(const StructuredSequence& s, const CoefficientSequence& c,
                                   const std::vector<std::size_t>& levels);

MembershipVerdict membership(OperatorDomain domain, const StructuredSequence& s, const CoefficientSequence& c,
                             const std::vector<std::size_t>& levels);

/// Sparse vector in l^2 keyed by 1-based basis index.
using SparseVector = std::map<std::size_t, lcplx>;

/// sum_{k <= N} c_k psi_k.
SparseVector partial_synthesis(const StructuredSequence& s, const CoefficientSequence& c, std::size_t N);

/// sum_l |<psi_l, psi_k>|^2 = w_k^2 s_{sigma(k)} for the 1-based index k.
ExtendedReal gram_row_square_sum(const StructuredSequence& s, std::size_t k);

/// ||G_N||_F^2 of the N x N truncated Gram matrix, computed from prefix
/// fiber sums (sum over n of (prefix s_n)^2).
long double truncated_gram_frobenius_sq(const StructuredSequence& s, std::size_t N);

} // namespace frametk
