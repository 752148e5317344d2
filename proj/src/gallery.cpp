#include "frametk/errors.hpp"
#include "frametk/sequence.hpp"

#include <cmath>
#include <numbers>

namespace frametk {

namespace {

const ExtendedReal kInf = ExtendedReal::infinity();
ExtendedReal fin(long double x) { return ExtendedReal::finite(x); }

// (e1, e1, e2, e1, e2, e3, ...): block m lists e_1..e_m.
Fixture make_r1() {
    auto gen = [](std::size_t k) {
        auto m = static_cast<std::size_t>((std::sqrt(8.0L * static_cast<long double>(k) + 1.0L) - 1.0L) / 2.0L);
        while (m * (m + 1) / 2 < k) ++m;
        while (m > 1 && (m - 1) * m / 2 >= k) --m;
        return Atom{k - (m - 1) * m / 2, 1.0L};
    };
    Annotations a;
    a.sup_fiber_sum = kInf;
    a.inf_fiber_sum_all = kInf;
    a.inf_fiber_sum_range = kInf;
    a.sigma_injective = false;
    a.sigma_surjective = true;
    a.inf_weight_sq = fin(1.0L);
    StructuredSequence s("R1 (e1, e1, e2, e1, e2, e3, ...)", gen, [](std::size_t) { return kInf; }, a);
    return Fixture{"R1",
                   std::move(s),
                   {
                       {"fiber_sum_infinite", true, "dom(C)={0}"},
                       {"label:Bessel", false, "non-Bessel sequence"},
                       {"dom_c:e1", MembershipStatus::not_in_domain, "dom(C)={0}"},
                       {"dom_s:e1", MembershipStatus::not_in_domain, "dom(S)={0}"},
                   }};
}

// (1/2 e1, 2 e2, 1/4 e1, 4 e3, 1/8 e1, 8 e4, ...): weight 2^-m on e1 at
// k = 2m-1 and weight 2^m on e_{m+1} at k = 2m.
Fixture make_r2() {
    auto gen = [](std::size_t k) {
        const auto m = static_cast<int>((k + 1) / 2);
        if (k % 2 == 1) return Atom{1, std::ldexp(1.0L, -m)};
        return Atom{static_cast<std::size_t>(m) + 1, std::ldexp(1.0L, m)};
    };
    auto fiber = [](std::size_t n) {
        if (n == 1) return fin(1.0L / 3.0L);
        return fin(std::ldexp(1.0L, 2 * (static_cast<int>(n) - 1)));
    };
    Annotations a;
    a.sup_fiber_sum = kInf;
    a.inf_fiber_sum_all = fin(1.0L / 3.0L);
    a.inf_fiber_sum_range = fin(1.0L / 3.0L);
    a.sigma_injective = false;
    a.sigma_surjective = true;
    a.inf_weight_sq = fin(0.0L);
    a.fiber_growth = Annotations::Growth{0.25L, 4.0L};
    StructuredSequence s("R2 (1/2 e1, 2 e2, 1/4 e1, 4 e3, ...)", gen, fiber, a);
    return Fixture{"R2",
                   std::move(s),
                   {
                       {"label:Bessel", false, "non-Bessel sequence"},
                       {"dom_c:h", MembershipStatus::in_domain, "h∈dom(C)"},
                       {"dom_s:h", MembershipStatus::numeric_diverges, "h∉dom(S)"},
                   }};
}

// (e1, e2, e1, e3, e1, e4, ...).
Fixture make_r3() {
    auto gen = [](std::size_t k) {
        if (k % 2 == 1) return Atom{1, 1.0L};
        return Atom{k / 2 + 1, 1.0L};
    };
    auto fiber = [](std::size_t n) { return n == 1 ? kInf : fin(1.0L); };
    Annotations a;
    a.sup_fiber_sum = kInf;
    a.inf_fiber_sum_all = fin(1.0L);
    a.inf_fiber_sum_range = fin(1.0L);
    a.sigma_injective = false;
    a.sigma_surjective = true;
    a.inf_weight_sq = fin(1.0L);
    StructuredSequence s("R3 (e1, e2, e1, e3, e1, e4, ...)", gen, fiber, a);
    return Fixture{"R3",
                   std::move(s),
                   {
                       {"label:Bessel", false, "non-Bessel sequence"},
                       {"dom_d:delta1", MembershipStatus::in_domain, "δ_1∈dom(D)"},
                       {"dom_g:delta1", MembershipStatus::not_in_domain, "δ_1∉dom(G)"},
                   }};
}

// (e1, e1, e1, ...).
Fixture make_r4() {
    auto gen = [](std::size_t) { return Atom{1, 1.0L}; };
    auto fiber = [](std::size_t n) { return n == 1 ? kInf : fin(0.0L); };
    Annotations a;
    a.sup_fiber_sum = kInf;
    a.inf_fiber_sum_all = fin(0.0L);
    a.inf_fiber_sum_range = kInf;
    a.sigma_injective = false;
    a.sigma_surjective = false;
    a.inf_weight_sq = fin(1.0L);
    StructuredSequence s("R4 (e1, e1, e1, ...)", gen, fiber, a);
    // The alternating-series tail at N is about 1/(2N); the probe needs
    // levels out to ~4^10 before the geometric tail estimate drops below 1e-6.
    std::vector<std::size_t> long_levels;
    for (std::size_t n = 64; n <= (std::size_t{1} << 20); n *= 4) long_levels.push_back(n);
    return Fixture{"R4",
                   std::move(s),
                   {
                       {"label:Bessel", false, "non-Bessel sequence"},
                       {"dom_d:harmonic-alt", MembershipStatus::numeric_converges, "Σc_kψ_k=(ln2)e_1", long_levels},
                       {"series_limit_ln2", std::numbers::ln2, "Σc_kψ_k=(ln2)e_1"},
                       {"dom_d:harmonic", MembershipStatus::numeric_diverges, "Σc_kε_kψ_k does not converge"},
                   }};
}

// (e1, 2 e2, 3 e3, ...).
Fixture make_r5() {
    auto gen = [](std::size_t k) { return Atom{k, static_cast<long double>(k)}; };
    auto fiber = [](std::size_t n) { return fin(static_cast<long double>(n) * static_cast<long double>(n)); };
    Annotations a;
    a.sup_fiber_sum = kInf;
    a.inf_fiber_sum_all = fin(1.0L);
    a.inf_fiber_sum_range = fin(1.0L);
    a.sigma_injective = true;
    a.sigma_surjective = true;
    a.inf_weight_sq = fin(1.0L);
    a.fiber_growth = Annotations::Growth{2.0L, 2.0L};
    StructuredSequence s("R5 (e1, 2 e2, 3 e3, ...)", gen, fiber, a);
    return Fixture{"R5",
                   std::move(s),
                   {
                       {"gram_rows_square_summable", true, "Σ_l|<ψ_l,ψ_k>|^2<∞ for every k"},
                       {"label:Bessel", false, "not a Bessel sequence"},
                       {"dom_g:delta1", MembershipStatus::in_domain, "δ_1∈dom(G)"},
                   }};
}

// (e1, e2/2, e3/3, ...).
Fixture make_r6() {
    auto gen = [](std::size_t k) { return Atom{k, 1.0L / static_cast<long double>(k)}; };
    auto fiber = [](std::size_t n) {
        const auto x = static_cast<long double>(n);
        return fin(1.0L / (x * x));
    };
    Annotations a;
    a.sup_fiber_sum = fin(1.0L);
    a.inf_fiber_sum_all = fin(0.0L);
    a.inf_fiber_sum_range = fin(0.0L);
    a.sigma_injective = true;
    a.sigma_surjective = true;
    a.inf_weight_sq = fin(0.0L);
    a.fiber_growth = Annotations::Growth{1.0L, 1.0L};
    StructuredSequence s("R6 (e1, e2/2, e3/3, ...)", gen, fiber, a);
    return Fixture{"R6",
                   std::move(s),
                   {
                       {"gram_hilbert_schmidt", true, "ΣΣ|<ψ_l,ψ_k>|^2<∞"},
                       {"label:Bessel", true, "Bessel sequence"},
                       {"dom_s:e1", MembershipStatus::in_domain, "e_1∈dom(S)"},
                   }};
}

// (e2, e3, e4, ...).
Fixture make_r7() {
    auto gen = [](std::size_t k) { return Atom{k + 1, 1.0L}; };
    auto fiber = [](std::size_t n) { return n == 1 ? fin(0.0L) : fin(1.0L); };
    Annotations a;
    a.sup_fiber_sum = fin(1.0L);
    a.inf_fiber_sum_all = fin(0.0L);
    a.inf_fiber_sum_range = fin(1.0L);
    a.sigma_injective = true;
    a.sigma_surjective = false;
    a.inf_weight_sq = fin(1.0L);
    a.fiber_growth = Annotations::Growth{1.0L, 1.0L};
    StructuredSequence s("R7 (e2, e3, e4, ...)", gen, fiber, a);
    return Fixture{"R7",
                   std::move(s),
                   {
                       {"same_gram_as_onb", true, "same Gram matrix as (e_1, e_2, ...)"},
                       {"label:Complete", false, "(e_2, e_3, ...) is not complete"},
                   }};
}

} // namespace

StructuredSequence canonical_onb() {
    Annotations a;
    a.sup_fiber_sum = fin(1.0L);
    a.inf_fiber_sum_all = fin(1.0L);
    a.inf_fiber_sum_range = fin(1.0L);
    a.sigma_injective = true;
    a.sigma_surjective = true;
    a.inf_weight_sq = fin(1.0L);
    a.fiber_growth = Annotations::Growth{1.0L, 1.0L};
    return StructuredSequence(
        "ONB (e1, e2, e3, ...)", [](std::size_t k) { return Atom{k, 1.0L}; }, [](std::size_t) { return fin(1.0L); },
        a);
}

std::vector<Fixture> gallery() {
    std::vector<Fixture> out;
    out.push_back(make_r1());
    out.push_back(make_r2());
    out.push_back(make_r3());
    out.push_back(make_r4());
    out.push_back(make_r5());
    out.push_back(make_r6());
    out.push_back(make_r7());
    return out;
}

Fixture fixture_by_id(std::string_view id) {
    for (auto& f : gallery())
        if (f.id == id) return f;
    throw InvalidInput("unknown fixture '" + std::string(id) + "' (expected R1..R7)");
}

CoefficientSequence named_coefficient(std::string_view name) {
    if (name == "zeros") return CoefficientSequence::zeros();
    if (name == "delta1" || name == "e1") return CoefficientSequence::delta(1);
    if (name == "harmonic-alt") return CoefficientSequence::alternating_harmonic();
    if (name == "harmonic") return CoefficientSequence::harmonic();
    if (name == "h") return CoefficientSequence::geometric(1.0L, 0.25L, "h");
    throw InvalidInput("unknown coefficient sequence '" + std::string(name) + "'");
}

} // namespace frametk
