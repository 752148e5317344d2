#include "frametk/errors.hpp"
#include "frametk/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace frametk {

namespace {

constexpr double kTailCutoff = 1e-6;
constexpr double kGrowthFactor = 1e3;
constexpr double kIncrementFloor = 1e-3;
constexpr std::size_t kMinNumericLevels = 4;

void validate_levels(const std::vector<std::size_t>& levels) {
    if (levels.empty()) throw InvalidInput("at least one truncation level is required");
    if (levels.front() == 0) throw InvalidInput("truncation levels must be positive");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] <= levels[i - 1]) throw InvalidInput("truncation levels must be strictly increasing");
}

struct Trace {
    std::vector<std::size_t> levels;
    std::vector<double> quantity;   // partial norm / sum at each level
    std::vector<double> increments; // distance between consecutive partial objects
};

MembershipVerdict numeric_verdict(const Trace& t) {
    MembershipVerdict v;
    for (std::size_t i = 0; i < t.levels.size(); ++i) v.evidence.emplace_back(t.levels[i], t.quantity[i]);

    const auto& inc = t.increments;
    if (inc.size() >= 2) {
        const double last = inc.back();
        const double prev = inc[inc.size() - 2];
        if (last == 0.0) {
            v.tail_estimate = 0.0;
        } else if (prev > 0.0 && last < prev) {
            const double rho = last / prev;
            v.tail_estimate = last * rho / (1.0 - rho);
        }
    }

    if (t.levels.size() < kMinNumericLevels) {
        v.status = MembershipStatus::inconclusive;
        return v;
    }

    bool shrinking = true;
    for (std::size_t i = 1; i < inc.size(); ++i)
        if (inc[i] > inc[i - 1] / 2.0) shrinking = false;
    if (shrinking && v.tail_estimate && *v.tail_estimate < kTailCutoff) {
        v.status = MembershipStatus::numeric_converges;
        return v;
    }

    const auto& q = t.quantity;
    const bool monotone = std::is_sorted(q.begin(), q.end());
    const bool blew_up = monotone && q.front() > 0.0 && q.back() > kGrowthFactor * q.front();
    const bool increments_bounded_below =
        std::all_of(inc.begin(), inc.end(), [](double x) { return x >= kIncrementFloor; });
    v.status = (blew_up || increments_bounded_below) ? MembershipStatus::numeric_diverges
                                                     : MembershipStatus::inconclusive;
    return v;
}

MembershipVerdict analytic(MembershipVerdict numeric, MembershipStatus status, std::string anchor) {
    numeric.status = status;
    numeric.anchor = std::move(anchor);
    return numeric;
}

// Walks k = 1..max(levels), feeding each atom to `step`. At every level it
// samples `measure` and `interval_increment`, which reports the change since
// the previous sample and resets its accumulator.
template <typename Step, typename Measure, typename Increment>
Trace walk(const StructuredSequence& s, const std::vector<std::size_t>& levels, Step step, Measure measure,
           Increment interval_increment) {
    Trace t;
    std::size_t next = 0;
    for (std::size_t k = 1; k <= levels.back(); ++k) {
        step(k, s.atom(k));
        if (k == levels[next]) {
            t.levels.push_back(k);
            t.quantity.push_back(measure());
            const double inc = interval_increment();
            if (next > 0) t.increments.push_back(inc);
            ++next;
        }
    }
    return t;
}

// Vector accumulator for the partial sums of a series sum_k a_k e_{sigma(k)}:
// tracks the running vector and the change since the last sample.
struct SeriesTracker {
    SparseVector total;
    SparseVector since_last;

    void add(std::size_t n, lcplx x) {
        if (x == lcplx{0.0L}) return;
        total[n] += x;
        since_last[n] += x;
    }
    double norm() const {
        long double acc = 0.0L;
        for (const auto& [n, z] : total) acc += std::norm(z);
        return static_cast<double>(std::sqrt(acc));
    }
    double take_increment() {
        long double acc = 0.0L;
        for (const auto& [n, z] : since_last) acc += std::norm(z);
        since_last.clear();
        return static_cast<double>(std::sqrt(acc));
    }
};

bool square_summable(const CoefficientSequence& f) {
    return f.kind() == CoefficientSequence::Kind::finitely_supported || f.decay().has_value();
}

// Coordinate index bound to scan for infinite fibers hit by f.
std::size_t scan_bound(const CoefficientSequence& f, const std::vector<std::size_t>& levels) {
    if (auto b = f.support_bound()) return *b;
    return levels.back();
}

// First n with f_n != 0 and s_n = inf, if any.
std::optional<std::size_t> hits_infinite_fiber(const StructuredSequence& s, const CoefficientSequence& f,
                                               std::size_t bound) {
    for (std::size_t n = 1; n <= bound; ++n)
        if (f(n) != lcplx{0.0L} && s.fiber_sum(n).is_infinite()) return n;
    return std::nullopt;
}

bool bessel(const StructuredSequence& s) {
    const auto& sup = s.annotations().sup_fiber_sum;
    return sup && sup->is_finite();
}

} // namespace

std::vector<std::size_t> default_probe_levels() { return {64, 256, 1024, 4096}; }

MembershipVerdict dom_c_membership(const StructuredSequence& s, const CoefficientSequence& f,
                                   const std::vector<std::size_t>& levels) {
    validate_levels(levels);
    long double sum = 0.0L;
    long double since = 0.0L;
    const Trace t = walk(
        s, levels,
        [&](std::size_t, const Atom& a) {
            const long double term = std::norm(a.weight * f(a.index));
            sum += term;
            since += term;
        },
        [&] { return static_cast<double>(sum); },
        [&] {
            const auto x = static_cast<double>(since);
            since = 0.0L;
            return x;
        });
    MembershipVerdict v = numeric_verdict(t);

    if (f.is_zero()) return analytic(std::move(v), MembershipStatus::in_domain, "f = 0");
    if (auto n = hits_infinite_fiber(s, f, scan_bound(f, levels)))
        return analytic(std::move(v), MembershipStatus::not_in_domain,
                        "s_" + std::to_string(*n) + " = inf and <f,e_" + std::to_string(*n) + "> != 0");
    if (f.kind() == CoefficientSequence::Kind::finitely_supported)
        return analytic(std::move(v), MembershipStatus::in_domain, "finite support on finite fiber sums");
    if (bessel(s) && square_summable(f))
        return analytic(std::move(v), MembershipStatus::in_domain, "Bessel sequence: dom(C) = H");
    const auto& growth = s.annotations().fiber_growth;
    if (growth && f.decay() && growth->ratio * f.decay()->ratio * f.decay()->ratio < 1.0L)
        return analytic(std::move(v), MembershipStatus::in_domain,
                        "sum_n s_n |f_n|^2 dominated by a convergent geometric series");
    return v;
}

MembershipVerdict dom_s_membership(const StructuredSequence& s, const CoefficientSequence& f,
                                   const std::vector<std::size_t>& levels) {
    validate_levels(levels);
    SeriesTracker series;
    const Trace t = walk(
        s, levels, [&](std::size_t, const Atom& a) { series.add(a.index, a.weight * a.weight * f(a.index)); },
        [&] { return series.norm(); }, [&] { return series.take_increment(); });
    MembershipVerdict v = numeric_verdict(t);

    if (f.is_zero()) return analytic(std::move(v), MembershipStatus::in_domain, "f = 0");
    if (auto n = hits_infinite_fiber(s, f, scan_bound(f, levels)))
        return analytic(std::move(v), MembershipStatus::not_in_domain,
                        "coordinate " + std::to_string(*n) + " of the partial sums is unbounded (s_" +
                            std::to_string(*n) + " = inf)");
    if (f.kind() == CoefficientSequence::Kind::finitely_supported)
        return analytic(std::move(v), MembershipStatus::in_domain, "finite support on finite fiber sums");
    if (bessel(s) && square_summable(f))
        return analytic(std::move(v), MembershipStatus::in_domain, "Bessel sequence: dom(S) = H");
    return v;
}

MembershipVerdict dom_d_membership(const StructuredSequence& s, const CoefficientSequence& c,
                                   const std::vector<std::size_t>& levels) {
    validate_levels(levels);
    SeriesTracker series;
    const Trace t = walk(
        s, levels, [&](std::size_t k, const Atom& a) { series.add(a.index, c(k) * a.weight); },
        [&] { return series.norm(); }, [&] { return series.take_increment(); });
    MembershipVerdict v = numeric_verdict(t);

    if (c.kind() == CoefficientSequence::Kind::finitely_supported)
        return analytic(std::move(v), MembershipStatus::in_domain, "finite sequences lie in dom(D)");
    if (bessel(s) && square_summable(c))
        return analytic(std::move(v), MembershipStatus::in_domain, "Bessel sequence: dom(D) = l^2");
    return v;
}

MembershipVerdict dom_g_membership(const StructuredSequence& s, const CoefficientSequence& c,
                                   const std::vector<std::size_t>& levels) {
    validate_levels(levels);
    // Row k of Gc is w_k * g_{sigma(k)} with g_n = sum_{l: sigma(l) = n} c_l w_l,
    // so ||Gc||^2 over rows k <= N equals sum_n ps_n(N) |g_n(N)|^2.
    std::map<std::size_t, lcplx> g;
    std::map<std::size_t, long double> ps;
    double previous = 0.0;
    auto norm_sq = [&] {
        long double acc = 0.0L;
        for (const auto& [n, gn] : g) {
            const auto it = ps.find(n);
            if (it != ps.end()) acc += it->second * std::norm(gn);
        }
        return static_cast<double>(acc);
    };
    const Trace t = walk(
        s, levels,
        [&](std::size_t k, const Atom& a) {
            ps[a.index] += a.weight * a.weight;
            const lcplx ck = c(k);
            if (ck != lcplx{0.0L}) g[a.index] += ck * a.weight;
        },
        norm_sq,
        [&] {
            const double now = norm_sq();
            const double inc = std::abs(now - previous);
            previous = now;
            return inc;
        });
    MembershipVerdict v = numeric_verdict(t);

    if (c.kind() == CoefficientSequence::Kind::finitely_supported) {
        std::map<std::size_t, lcplx> fiber_coeff;
        long double scale = 0.0L;
        for (std::size_t l = 1; l <= *c.support_bound(); ++l) {
            const lcplx cl = c(l);
            if (cl == lcplx{0.0L}) continue;
            const Atom a = s.atom(l);
            fiber_coeff[a.index] += cl * a.weight;
            scale += std::abs(cl * a.weight);
        }
        for (const auto& [n, gn] : fiber_coeff) {
            if (std::abs(gn) > 1e-15L * scale && s.fiber_sum(n).is_infinite())
                return analytic(std::move(v), MembershipStatus::not_in_domain,
                                "rows on fiber " + std::to_string(n) + " are constant multiples of w_k with s_" +
                                    std::to_string(n) + " = inf");
        }
        return analytic(std::move(v), MembershipStatus::in_domain, "finite support on finite fiber sums");
    }
    if (bessel(s) && square_summable(c))
        return analytic(std::move(v), MembershipStatus::in_domain, "Bessel sequence: dom(G) = l^2");
    return v;
}

MembershipVerdict membership(OperatorDomain domain, const StructuredSequence& s, const CoefficientSequence& c,
                             const std::vector<std::size_t>& levels) {
    switch (domain) {
    case OperatorDomain::C: return dom_c_membership(s, c, levels);
    case OperatorDomain::D: return dom_d_membership(s, c, levels);
    case OperatorDomain::S: return dom_s_membership(s, c, levels);
    case OperatorDomain::G: return dom_g_membership(s, c, levels);
    }
    throw InvalidInput("unknown operator domain");
}

} // namespace frametk
