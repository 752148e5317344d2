#pragma once

#include <compare>
#include <limits>
#include <string>

namespace frametk {

/// Nonnegative extended real: either a finite value or +infinity. Fiber sums
/// and bounds of non-Bessel sequences are genuinely infinite, so infinity is
/// a value here, not an overflow. Finite values are long double because some
/// fiber sums (4^n growth) leave the double range well before n = 4096.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    static constexpr ExtendedReal finite(long double x) { return ExtendedReal(x, false); }
    static constexpr ExtendedReal infinity() { return ExtendedReal(0.0, true); }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr bool is_finite() const noexcept { return !infinite_; }
    /// +inf when infinite.
    constexpr long double value() const noexcept {
        return infinite_ ? std::numeric_limits<long double>::infinity() : value_;
    }
    /// May overflow to +inf for huge finite values.
    constexpr double as_double() const noexcept { return static_cast<double>(value()); }

    constexpr bool operator==(const ExtendedReal& o) const noexcept {
        return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
    }
    constexpr std::partial_ordering operator<=>(const ExtendedReal& o) const noexcept {
        if (infinite_ || o.infinite_) return infinite_ <=> o.infinite_;
        return value_ <=> o.value_;
    }

    /// Scaling by a nonnegative factor; inf * 0 is taken as 0.
    ExtendedReal scaled(long double factor) const noexcept {
        if (infinite_) return factor == 0.0 ? finite(0.0) : infinity();
        return finite(value_ * factor);
    }

    std::string to_string() const;

private:
    constexpr ExtendedReal(long double v, bool inf) : value_(v), infinite_(inf) {}
    long double value_ = 0.0L;
    bool infinite_ = false;
};

} // namespace frametk
