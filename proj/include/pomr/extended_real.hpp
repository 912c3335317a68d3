#pragma once

#include <compare>
#include <string>

namespace pomr {

/// A nonnegative real or +infinity. Infinity is a state, not a float value.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    explicit ExtendedReal(double value);
    static constexpr ExtendedReal infinity() noexcept { return ExtendedReal(Tag{}); }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr bool is_finite() const noexcept { return !infinite_; }
    /// Throws ContractViolation when infinite.
    double value() const;

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) noexcept {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) noexcept {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }

    /// Shortest round-trip decimal, or "inf".
    std::string to_string() const;

private:
    struct Tag {};
    constexpr explicit ExtendedReal(Tag) noexcept : infinite_(true) {}

    double value_ = 0.0;
    bool infinite_ = false;
};

ExtendedReal min(const ExtendedReal& a, const ExtendedReal& b) noexcept;

/// Finite value <= bound + slack; anything is <= infinity.
bool within(double value, const ExtendedReal& bound, double slack) noexcept;

/// Shortest decimal string that parses back to the same double.
std::string format_real(double v);

}  // namespace pomr
