#include "pomr/extended_real.hpp"

#include "pomr/errors.hpp"

#include <charconv>
#include <cmath>

namespace pomr {

ExtendedReal::ExtendedReal(double value) : value_(value) {
    require(std::isfinite(value), "ExtendedReal built from a non-finite double");
}

double ExtendedReal::value() const {
    if (infinite_) throw ContractViolation("value() of an infinite ExtendedReal");
    return value_;
}

std::string ExtendedReal::to_string() const { return infinite_ ? "inf" : format_real(value_); }

ExtendedReal min(const ExtendedReal& a, const ExtendedReal& b) noexcept { return b < a ? b : a; }

bool within(double value, const ExtendedReal& bound, double slack) noexcept {
    return bound.is_infinite() || value <= bound.value() + slack;
}

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace pomr
