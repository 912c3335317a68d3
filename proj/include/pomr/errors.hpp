#pragma once

#include <stdexcept>
#include <string>

namespace pomr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a precondition (dimension mismatch, bad index, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// The (V, W) pair cannot be decomposed into the four orthogonal blocks.
class InfeasibleGeometry : public Error {
public:
    using Error::Error;
};

/// The observation is incompatible with the prior: the slice has negative budget.
class EmptySlice : public Error {
public:
    explicit EmptySlice(double budget)
        : Error("empty slice: radius budget " + std::to_string(budget) + " < 0"),
          budget_(budget) {}

    double budget() const noexcept { return budget_; }

private:
    double budget_;
};

/// Point estimation is only available for single-ellipsoid priors.
class UnsupportedPrior : public Error {
public:
    using Error::Error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw ContractViolation(message);
}

}  // namespace pomr
