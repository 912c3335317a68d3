#pragma once

// Randomized property suites shared by the selftest subcommand and the
// acceptance binary. Each returns a pass flag with a short measurement.

#include <cstdint>
#include <string>

namespace pomr {

struct CheckResult {
    bool pass = false;
    std::string detail;
};

/// Suitable-bases invariants on random (V, W) pairs in R^N.
CheckResult check_suitable_bases(int trials, long N, std::uint64_t seed);

/// Single-prior slice samples match the observation and stay in the prior;
/// accepted samples of nested two-ellipsoid priors satisfy both constraints.
CheckResult check_sampler(int trials, long samples, std::uint64_t seed);

/// Point estimate equals the slice center; zero observations give zero.
CheckResult check_point_estimate(int trials, std::uint64_t seed);

/// Empirical widths of union-set clouds stay below min(d_bar, d_bar_bar).
CheckResult check_width_bounds(int instances, long cloud_size, std::uint64_t seed);

}  // namespace pomr
