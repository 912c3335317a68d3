#pragma once

#include "pomr/greedy.hpp"
#include "pomr/sampling.hpp"

namespace pomr {

/// Chebyshev center of M_ps cap H_h for a single-ellipsoid prior; along the
/// unobserved prior directions the minimum-norm choice (zero) is taken.
HVector point_estimate(const Observation& obs, const DegenerateEllipsoid& prior,
                       const SuitableBases& bases);

/// One estimate per manifold point. Throws UnsupportedPrior when L > 1.
SnapshotSet point_estimates(const SnapshotSet& manifold, const Subspace& W,
                            const PriorManifold& prior, const BasesOptions& options = {1e-8, 1e-10, false});

GreedyResult reduce_from_estimates(const SnapshotSet& estimates, const StoppingRule& stop);

}  // namespace pomr
