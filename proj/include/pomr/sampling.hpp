#pragma once

// Sampling of the posterior slice M_ps cap H_h, where H_h is the affine set of
// states sharing the observations of h.

#include "pomr/geometry.hpp"
#include "pomr/greedy.hpp"
#include "pomr/rng.hpp"
#include "pomr/suitable_bases.hpp"

#include <cstdint>
#include <memory>

namespace pomr {

struct Observation {
    Eigen::VectorXd values;  // <w_j, h> in the raw basis of W
};

Observation observe(const HVector& h, const Subspace& W);

using BasesPtr = std::shared_ptr<const SuitableBases>;

struct EllipsoidSlice {
    BasesPtr bases;
    Eigen::VectorXd alpha;  // <w*_j, h>
    HVector center;
    double radius_sq_budget = 0.0;  // negative when the slice is empty
    double width = 0.0;

    bool empty() const noexcept { return radius_sq_budget < 0.0; }
};

/// `bases` must have been computed from (prior.subspace, W).
EllipsoidSlice build_slice(const Observation& obs, const DegenerateEllipsoid& prior, BasesPtr bases);

struct PiDistribution {
    enum class Kind { UniformBeta, Mixture };
    Kind kind = Kind::Mixture;
    double uniform_weight = 0.1;
    double scale = 1e4;
};

/// a = q - p observed directions, r = dim(W^perp cap V^perp).
double draw_pi(const PiDistribution& dist, Eigen::Index a, Eigen::Index r, Philox4x32& rng);

struct SamplerOptions {
    PiDistribution pi;
    double d_box = 10.0;
};

/// Components of one draw, kept for diagnostics and tests.
struct SliceDraw {
    HVector sample;
    double gamma = 0.0;
    double pi = 0.0;
    double b_sq = 0.0;
    double z_sq = 0.0;
};

SliceDraw draw_from_slice(const EllipsoidSlice& slice, const Matrix& span_basis,
                          const SamplerOptions& options, Philox4x32& rng);

SnapshotSet sample_slice_L1(const EllipsoidSlice& slice, Eigen::Index n_samples,
                            const SamplerOptions& options, std::uint64_t seed);

struct MultiSampleResult {
    SnapshotSet samples;
    Eigen::Index draws = 0;
    bool complete = false;  // false: fewer than requested after max_draws

    double acceptance_ratio() const {
        return draws == 0 ? 0.0 : static_cast<double>(samples.size()) / static_cast<double>(draws);
    }
};

/// Draws from the slice of ellipsoid j_star (0-based) and keeps those lying
/// in every ellipsoid of the prior. `bases` belongs to prior[j_star].
MultiSampleResult sample_slice_multi(const Observation& obs, const PriorManifold& prior,
                                     std::size_t j_star, BasesPtr bases, Eigen::Index n_samples,
                                     Eigen::Index max_draws, const SamplerOptions& options,
                                     Philox4x32& rng);

inline constexpr double kAcceptTolerance = 1e-10;

struct PosteriorOptions {
    SamplerOptions sampler;
    Eigen::Index per_point = 5;
    std::size_t j_star = static_cast<std::size_t>(-1);  // default: last ellipsoid
    Eigen::Index max_draws_per_point = 100000;
    BasesOptions bases{1e-8, 1e-10, false};
    std::uint64_t seed = 0;
};

struct PosteriorSample {
    SnapshotSet cloud;
    Eigen::Index draws = 0;
    Eigen::Index incomplete_points = 0;

    double acceptance_ratio() const {
        return draws == 0 ? 0.0 : static_cast<double>(cloud.size()) / static_cast<double>(draws);
    }
};

/// Union over the manifold points of per_point draws from their slices.
PosteriorSample sample_posterior(const SnapshotSet& manifold, const Subspace& W,
                                 const PriorManifold& prior, const PosteriorOptions& options);

/// Membership in the union over h in {dist(., T) <= eps} of M_ps cap H_h.
bool union_set_contains(const HVector& h_prime, const Subspace& T, double eps,
                        const DegenerateEllipsoid& prior, const SuitableBases& bases, double tol);

}  // namespace pomr
