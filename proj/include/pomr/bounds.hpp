#pragma once

// Upper bounds on the Kolmogorov widths of the posterior manifold when the
// true manifold lies in {dist(., T) <= eps} cap {dist(., V) <= eps'}, T in V.

#include "pomr/extended_real.hpp"
#include "pomr/greedy.hpp"
#include "pomr/suitable_bases.hpp"

#include <vector>

namespace pomr {

struct BoundInputs {
    Eigen::Index k = 0;  // dim T
    Eigen::Index n = 0;  // dim V
    Eigen::Index m = 0;  // dim W
    Eigen::Index N = 0;
    double eps = 0.0;
    double eps_prime = 0.0;
    Eigen::VectorXd sigma;  // nonincreasing, min(m, n) entries
    Eigen::Index p = 0;
    Eigen::Index q = 0;
};

BoundInputs bound_inputs(const SuitableBases& b, Eigen::Index k, double eps, double eps_prime);

struct BoundCurve {
    Eigen::Index k_star = 0;
    Eigen::Index bar_bar_start = 0;  // k + N - m
    std::vector<ExtendedReal> d_bar, d_bar_bar, combined;  // indexed by i = 0..i_max
};

BoundCurve theorem1_bounds(const BoundInputs& in, Eigen::Index i_max);

ExtendedReal width_degenerate_ellipsoid(Eigen::Index k, double eps, Eigen::Index i);

/// Subspace of dimension <= i realizing the d_bar bound for k* <= i.
Subspace proof_subspace(Eigen::Index i, const Subspace& T, const SuitableBases& bases);

/// Subspace of dimension <= i whose worst-case error over the posterior is
/// bounded by combined[i]: V for i >= n, T + W^perp when the eps branch is
/// the smaller one, proof_subspace otherwise. Requires a finite combined[i].
Subspace bound_witness(Eigen::Index i, const Subspace& T, const SuitableBases& bases,
                       const BoundCurve& curve);

/// Orthonormal basis of the orthogonal complement of S.
Subspace orthogonal_complement(const Subspace& s);

}  // namespace pomr
