#pragma once

// Principal-vector bases for a prior subspace V and an observation subspace W,
// and the induced orthogonal splitting of R^N into
//   W,  span{w~_j}_{p<j<=q},  span{v*_j}_{j>q},  W^perp cap V^perp.

#include "pomr/geometry.hpp"

namespace pomr {

struct BasesOptions {
    double tol_one = 1e-8;
    double tol_zero = 1e-10;
    /// Build an explicit ONB of W^perp cap V^perp. Costs O(N^2 (m+n)); the
    /// samplers never need it.
    bool build_complement = true;
};

struct SuitableBases {
    Eigen::Index N = 0, m = 0, n = 0;
    Eigen::Index p = 0, q = 0;
    Eigen::Index r = 0;  // N - m - n + p

    Subspace V, W;  // raw input bases
    Matrix x;       // m x m left singular vectors of G = W^T V
    Matrix z;       // n x n right singular vectors
    Matrix w_star;  // W x
    Matrix v_star;  // V z
    Eigen::VectorXd sigma;  // min(m, n) values in [0, 1], nonincreasing
    Matrix w_tilde;         // N x (q - p)
    Matrix u_basis;         // N x r, or N x 0 without build_complement
    bool has_complement = false;

    /// sigma_j for 0-based j < min(m, n), 0 beyond.
    double sigma_at(Eigen::Index j) const { return j < sigma.size() ? sigma(j) : 0.0; }

    /// [w*_1..m | w~ | v*_{q+1..n}], an ONB of V + W.
    Matrix span_basis() const;
};

SuitableBases compute_suitable_bases(const Subspace& V, const Subspace& W,
                                     const BasesOptions& options = {});

struct Decomposition {
    Eigen::VectorXd a;            // <w*_j, h>, j = 1..m
    Eigen::VectorXd interaction;  // <w~_j, h>, j = p+1..q
    Eigen::VectorXd tail;         // <v*_j, h>, j = q+1..n
    Eigen::VectorXd residual;     // <u_j, h>, j = 1..r
};

/// Requires the complement when the residual block is wanted; without it the
/// residual coordinates are left empty.
Decomposition decompose(const HVector& h, const SuitableBases& b);
HVector reconstruct(const Decomposition& d, const SuitableBases& b);

}  // namespace pomr
