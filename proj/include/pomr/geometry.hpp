#pragma once

// Finite-dimensional Hilbert-space primitives. The ambient space is R^N with
// the Euclidean inner product; every vector is a column of coordinates in a
// canonical orthonormal basis.

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace pomr {

using HVector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Relative drop tolerance used by orthonormalize().
inline constexpr double kDropTolerance = 1e-10;

/// Throws ContractViolation unless `h` has length `n` and finite entries.
void check_vector(const HVector& h, Eigen::Index n);

/// Linear subspace of R^N held as an N x d matrix with orthonormal columns.
/// d = 0 is the zero subspace {0}.
class Subspace {
public:
    /// Zero subspace of R^N.
    explicit Subspace(Eigen::Index ambient_dim = 0);

    /// Wraps a basis that is already orthonormal (checked to 1e-10).
    static Subspace from_orthonormal(Matrix basis);

    Eigen::Index ambient_dim() const noexcept { return ambient_dim_; }
    Eigen::Index dim() const noexcept { return basis_.cols(); }
    bool is_zero() const noexcept { return basis_.cols() == 0; }
    const Matrix& basis() const noexcept { return basis_; }

    /// Subspace spanned by the first `d` basis columns.
    Subspace leading(Eigen::Index d) const;

    /// max |B^T B - I|
    double orthonormality_defect() const;

private:
    struct Trusted {};
    Subspace(Matrix basis, Trusted);

    Eigen::Index ambient_dim_;
    Matrix basis_;
};

HVector project(const HVector& h, const Subspace& s);
double dist(const HVector& h, const Subspace& s);

/// h - P_S(h)
HVector residual(const HVector& h, const Subspace& s);

/// Orthonormal basis of span{vectors}; uses modified Gram-Schmidt with one
/// re-orthogonalization pass. A vector whose residual falls below
/// kDropTolerance * (1 + |v|) is dropped.
Subspace orthonormalize(std::span<const HVector> vectors, Eigen::Index ambient_dim);

/// Same as above, with the candidate vectors given as matrix columns.
Subspace orthonormalize(const Matrix& columns);

Subspace direct_sum(const Subspace& a, const Subspace& b);

/// {h : dist(h, subspace) <= width}
struct DegenerateEllipsoid {
    Subspace subspace;
    double width = 0.0;

    DegenerateEllipsoid() = default;
    DegenerateEllipsoid(Subspace s, double w);
};

bool ellipsoid_contains(const DegenerateEllipsoid& e, const HVector& h, double tol);

/// Intersection of L >= 1 degenerate ellipsoids.
class PriorManifold {
public:
    explicit PriorManifold(std::vector<DegenerateEllipsoid> ellipsoids);

    /// Builder for reduced-basis style priors: subspaces must be nested and
    /// widths nonincreasing.
    static PriorManifold nested(std::vector<DegenerateEllipsoid> ellipsoids,
                                double tol = 1e-8);

    std::size_t size() const noexcept { return ellipsoids_.size(); }
    const DegenerateEllipsoid& operator[](std::size_t j) const { return ellipsoids_.at(j); }
    const std::vector<DegenerateEllipsoid>& ellipsoids() const noexcept { return ellipsoids_; }
    Eigen::Index ambient_dim() const { return ellipsoids_.front().subspace.ambient_dim(); }

private:
    std::vector<DegenerateEllipsoid> ellipsoids_;
};

bool prior_contains(const PriorManifold& prior, const HVector& h, double tol);

/// True when every basis vector of `inner` lies in `outer` within `tol`.
bool is_contained(const Subspace& inner, const Subspace& outer, double tol);

}  // namespace pomr
