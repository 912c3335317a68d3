#include "pomr/geometry.hpp"

#include "pomr/errors.hpp"

#include <cmath>
#include <string>

namespace pomr {

namespace {

void check_compatible(const HVector& h, const Subspace& s) {
    if (h.size() != s.ambient_dim())
        throw ContractViolation("dimension mismatch: vector of length " + std::to_string(h.size()) +
                                " against subspace of R^" + std::to_string(s.ambient_dim()));
}

// Gram-Schmidt step against the columns [0, k) of q, applied twice.
void orthogonalize_against(Eigen::Ref<Eigen::VectorXd> v, const Matrix& q, Eigen::Index k) {
    for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index j = 0; j < k; ++j) v -= q.col(j).dot(v) * q.col(j);
    }
}

}  // namespace

void check_vector(const HVector& h, Eigen::Index n) {
    if (h.size() != n)
        throw ContractViolation("vector has length " + std::to_string(h.size()) + ", expected " +
                                std::to_string(n));
    if (!h.allFinite()) throw ContractViolation("vector has non-finite entries");
}

Subspace::Subspace(Eigen::Index ambient_dim) : ambient_dim_(ambient_dim), basis_(ambient_dim, 0) {
    require(ambient_dim >= 0, "negative ambient dimension");
}

Subspace::Subspace(Matrix basis, Trusted) : ambient_dim_(basis.rows()), basis_(std::move(basis)) {}

Subspace Subspace::from_orthonormal(Matrix basis) {
    require(basis.cols() <= basis.rows(), "more basis vectors than ambient dimensions");
    require(basis.allFinite(), "basis has non-finite entries");
    Subspace s(std::move(basis), Trusted{});
    if (s.orthonormality_defect() > 1e-10)
        throw ContractViolation("basis columns are not orthonormal");
    return s;
}

Subspace Subspace::leading(Eigen::Index d) const {
    require(d >= 0 && d <= dim(), "leading(): dimension out of range");
    return Subspace(basis_.leftCols(d), Trusted{});
}

double Subspace::orthonormality_defect() const {
    if (basis_.cols() == 0) return 0.0;
    const Matrix gram = basis_.transpose() * basis_;
    return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

HVector project(const HVector& h, const Subspace& s) {
    check_compatible(h, s);
    if (s.is_zero()) return HVector::Zero(h.size());
    return s.basis() * (s.basis().transpose() * h);
}

HVector residual(const HVector& h, const Subspace& s) {
    check_compatible(h, s);
    if (s.is_zero()) return h;
    return h - s.basis() * (s.basis().transpose() * h);
}

double dist(const HVector& h, const Subspace& s) { return residual(h, s).norm(); }

Subspace orthonormalize(const Matrix& columns) {
    const Eigen::Index n = columns.rows();
    Matrix q(n, std::min(columns.cols(), n));
    Eigen::Index k = 0;
    for (Eigen::Index c = 0; c < columns.cols() && k < n; ++c) {
        Eigen::VectorXd v = columns.col(c);
        const double scale = v.norm();
        orthogonalize_against(v, q, k);
        const double norm = v.norm();
        if (norm <= kDropTolerance * (1.0 + scale)) continue;
        q.col(k++) = v / norm;
    }
    q.conservativeResize(n, k);
    return Subspace::from_orthonormal(std::move(q));
}

Subspace orthonormalize(std::span<const HVector> vectors, Eigen::Index ambient_dim) {
    Matrix columns(ambient_dim, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        check_vector(vectors[j], ambient_dim);
        columns.col(static_cast<Eigen::Index>(j)) = vectors[j];
    }
    return orthonormalize(columns);
}

Subspace direct_sum(const Subspace& a, const Subspace& b) {
    require(a.ambient_dim() == b.ambient_dim(), "direct_sum: ambient dimension mismatch");
    Matrix columns(a.ambient_dim(), a.dim() + b.dim());
    columns << a.basis(), b.basis();
    return orthonormalize(columns);
}

DegenerateEllipsoid::DegenerateEllipsoid(Subspace s, double w) : subspace(std::move(s)), width(w) {
    require(std::isfinite(w) && w >= 0.0, "ellipsoid width must be finite and nonnegative");
}

bool ellipsoid_contains(const DegenerateEllipsoid& e, const HVector& h, double tol) {
    return dist(h, e.subspace) <= e.width + tol;
}

PriorManifold::PriorManifold(std::vector<DegenerateEllipsoid> ellipsoids)
    : ellipsoids_(std::move(ellipsoids)) {
    require(!ellipsoids_.empty(), "prior manifold needs at least one ellipsoid");
    const Eigen::Index n = ellipsoids_.front().subspace.ambient_dim();
    for (const auto& e : ellipsoids_)
        require(e.subspace.ambient_dim() == n, "prior ellipsoids live in different spaces");
}

PriorManifold PriorManifold::nested(std::vector<DegenerateEllipsoid> ellipsoids, double tol) {
    PriorManifold prior(std::move(ellipsoids));
    const auto& es = prior.ellipsoids_;
    for (std::size_t j = 1; j < es.size(); ++j) {
        require(is_contained(es[j - 1].subspace, es[j].subspace, tol),
                "nested prior: V_" + std::to_string(j) + " is not contained in V_" +
                    std::to_string(j + 1));
        require(es[j].width <= es[j - 1].width + tol,
                "nested prior: widths must be nonincreasing");
    }
    return prior;
}

bool prior_contains(const PriorManifold& prior, const HVector& h, double tol) {
    for (const auto& e : prior.ellipsoids())
        if (!ellipsoid_contains(e, h, tol)) return false;
    return true;
}

bool is_contained(const Subspace& inner, const Subspace& outer, double tol) {
    require(inner.ambient_dim() == outer.ambient_dim(), "is_contained: ambient dimension mismatch");
    for (Eigen::Index j = 0; j < inner.dim(); ++j)
        if (dist(inner.basis().col(j), outer) > tol) return false;
    return true;
}

}  // namespace pomr
