#pragma once

#include "pomr/geometry.hpp"
#include "pomr/rng.hpp"

#include <random>

namespace testutil {

inline pomr::HVector gaussian(Eigen::Index n, pomr::Philox4x32& rng) {
    std::normal_distribution<double> normal;
    pomr::HVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
    return v;
}

inline pomr::Matrix gaussian(Eigen::Index rows, Eigen::Index cols, pomr::Philox4x32& rng) {
    pomr::Matrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) g.col(j) = gaussian(rows, rng);
    return g;
}

inline pomr::HVector unit(Eigen::Index n, Eigen::Index i) {
    pomr::HVector e = pomr::HVector::Zero(n);
    e(i) = 1.0;
    return e;
}

inline pomr::Subspace span_units(Eigen::Index n, std::initializer_list<Eigen::Index> idx) {
    pomr::Matrix b = pomr::Matrix::Zero(n, static_cast<Eigen::Index>(idx.size()));
    Eigen::Index c = 0;
    for (auto i : idx) b(i, c++) = 1.0;
    return pomr::Subspace::from_orthonormal(b);
}

inline pomr::Subspace random_span(Eigen::Index n, Eigen::Index d, pomr::Philox4x32& rng) {
    return pomr::orthonormalize(gaussian(n, d, rng));
}

// Subspace of dimension d sharing exactly `shared` random directions with s.
inline pomr::Subspace overlapping(const pomr::Subspace& s, Eigen::Index shared, Eigen::Index d,
                                  pomr::Philox4x32& rng) {
    pomr::Matrix cols(s.ambient_dim(), d);
    cols.leftCols(shared) = s.basis() * gaussian(s.dim(), shared, rng);
    cols.rightCols(d - shared) = gaussian(s.ambient_dim(), d - shared, rng);
    return pomr::orthonormalize(cols);
}

// Dimension of the intersection of two subspaces, from principal angles of
// the raw bases.
inline Eigen::Index intersection_dim(const pomr::Subspace& a, const pomr::Subspace& b, double tol) {
    if (a.dim() == 0 || b.dim() == 0) return 0;
    Eigen::JacobiSVD<pomr::Matrix> svd(a.basis().transpose() * b.basis());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1 - tol) ++k;
    return k;
}

}  // namespace testutil
