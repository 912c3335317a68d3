#include "pomr/suitable_bases.hpp"

#include "pomr/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace pomr {

namespace {

Eigen::Index argmax_abs(const Eigen::VectorXd& v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(best))) best = i;
    return best;
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    if (v.size() == 0) return;
    if (v(argmax_abs(v)) < 0) v = -v;
}

}  // namespace

Matrix SuitableBases::span_basis() const {
    Matrix b(N, m + (q - p) + (n - q));
    b << w_star, w_tilde, v_star.rightCols(n - q);
    return b;
}

SuitableBases compute_suitable_bases(const Subspace& V, const Subspace& W,
                                     const BasesOptions& options) {
    require(V.dim() >= 1 && W.dim() >= 1, "suitable bases need nonzero V and W");
    require(V.ambient_dim() == W.ambient_dim(), "V and W live in different spaces");
    require(options.tol_one >= 0 && options.tol_zero >= 0, "negative classification tolerance");

    SuitableBases b;
    b.N = V.ambient_dim();
    b.m = W.dim();
    b.n = V.dim();
    b.V = V;
    b.W = W;
    const Eigen::Index k = std::min(b.m, b.n);

    const Matrix g = W.basis().transpose() * V.basis();
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    b.x = svd.matrixU();
    b.z = svd.matrixV();
    b.sigma = svd.singularValues().cwiseMax(0.0).cwiseMin(1.0);

    for (Eigen::Index j = 0; j < k; ++j) {
        const Eigen::Index i = argmax_abs(b.z.col(j));
        if (b.z(i, j) < 0) {
            b.z.col(j) *= -1.0;
            b.x.col(j) *= -1.0;
        }
    }
    for (Eigen::Index j = k; j < b.n; ++j) fix_sign(b.z.col(j));
    for (Eigen::Index j = k; j < b.m; ++j) fix_sign(b.x.col(j));

    b.p = 0;
    b.q = 0;
    for (Eigen::Index j = 0; j < k; ++j) {
        if (b.sigma(j) >= 1.0 - options.tol_one) ++b.p;
        if (b.sigma(j) > options.tol_zero) ++b.q;
    }

    if (b.m + b.n - b.p > b.N)
        throw InfeasibleGeometry("m + n - p = " + std::to_string(b.m + b.n - b.p) +
                                 " exceeds N = " + std::to_string(b.N));
    b.r = b.N - b.m - b.n + b.p;

    b.w_star = W.basis() * b.x;
    b.v_star = V.basis() * b.z;

    b.w_tilde.resize(b.N, b.q - b.p);
    for (Eigen::Index j = b.p; j < b.q; ++j) {
        const double s = b.sigma(j);
        b.w_tilde.col(j - b.p) = (b.v_star.col(j) - s * b.w_star.col(j)) / std::sqrt(1.0 - s * s);
    }

    b.u_basis.resize(b.N, 0);
    if (options.build_complement && b.r > 0) {
        const Matrix span = b.span_basis();
        Eigen::HouseholderQR<Matrix> qr(span);
        Matrix tail = Matrix::Zero(b.N, b.r);
        tail.bottomRows(b.r).setIdentity();
        b.u_basis = qr.householderQ() * tail;
    }
    b.has_complement = options.build_complement;
    return b;
}

Decomposition decompose(const HVector& h, const SuitableBases& b) {
    check_vector(h, b.N);
    Decomposition d;
    d.a = b.w_star.transpose() * h;
    d.interaction = b.w_tilde.transpose() * h;
    d.tail = b.v_star.rightCols(b.n - b.q).transpose() * h;
    d.residual = b.u_basis.transpose() * h;
    return d;
}

HVector reconstruct(const Decomposition& d, const SuitableBases& b) {
    require(d.a.size() == b.m && d.interaction.size() == b.q - b.p && d.tail.size() == b.n - b.q,
            "decomposition does not match the bases");
    require(d.residual.size() == b.u_basis.cols(), "residual block does not match the bases");
    HVector h = b.w_star * d.a + b.w_tilde * d.interaction + b.v_star.rightCols(b.n - b.q) * d.tail;
    if (d.residual.size() > 0) h += b.u_basis * d.residual;
    return h;
}

}  // namespace pomr
