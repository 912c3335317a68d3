#include "pomr/bounds.hpp"

#include "pomr/errors.hpp"

#include <algorithm>

namespace pomr {

BoundInputs bound_inputs(const SuitableBases& b, Eigen::Index k, double eps, double eps_prime) {
    BoundInputs in;
    in.k = k;
    in.n = b.n;
    in.m = b.m;
    in.N = b.N;
    in.eps = eps;
    in.eps_prime = eps_prime;
    in.sigma = b.sigma;
    in.p = b.p;
    in.q = b.q;
    return in;
}

BoundCurve theorem1_bounds(const BoundInputs& in, Eigen::Index i_max) {
    require(in.k >= 0 && in.k <= in.n, "need 0 <= k <= n");
    require(in.n >= 0 && in.m >= 0 && in.m <= in.N, "need m <= N");
    require(in.q <= std::min(in.m, in.n), "q exceeds min(m, n)");
    require(in.p >= 0 && in.p <= in.q, "need 0 <= p <= q");
    require(in.sigma.size() >= in.q, "fewer singular values than q");
    require(in.eps >= 0 && in.eps_prime >= 0, "widths must be nonnegative");
    require(i_max >= 0, "negative i_max");

    BoundCurve c;
    c.k_star = std::min(in.n, in.k + in.n - in.q);
    c.bar_bar_start = in.k + in.N - in.m;
    for (Eigen::Index i = 0; i <= i_max; ++i) {
        ExtendedReal bar = ExtendedReal::infinity();
        if (i >= in.n) {
            bar = ExtendedReal(in.eps_prime);
        } else if (i >= c.k_star) {
            const double s = in.sigma(in.q - (i - c.k_star) - 1);
            if (s > 0.0) bar = ExtendedReal((in.eps + in.eps_prime) / s);
        }
        const ExtendedReal bar_bar =
            i >= c.bar_bar_start ? ExtendedReal(in.eps) : ExtendedReal::infinity();
        c.d_bar.push_back(bar);
        c.d_bar_bar.push_back(bar_bar);
        c.combined.push_back(min(bar, bar_bar));
    }
    return c;
}

ExtendedReal width_degenerate_ellipsoid(Eigen::Index k, double eps, Eigen::Index i) {
    require(k >= 0 && eps >= 0, "need k >= 0 and eps >= 0");
    return i < k ? ExtendedReal::infinity() : ExtendedReal(eps);
}

Subspace proof_subspace(Eigen::Index i, const Subspace& T, const SuitableBases& b) {
    require(T.ambient_dim() == b.N, "T lives in another space");
    require(is_contained(T, b.V, 1e-8), "T is not contained in V");
    const Eigen::Index k_star = std::min(b.n, T.dim() + b.n - b.q);
    require(i >= k_star, "proof subspace requested below k*");

    const Eigen::Index a = b.q - b.p;
    const Eigen::Index extra = i - k_star;
    const Eigen::Index n_tilde = std::min(extra, a);
    const Eigen::Index n_fill = std::max<Eigen::Index>(0, extra - a);
    if (n_fill > 0)
        require(b.has_complement, "proof subspace filler needs the W^perp cap V^perp basis");
    const Eigen::Index fill = std::min(n_fill, b.u_basis.cols());

    Matrix cols(b.N, T.dim() + (b.n - b.q) + n_tilde + fill);
    cols << T.basis(), b.v_star.rightCols(b.n - b.q), b.w_tilde.rightCols(n_tilde),
        b.u_basis.leftCols(fill);
    return orthonormalize(cols);
}

Subspace orthogonal_complement(const Subspace& s) {
    const Eigen::Index n = s.ambient_dim();
    const Eigen::Index d = s.dim();
    if (d == 0) return Subspace::from_orthonormal(Matrix::Identity(n, n));
    Eigen::HouseholderQR<Matrix> qr(s.basis());
    Matrix tail = Matrix::Zero(n, n - d);
    tail.bottomRows(n - d).setIdentity();
    return orthonormalize(Matrix(qr.householderQ() * tail));
}

Subspace bound_witness(Eigen::Index i, const Subspace& T, const SuitableBases& b,
                       const BoundCurve& curve) {
    require(i >= 0 && i < static_cast<Eigen::Index>(curve.combined.size()), "index beyond curve");
    const auto at = static_cast<std::size_t>(i);
    require(curve.combined[at].is_finite(), "no witness where the bound is infinite");
    if (curve.d_bar_bar[at] < curve.d_bar[at])
        return direct_sum(T, orthogonal_complement(b.W));
    if (i >= b.n) return b.V;
    return proof_subspace(i, T, b);
}

}  // namespace pomr
