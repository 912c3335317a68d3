#include "pomr/point_estimate.hpp"

#include "pomr/errors.hpp"

namespace pomr {

HVector point_estimate(const Observation& obs, const DegenerateEllipsoid& prior,
                       const SuitableBases& bases) {
    const SuitableBases& b = bases;
    require(obs.values.size() == b.m, "observation length differs from dim W");
    require(prior.subspace.dim() == b.n && prior.subspace.ambient_dim() == b.N,
            "bases were not built from this prior");

    const Eigen::VectorXd alpha = b.x.transpose() * obs.values;
    const Eigen::VectorXd scaled = alpha.head(b.q).cwiseQuotient(b.sigma.head(b.q));
    return b.v_star.leftCols(b.q) * scaled + b.w_star.rightCols(b.m - b.q) * alpha.tail(b.m - b.q);
}

SnapshotSet point_estimates(const SnapshotSet& manifold, const Subspace& W,
                            const PriorManifold& prior, const BasesOptions& options) {
    if (prior.size() != 1)
        throw UnsupportedPrior("point estimation needs a single-ellipsoid prior");
    require(!manifold.empty(), "no manifold points");
    const SuitableBases b = compute_suitable_bases(prior[0].subspace, W, options);
    const Matrix obs = W.basis().transpose() * manifold.matrix();
    Matrix out(b.N, manifold.size());
    for (Eigen::Index i = 0; i < manifold.size(); ++i)
        out.col(i) = point_estimate(Observation{obs.col(i)}, prior[0], b);
    return SnapshotSet(std::move(out));
}

GreedyResult reduce_from_estimates(const SnapshotSet& estimates, const StoppingRule& stop) {
    return greedy(estimates, stop);
}

}  // namespace pomr
