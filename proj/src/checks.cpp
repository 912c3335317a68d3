#include "pomr/checks.hpp"

#include "pomr/bounds.hpp"
#include "pomr/point_estimate.hpp"
#include "pomr/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>

namespace pomr {

namespace {

Matrix gaussian(Eigen::Index rows, Eigen::Index cols, Philox4x32& rng) {
    std::normal_distribution<double> g;
    Matrix out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = g(rng);
    return out;
}

HVector unit_in(const Subspace& s, Philox4x32& rng) {
    const HVector v = s.basis() * gaussian(s.dim(), 1, rng).col(0);
    return v / v.norm();
}

long pick(Philox4x32& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// W of dimension m sharing `shared` directions with V and, when `hide` is
// set, orthogonal to the last prior direction.
Subspace observation_space(const Subspace& V, Eigen::Index m, Eigen::Index shared, bool hide, Philox4x32& rng) {
    const Eigen::Index N = V.ambient_dim();
    Matrix cols(N, m);
    cols.leftCols(shared) = V.basis().leftCols(shared);
    Matrix rest = gaussian(N, m - shared, rng);
    if (hide) {
        const HVector last = V.basis().col(V.dim() - 1);
        rest -= last * (last.transpose() * rest);
    }
    cols.rightCols(m - shared) = rest;
    return orthonormalize(cols);
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

}  // namespace

CheckResult check_suitable_bases(int trials, long N, std::uint64_t seed) {
    Philox4x32 rng(seed, 1);
    double worst_onb = 0, worst_gram = 0;
    bool counts = true;
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = pick(rng, 1, N / 2), m = pick(rng, 1, N / 2);
        const Subspace V = orthonormalize(gaussian(N, n, rng));
        const Eigen::Index shared = pick(rng, 0, std::min(n, m));
        const Subspace W = observation_space(V, m, shared, t % 3 == 2 && shared < n, rng);
        const SuitableBases b = compute_suitable_bases(V, W);

        Matrix all(N, b.m + (b.q - b.p) + (b.n - b.q) + b.u_basis.cols());
        all << b.w_star, b.w_tilde, b.v_star.rightCols(b.n - b.q), b.u_basis;
        counts = counts && all.cols() == N && b.p >= shared;
        if (all.cols() == N)
            worst_onb = std::max(worst_onb, (all.transpose() * all - Matrix::Identity(N, N)).cwiseAbs().maxCoeff());
        else
            worst_onb = INFINITY;
        worst_onb = std::max({worst_onb, b.V.orthonormality_defect(), b.W.orthonormality_defect()});
        Matrix g = b.w_star.transpose() * b.v_star;
        for (Eigen::Index j = 0; j < b.sigma.size(); ++j) g(j, j) -= b.sigma(j);
        worst_gram = std::max(worst_gram, g.cwiseAbs().maxCoeff());
    }
    return {counts && worst_onb <= 1e-10 && worst_gram <= 1e-8,
            "max ONB defect " + fmt(worst_onb) + ", max Gram defect " + fmt(worst_gram)};
}

CheckResult check_sampler(int trials, long samples, std::uint64_t seed) {
    Philox4x32 rng(seed, 2);
    const Eigen::Index N = 30;
    long bad = 0, total = 0, accepted_multi = 0, draws_multi = 0;
    double worst_obs = 0, worst_excess = -INFINITY;
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = pick(rng, 2, 8), m = pick(rng, 1, 10);
        const Subspace V = orthonormalize(gaussian(N, n, rng));
        const Subspace W = observation_space(V, m, pick(rng, 0, std::min(n, m) - 1), t % 2 == 1, rng);
        const double eps_prime = 0.05 + 0.5 * std::uniform_real_distribution<double>()(rng);
        const HVector h = V.basis() * gaussian(n, 1, rng).col(0) +
                          0.9 * eps_prime * unit_in(orthogonal_complement(V), rng);
        const Observation obs = observe(h, W);

        // single ellipsoid
        const DegenerateEllipsoid prior(V, eps_prime);
        const auto bases = std::make_shared<const SuitableBases>(compute_suitable_bases(V, W, BasesOptions{1e-8, 1e-10, false}));
        const EllipsoidSlice slice = build_slice(obs, prior, bases);
        const SnapshotSet s = sample_slice_L1(slice, samples, SamplerOptions{}, derive_seed(seed, 3, static_cast<std::uint64_t>(t)));
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            const double o = (observe(s[i], W).values - obs.values).cwiseAbs().maxCoeff();
            const double excess = dist(s[i], V) - eps_prime;
            worst_obs = std::max(worst_obs, o);
            worst_excess = std::max(worst_excess, excess);
            bad += (o > 1e-8 || excess > 1e-8) ? 1 : 0;
            ++total;
        }

        // nested pair: V_1 = leading directions of V with a looser width
        const Subspace V1 = V.leading(n / 2);
        const double eps1 = std::max(dist(h, V1) * 1.3, eps_prime * 1.5);
        const PriorManifold multi = PriorManifold::nested({DegenerateEllipsoid(V1, eps1), prior});
        Philox4x32 mrng(derive_seed(seed, 4, static_cast<std::uint64_t>(t)));
        const MultiSampleResult r = sample_slice_multi(obs, multi, 1, bases, samples, 50 * samples, SamplerOptions{}, mrng);
        accepted_multi += r.samples.size();
        draws_multi += r.draws;
        for (Eigen::Index i = 0; i < r.samples.size(); ++i) {
            const double o = (observe(r.samples[i], W).values - obs.values).cwiseAbs().maxCoeff();
            worst_obs = std::max(worst_obs, o);
            bad += (o > 1e-8 || !prior_contains(multi, r.samples[i], 1e-8)) ? 1 : 0;
            ++total;
        }
    }
    return {bad == 0 && accepted_multi > 0,
            std::to_string(total - bad) + "/" + std::to_string(total) + " samples valid, max obs mismatch " +
                fmt(worst_obs) + ", max dist excess " + fmt(worst_excess) + ", multi acceptance " +
                fmt(draws_multi ? static_cast<double>(accepted_multi) / static_cast<double>(draws_multi) : 0.0)};
}

CheckResult check_point_estimate(int trials, std::uint64_t seed) {
    Philox4x32 rng(seed, 5);
    const Eigen::Index N = 30;
    double worst = 0;
    bool zeros = true;
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = pick(rng, 1, 8), m = pick(rng, 1, 10);
        const Subspace V = orthonormalize(gaussian(N, n, rng));
        const Subspace W = observation_space(V, m, pick(rng, 0, std::min(n, m)), t % 2 == 1 && n > 1, rng);
        const DegenerateEllipsoid prior(V, 0.5);
        const auto bases = std::make_shared<const SuitableBases>(compute_suitable_bases(V, W, BasesOptions{1e-8, 1e-10, false}));
        const Observation obs{gaussian(m, 1, rng).col(0)};
        const HVector est = point_estimate(obs, prior, *bases);
        worst = std::max(worst, (est - build_slice(obs, prior, bases).center).cwiseAbs().maxCoeff());
        const HVector zero = point_estimate(Observation{Eigen::VectorXd::Zero(m)}, prior, *bases);
        zeros = zeros && (zero.array() == 0.0).all();
    }
    return {worst <= 1e-10 && zeros, "max |estimate - center| " + fmt(worst) + (zeros ? ", zero in -> zero out" : ", nonzero output for zero data")};
}

CheckResult check_width_bounds(int instances, long cloud_size, std::uint64_t seed) {
    Philox4x32 rng(seed, 6);
    const Eigen::Index N = 24;
    const long per_point = 5;
    long checked = 0, violations = 0, outside = 0;
    double worst_gap = -INFINITY;
    for (int t = 0; t < instances; ++t) {
        const Eigen::Index n = pick(rng, 2, 8), k = pick(rng, 1, n - 1), m = pick(rng, 2, 12);
        const Subspace V = orthonormalize(gaussian(N, n, rng));
        const Subspace T = V.leading(k);
        const Subspace W = observation_space(V, m, pick(rng, 0, std::min(n, m) - 1), t % 2 == 1, rng);
        const double eps = 0.02 + 0.08 * std::uniform_real_distribution<double>()(rng);
        const double eps_prime = eps * (0.3 + 0.6 * std::uniform_real_distribution<double>()(rng));
        const DegenerateEllipsoid prior(V, eps_prime);
        const auto bases = std::make_shared<const SuitableBases>(compute_suitable_bases(V, W));
        const Subspace v_rest = orthonormalize(Matrix(V.basis().rightCols(n - k)));
        const Subspace v_perp = orthogonal_complement(V);

        // points of {dist(., T) <= eps} cap {dist(., V) <= eps'}, each spawning
        // slice samples; the union of the slices lies in the union set
        std::uniform_real_distribution<double> u;
        const long points = std::max<long>(1, cloud_size / per_point);
        Matrix cloud(N, points * per_point);
        for (long s = 0; s < points; ++s) {
            const double c2 = eps_prime * std::sqrt(u(rng));
            const double c1 = std::sqrt(eps * eps - c2 * c2) * std::sqrt(u(rng));
            const HVector h = T.basis() * gaussian(k, 1, rng).col(0) + c1 * unit_in(v_rest, rng) + c2 * unit_in(v_perp, rng);
            const EllipsoidSlice slice = build_slice(observe(h, W), prior, bases);
            Philox4x32 srng(derive_seed(seed, 7, static_cast<std::uint64_t>(t)), static_cast<std::uint64_t>(s));
            const Matrix span = bases->span_basis();
            for (long j = 0; j < per_point; ++j) cloud.col(s * per_point + j) = draw_from_slice(slice, span, SamplerOptions{}, srng).sample;
        }
        const SnapshotSet set(cloud);
        for (Eigen::Index i = 0; i < std::min<Eigen::Index>(200, set.size()); ++i)
            if (!union_set_contains(set[i], T, eps, prior, *bases, 1e-8)) ++outside;

        const BoundCurve curve = theorem1_bounds(bound_inputs(*bases, k, eps, eps_prime), N);
        for (Eigen::Index i = 0; i <= N; ++i) {
            const ExtendedReal bound = curve.combined[static_cast<std::size_t>(i)];
            if (bound.is_infinite()) continue;
            const Subspace witness = bound_witness(i, T, *bases, curve);
            const double w = empirical_width(set, witness);
            worst_gap = std::max(worst_gap, w - bound.value());
            ++checked;
            if (witness.dim() > i || w > bound.value() + 1e-6) ++violations;
        }
    }
    return {violations == 0 && outside == 0 && checked > 0,
            std::to_string(checked) + " finite bounds checked, " + std::to_string(violations) +
                " violations, max (width - bound) " + fmt(worst_gap) + ", " + std::to_string(outside) +
                " samples outside the union set"};
}

}  // namespace pomr
