#include "pomr/sampling.hpp"

#include "pomr/errors.hpp"

#include <cmath>
#include <random>

namespace pomr {

namespace {

constexpr std::uint64_t kTagPosterior = 0x706f7374;  // "post"

double sum_sq_gaussians(Eigen::Index count, Philox4x32& rng) {
    std::normal_distribution<double> normal;
    double s = 0.0;
    for (Eigen::Index i = 0; i < count; ++i) {
        const double xi = normal(rng);
        s += xi * xi;
    }
    return s;
}

Eigen::VectorXd gaussian_vector(Eigen::Index size, Philox4x32& rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXd g(size);
    for (Eigen::Index i = 0; i < size; ++i) g(i) = normal(rng);
    return g;
}

// Uniform direction in R^size scaled to `radius`. size = 0 gives the empty vector.
Eigen::VectorXd sphere_point(Eigen::Index size, double radius, Philox4x32& rng) {
    if (size == 0) return Eigen::VectorXd(0);
    Eigen::VectorXd g = gaussian_vector(size, rng);
    double len = g.norm();
    while (len == 0.0) {
        g = gaussian_vector(size, rng);
        len = g.norm();
    }
    return g * (radius / len);
}

}  // namespace

Observation observe(const HVector& h, const Subspace& W) {
    check_vector(h, W.ambient_dim());
    return Observation{W.basis().transpose() * h};
}

EllipsoidSlice build_slice(const Observation& obs, const DegenerateEllipsoid& prior, BasesPtr bases) {
    require(bases != nullptr, "slice needs suitable bases");
    const SuitableBases& b = *bases;
    require(obs.values.size() == b.m, "observation length differs from dim W");
    require(obs.values.allFinite(), "observation has non-finite entries");
    require(prior.subspace.dim() == b.n && prior.subspace.ambient_dim() == b.N,
            "bases were not built from this prior");

    EllipsoidSlice s;
    s.bases = bases;
    s.width = prior.width;
    s.alpha = b.x.transpose() * obs.values;
    s.center = HVector::Zero(b.N);
    double unobserved = 0.0;
    for (Eigen::Index j = 0; j < b.m; ++j) {
        if (j < b.q) {
            s.center += (s.alpha(j) / b.sigma(j)) * b.v_star.col(j);
        } else {
            s.center += s.alpha(j) * b.w_star.col(j);
            unobserved += s.alpha(j) * s.alpha(j);
        }
    }
    s.radius_sq_budget = prior.width * prior.width - unobserved;
    return s;
}

double draw_pi(const PiDistribution& dist, Eigen::Index a, Eigen::Index r, Philox4x32& rng) {
    if (a == 0) return 0.0;
    if (r == 0) return 1.0;
    const double num = sum_sq_gaussians(a, rng);
    const double rest = sum_sq_gaussians(r, rng);
    double weight = 1.0;
    if (dist.kind == PiDistribution::Kind::Mixture) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        if (unit(rng) >= dist.uniform_weight) weight = dist.scale;
    }
    const double total = weight * num + rest;
    return total > 0.0 ? weight * num / total : 1.0;
}

SliceDraw draw_from_slice(const EllipsoidSlice& slice, const Matrix& span_basis,
                          const SamplerOptions& options, Philox4x32& rng) {
    if (slice.empty()) throw EmptySlice(slice.radius_sq_budget);
    const SuitableBases& b = *slice.bases;
    const Eigen::Index a = b.q - b.p;

    SliceDraw d;
    d.pi = draw_pi(options.pi, a, b.r, rng);
    std::uniform_real_distribution<double> budget(0.0, slice.radius_sq_budget);
    d.gamma = slice.radius_sq_budget > 0.0 ? budget(rng) : 0.0;

    const Eigen::VectorXd coeff = sphere_point(a, std::sqrt(d.gamma) * d.pi, rng);
    d.b_sq = coeff.squaredNorm();

    d.sample = slice.center;
    for (Eigen::Index j = 0; j < a; ++j)
        d.sample -= (coeff(j) / b.sigma(b.p + j)) * b.w_tilde.col(j);

    std::uniform_real_distribution<double> box(-options.d_box, options.d_box);
    for (Eigen::Index j = b.q; j < b.n; ++j) d.sample += box(rng) * b.v_star.col(j);

    const double z_sq = d.gamma * (1.0 - d.pi * d.pi);
    if (b.r > 0 && z_sq > 0.0) {
        Eigen::VectorXd g = gaussian_vector(b.N, rng);
        g -= span_basis * (span_basis.transpose() * g);
        const double len = g.norm();
        if (len > 0.0) {
            d.sample += g * (std::sqrt(z_sq) / len);
            d.z_sq = z_sq;
        }
    }
    return d;
}

SnapshotSet sample_slice_L1(const EllipsoidSlice& slice, Eigen::Index n_samples,
                            const SamplerOptions& options, std::uint64_t seed) {
    require(n_samples >= 0, "negative sample count");
    require(slice.bases != nullptr, "slice has no bases");
    if (slice.empty()) throw EmptySlice(slice.radius_sq_budget);
    Philox4x32 rng(seed);
    const Matrix span = slice.bases->span_basis();
    Matrix out(slice.bases->N, n_samples);
    for (Eigen::Index i = 0; i < n_samples; ++i)
        out.col(i) = draw_from_slice(slice, span, options, rng).sample;
    return SnapshotSet(std::move(out));
}

MultiSampleResult sample_slice_multi(const Observation& obs, const PriorManifold& prior,
                                     std::size_t j_star, BasesPtr bases, Eigen::Index n_samples,
                                     Eigen::Index max_draws, const SamplerOptions& options,
                                     Philox4x32& rng) {
    require(j_star < prior.size(), "reference ellipsoid index out of range");
    require(n_samples >= 0 && max_draws >= 0, "negative sample or draw count");
    const EllipsoidSlice slice = build_slice(obs, prior[j_star], bases);
    if (slice.empty()) throw EmptySlice(slice.radius_sq_budget);
    const Matrix span = bases->span_basis();

    MultiSampleResult res;
    Matrix accepted(bases->N, n_samples);
    Eigen::Index kept = 0;
    while (kept < n_samples && res.draws < max_draws) {
        ++res.draws;
        HVector s = draw_from_slice(slice, span, options, rng).sample;
        bool ok = true;
        for (std::size_t j = 0; j < prior.size() && ok; ++j)
            if (j != j_star) ok = ellipsoid_contains(prior[j], s, kAcceptTolerance);
        if (ok) accepted.col(kept++) = s;
    }
    accepted.conservativeResize(Eigen::NoChange, kept);
    res.samples = SnapshotSet(std::move(accepted));
    res.complete = kept == n_samples;
    return res;
}

PosteriorSample sample_posterior(const SnapshotSet& manifold, const Subspace& W,
                                 const PriorManifold& prior, const PosteriorOptions& options) {
    require(!manifold.empty(), "posterior sampling needs manifold points");
    require(manifold.ambient_dim() == W.ambient_dim(), "manifold and W dimensions differ");
    require(options.per_point >= 0, "negative per-point count");
    const std::size_t j_star =
        options.j_star == static_cast<std::size_t>(-1) ? prior.size() - 1 : options.j_star;
    require(j_star < prior.size(), "reference ellipsoid index out of range");

    const auto bases = std::make_shared<const SuitableBases>(
        compute_suitable_bases(prior[j_star].subspace, W, options.bases));
    const std::uint64_t key = derive_seed(options.seed, kTagPosterior, 0);

    PosteriorSample out;
    Matrix cloud(W.ambient_dim(), manifold.size() * options.per_point);
    Eigen::Index filled = 0;
    const Matrix span = bases->span_basis();
    for (Eigen::Index i = 0; i < manifold.size(); ++i) {
        Philox4x32 rng(key, static_cast<std::uint64_t>(i));
        const Observation obs = observe(manifold[i], W);
        if (prior.size() == 1) {
            const EllipsoidSlice slice = build_slice(obs, prior[0], bases);
            if (slice.empty()) throw EmptySlice(slice.radius_sq_budget);
            for (Eigen::Index s = 0; s < options.per_point; ++s)
                cloud.col(filled++) = draw_from_slice(slice, span, options.sampler, rng).sample;
            out.draws += options.per_point;
        } else {
            const MultiSampleResult res =
                sample_slice_multi(obs, prior, j_star, bases, options.per_point,
                                   options.max_draws_per_point, options.sampler, rng);
            cloud.middleCols(filled, res.samples.size()) = res.samples.matrix();
            filled += res.samples.size();
            out.draws += res.draws;
            if (!res.complete) ++out.incomplete_points;
        }
    }
    cloud.conservativeResize(Eigen::NoChange, filled);
    out.cloud = SnapshotSet(std::move(cloud));
    return out;
}

bool union_set_contains(const HVector& h_prime, const Subspace& T, double eps,
                        const DegenerateEllipsoid& prior, const SuitableBases& bases, double tol) {
    check_vector(h_prime, bases.N);
    require(T.ambient_dim() == bases.N, "T lives in another space");
    require(is_contained(T, prior.subspace, 1e-8), "T is not contained in the prior subspace");

    const double d = dist(h_prime, prior.subspace);
    if (d * d > prior.width * prior.width + tol) return false;

    // min over u in T of |W^T (h' - u)|^2
    const Eigen::VectorXd target = bases.W.basis().transpose() * h_prime;
    double miss = target.squaredNorm();
    if (!T.is_zero()) {
        const Matrix wt = bases.W.basis().transpose() * T.basis();
        const Eigen::VectorXd coef = wt.completeOrthogonalDecomposition().solve(target);
        miss = (target - wt * coef).squaredNorm();
    }
    return miss <= eps * eps + tol;
}

}  // namespace pomr
