#include "helpers.hpp"
#include "pomr/bounds.hpp"
#include "pomr/errors.hpp"
#include "pomr/point_estimate.hpp"

#include <doctest.h>

#include <cmath>

using namespace pomr;
using testutil::span_units;
using testutil::unit;

TEST_CASE("point estimate examples") {
    const Subspace s = span_units(3, {0});
    const SuitableBases b = compute_suitable_bases(s, s);
    const HVector h = point_estimate(Observation{Eigen::VectorXd::Constant(1, 0.5)}, DegenerateEllipsoid(s, 1.0), b);
    CHECK((h - 0.5 * unit(3, 0)).norm() < 1e-15);

    Philox4x32 rng(51);
    const Subspace V = testutil::random_span(20, 4, rng);
    const Subspace W = testutil::random_span(20, 6, rng);
    const SuitableBases bw = compute_suitable_bases(V, W);
    const HVector zero = point_estimate(Observation{Eigen::VectorXd::Zero(6)}, DegenerateEllipsoid(V, 1.0), bw);
    CHECK(zero == HVector::Zero(20));
}

TEST_CASE("point estimate equals the slice center and is linear") {
    Philox4x32 rng(52);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index n = 2 + trial % 6, m = 1 + trial % 9;
        const Subspace V = testutil::random_span(30, n, rng);
        const Subspace W = testutil::overlapping(V, trial % (std::min(m, n) + 1), m, rng);
        const DegenerateEllipsoid prior(V, 0.3);
        const auto b = std::make_shared<const SuitableBases>(compute_suitable_bases(V, W));
        const Eigen::VectorXd y1 = testutil::gaussian(m, rng), y2 = testutil::gaussian(m, rng);
        const HVector h1 = point_estimate(Observation{y1}, prior, *b);
        const HVector h2 = point_estimate(Observation{y2}, prior, *b);
        CHECK((h1 - build_slice(Observation{y1}, prior, b).center).cwiseAbs().maxCoeff() <= 1e-10);
        const HVector combo = point_estimate(Observation{2.0 * y1 - 0.5 * y2}, prior, *b);
        CHECK((combo - (2.0 * h1 - 0.5 * h2)).cwiseAbs().maxCoeff() <= 1e-10 * (1 + combo.norm()));
        // minimum-norm choice along unobserved prior directions
        const Eigen::VectorXd tail = b->v_star.rightCols(b->n - b->q).transpose() * h1;
        CHECK(tail.norm() <= 1e-10 * (1 + h1.norm()));
    }
}

TEST_CASE("point estimate lies in the slice when every prior direction is observed") {
    Philox4x32 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const Subspace V = testutil::random_span(25, 4, rng);
        const Subspace W = testutil::random_span(25, 7, rng);
        const DegenerateEllipsoid prior(V, 0.2);
        const auto b = std::make_shared<const SuitableBases>(compute_suitable_bases(V, W));
        REQUIRE(b->q == b->n);
        HVector off = residual(testutil::gaussian(25, rng), V);
        const HVector h = V.basis() * testutil::gaussian(4, rng) + 0.19 * off / off.norm();
        const Observation obs = observe(h, W);
        const HVector est = point_estimate(obs, prior, *b);
        CHECK((observe(est, W).values - obs.values).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK(dist(est, V) <= prior.width + 1e-10);
    }
}

TEST_CASE("estimates over a manifold") {
    Philox4x32 rng(54);
    const Subspace V = testutil::random_span(15, 3, rng);
    const Subspace W = testutil::random_span(15, 5, rng);
    const Matrix pts = V.basis() * testutil::gaussian(3, 12, rng);
    const PriorManifold single({DegenerateEllipsoid(V, 0.1)});
    const SnapshotSet est = point_estimates(SnapshotSet(pts), W, single);
    CHECK(est.size() == 12);
    CHECK(reduce_from_estimates(est, StoppingRule{5, 0.0}).dim() == 3);

    const PriorManifold multi({DegenerateEllipsoid(V.leading(1), 1.0), DegenerateEllipsoid(V, 0.1)});
    CHECK_THROWS_AS(point_estimates(SnapshotSet(pts), W, multi), UnsupportedPrior);

    const GreedyResult zero = reduce_from_estimates(SnapshotSet(Matrix::Zero(15, 4)), StoppingRule{5, 0.0});
    CHECK(zero.dim() == 0);
    CHECK(zero.error_at(0) == 0.0);
}

TEST_CASE("bounds when V lies in W") {
    BoundInputs in;
    in.k = 2;
    in.n = 5;
    in.m = 8;
    in.N = 30;
    in.eps = 1e-3;
    in.eps_prime = 1e-2;
    in.sigma = Eigen::VectorXd::Ones(5);
    in.p = in.q = 5;
    const BoundCurve c = theorem1_bounds(in, 40);
    CHECK(c.k_star == 2);
    for (Eigen::Index i = 0; i <= 40; ++i) {
        const auto& d = c.d_bar[static_cast<std::size_t>(i)];
        if (i < 2) CHECK(d.is_infinite());
        else if (i < 5) CHECK(d.value() == doctest::Approx(1.1e-2));
        else CHECK(d.value() == 1e-2);
        const auto& dd = c.d_bar_bar[static_cast<std::size_t>(i)];
        if (i < 2 + 30 - 8) CHECK(dd.is_infinite());
        else CHECK(dd.value() == 1e-3);
    }
}

TEST_CASE("bounds when W is orthogonal to V") {
    BoundInputs in;
    in.k = 2;
    in.n = 6;
    in.m = 4;
    in.N = 40;
    in.eps = 0.1;
    in.eps_prime = 0.2;
    in.sigma = Eigen::VectorXd::Zero(4);
    const BoundCurve c = theorem1_bounds(in, 10);
    CHECK(c.k_star == 6);
    for (Eigen::Index i = 0; i < 6; ++i) CHECK(c.combined[static_cast<std::size_t>(i)].is_infinite());
    CHECK(c.combined[6].value() == 0.2);
}

TEST_CASE("full observation makes the eps branch finite from k") {
    BoundInputs in;
    in.k = 3;
    in.n = 5;
    in.m = 10;
    in.N = 10;
    in.eps = 0.01;
    in.eps_prime = 0.5;
    in.sigma = Eigen::VectorXd::Ones(5);
    in.p = in.q = 5;
    const BoundCurve c = theorem1_bounds(in, 8);
    CHECK(c.d_bar_bar[2].is_infinite());
    CHECK(c.d_bar_bar[3].value() == 0.01);
}

TEST_CASE("eps = 0 leaves eps' / sigma") {
    BoundInputs in;
    in.k = 1;
    in.n = 4;
    in.m = 4;
    in.N = 50;
    in.eps = 0.0;
    in.eps_prime = 0.3;
    in.sigma.resize(4);
    in.sigma << 0.9, 0.5, 0.25, 0.0;
    in.q = 3;
    const BoundCurve c = theorem1_bounds(in, 6);
    CHECK(c.k_star == 2);  // min(4, 1 + 4 - 3)
    CHECK(c.d_bar[2].value() == doctest::Approx(0.3 / 0.25));
    CHECK(c.d_bar[3].value() == doctest::Approx(0.3 / 0.5));
    CHECK(c.d_bar[4].value() == 0.3);
}

TEST_CASE("inconsistent counts are rejected") {
    BoundInputs in;
    in.k = 1;
    in.n = 3;
    in.m = 2;
    in.N = 10;
    in.sigma = Eigen::VectorXd::Ones(2);
    in.q = 3;
    CHECK_THROWS_AS(theorem1_bounds(in, 5), ContractViolation);
    in.q = 1;
    in.p = 2;
    CHECK_THROWS_AS(theorem1_bounds(in, 5), ContractViolation);
}

TEST_CASE("closed-form widths of degenerate ellipsoids") {
    CHECK(width_degenerate_ellipsoid(4, 1e-5, 3).is_infinite());
    CHECK(width_degenerate_ellipsoid(4, 1e-5, 4).value() == 1e-5);
    CHECK(width_degenerate_ellipsoid(0, 0.3, 0).value() == 0.3);
}

TEST_CASE("bound curves on random bases are monotone with k <= k* <= n") {
    Philox4x32 rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::Index n = 1 + trial % 7, m = 1 + (trial * 3) % 9, k = trial % (n + 1);
        const Subspace V = testutil::random_span(30, n, rng);
        const Subspace W = testutil::overlapping(V, trial % (std::min(m, n) + 1), m, rng);
        const SuitableBases b = compute_suitable_bases(V, W);
        const BoundCurve c = theorem1_bounds(bound_inputs(b, k, 0.01, 0.1), 35);
        CHECK(k <= c.k_star);
        CHECK(c.k_star <= n);
        for (std::size_t i = 1; i < c.combined.size(); ++i) {
            CHECK(!(c.d_bar[i - 1] < c.d_bar[i]));
            CHECK(!(c.d_bar_bar[i - 1] < c.d_bar_bar[i]));
            CHECK(!(c.combined[i - 1] < c.combined[i]));
        }
        CHECK(c.combined.back().value() == 0.01);
    }
}

TEST_CASE("proof subspaces") {
    Philox4x32 rng(56);
    const Subspace V = testutil::random_span(30, 6, rng);
    Matrix wcols(30, 5);
    wcols.leftCols(1) = V.basis().col(0);
    wcols.middleCols(1, 2) = V.basis().middleCols(1, 2) + 0.7 * testutil::gaussian(30, 2, rng);
    wcols.col(3) = residual(testutil::gaussian(30, 1, rng).col(0), V);
    wcols.col(4) = testutil::gaussian(30, 1, rng).col(0);
    const Subspace W = orthonormalize(wcols);
    const SuitableBases b = compute_suitable_bases(V, W);
    const Subspace T = V.leading(2);
    const Eigen::Index k_star = std::min(b.n, T.dim() + b.n - b.q);

    CHECK_THROWS_AS(proof_subspace(k_star - 1, T, b), ContractViolation);
    const Subspace base = proof_subspace(k_star, T, b);
    CHECK(base.dim() <= k_star);
    CHECK(is_contained(T, base, 1e-10));
    if (b.q < b.n) CHECK(dist(b.v_star.col(b.n - 1), base) <= 1e-10);

    const Subspace all = proof_subspace(k_star + (b.q - b.p), T, b);
    for (Eigen::Index j = 0; j < b.w_tilde.cols(); ++j) CHECK(dist(b.w_tilde.col(j), all) <= 1e-10);
    for (Eigen::Index i = k_star; i < k_star + 10; ++i) CHECK(proof_subspace(i, T, b).dim() <= i);
}
