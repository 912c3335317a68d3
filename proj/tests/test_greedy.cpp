#include "helpers.hpp"
#include "pomr/errors.hpp"
#include "pomr/greedy.hpp"

#include <doctest.h>

#include <Eigen/SVD>

using namespace pomr;
using testutil::unit;

TEST_CASE("orthogonal snapshots are picked in norm order") {
    const SnapshotSet s({3 * unit(3, 0), 2 * unit(3, 1), unit(3, 2)}, 3);
    const GreedyResult g = greedy(s, StoppingRule{3, 0.0});
    REQUIRE(g.selected_indices.size() == 3);
    CHECK(g.selected_indices == std::vector<Eigen::Index>{0, 1, 2});
    CHECK(g.initial_error == doctest::Approx(3.0));
    CHECK(g.error_curve[0] == doctest::Approx(2.0));
    CHECK(g.error_curve[1] == doctest::Approx(1.0));
    CHECK(g.error_curve[2] == doctest::Approx(0.0));
}

TEST_CASE("exhausted span stops early") {
    const GreedyResult g = greedy(SnapshotSet({unit(3, 0), unit(3, 0)}, 3), StoppingRule{2, 0.0});
    CHECK(g.dim() == 1);
    CHECK(g.error_curve.back() == doctest::Approx(0.0));
}

TEST_CASE("ties go to the lowest index") {
    const GreedyResult g = greedy(SnapshotSet({unit(3, 1), unit(3, 0), unit(3, 2)}, 3), StoppingRule{1, 0.0});
    CHECK(g.selected_indices.front() == 0);
}

TEST_CASE("empty snapshot set") {
    CHECK_THROWS_AS(greedy(SnapshotSet(), StoppingRule{}), ContractViolation);
}

TEST_CASE("tolerance stop") {
    const SnapshotSet s({3 * unit(3, 0), 2 * unit(3, 1), 0.1 * unit(3, 2)}, 3);
    const GreedyResult g = greedy(s, StoppingRule{10, 0.5});
    CHECK(g.dim() == 2);
}

TEST_CASE("low-rank snapshots stop at the rank") {
    Philox4x32 rng(31);
    const Subspace sub = testutil::random_span(20, 5, rng);
    const Matrix snaps = sub.basis() * testutil::gaussian(5, 50, rng);
    const GreedyResult g = greedy(SnapshotSet(snaps), StoppingRule{10, 0.0});
    Eigen::JacobiSVD<Matrix> svd(snaps);
    svd.setThreshold(1e-10);
    CHECK(g.dim() == svd.rank());
    CHECK(g.error_curve.back() <= 1e-10);
}

TEST_CASE("greedy properties on random clouds") {
    Philox4x32 rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix snaps = testutil::gaussian(15, 40, rng);
        // geometric decay makes the cloud approximately low-rank
        for (Eigen::Index i = 0; i < 15; ++i) snaps.row(i) *= std::pow(0.5, static_cast<double>(i));
        const SnapshotSet cloud(snaps);
        const GreedyResult g = greedy(cloud, StoppingRule{12, 0.0});
        CHECK((g.basis.transpose() * g.basis - Matrix::Identity(g.dim(), g.dim())).cwiseAbs().maxCoeff() <= 1e-10);

        Eigen::JacobiSVD<Matrix> svd(snaps);
        const Eigen::VectorXd sv = svd.singularValues();
        double prev = g.initial_error;
        for (Eigen::Index t = 1; t <= g.dim(); ++t) {
            const double e = g.error_at(t);
            CHECK(e <= prev + 1e-14);
            prev = e;
            // the optimal rank-t Frobenius residual bounds the worst column
            // residual from below after dividing by sqrt(#snapshots)
            const double tail = sv.tail(sv.size() - t).norm();
            CHECK(e >= tail / std::sqrt(static_cast<double>(snaps.cols())) - 1e-12);
            CHECK(e == doctest::Approx(empirical_width(cloud, g.subspace(t))).epsilon(1e-9));
        }
        const std::vector<double> w = nested_widths(cloud, g.basis, g.dim());
        for (Eigen::Index t = 0; t <= g.dim(); ++t)
            CHECK(w[static_cast<std::size_t>(t)] == doctest::Approx(g.error_at(t)).epsilon(1e-9));
    }
}

TEST_CASE("permuting orthogonal snapshots keeps the span sequence") {
    const SnapshotSet a({4 * unit(4, 0), 3 * unit(4, 1), 2 * unit(4, 2), unit(4, 3)}, 4);
    const SnapshotSet b({unit(4, 3), 3 * unit(4, 1), 4 * unit(4, 0), 2 * unit(4, 2)}, 4);
    const GreedyResult ga = greedy(a, StoppingRule{4, 0.0});
    const GreedyResult gb = greedy(b, StoppingRule{4, 0.0});
    CHECK(gb.selected_indices == std::vector<Eigen::Index>{2, 1, 3, 0});
    for (Eigen::Index t = 1; t <= 4; ++t)
        CHECK(is_contained(ga.subspace(t), gb.subspace(t), 1e-12));
}

TEST_CASE("empirical width examples") {
    const SnapshotSet cloud({unit(3, 0), 2 * unit(3, 1)}, 3);
    CHECK(empirical_width(cloud, testutil::span_units(3, {0})) == doctest::Approx(2.0));
    CHECK(empirical_width(cloud, testutil::span_units(3, {0, 1})) == doctest::Approx(0.0));
}
