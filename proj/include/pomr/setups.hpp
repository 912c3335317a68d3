#pragma once

#include "pomr/greedy.hpp"
#include "pomr/thermal_block.hpp"

#include <cstdint>
#include <vector>

namespace pomr {

/// Empirical prior widths are inflated by this relative amount so that the
/// cloud point attaining the sup does not end up a hair outside its own prior
/// through rounding.
inline constexpr double kWidthInflation = 1e-10;

double inflate_width(double w);

/// Uniformly distributed m-dimensional subspace of R^N.
Subspace random_subspace(Eigen::Index N, Eigen::Index m, std::uint64_t seed);

// ---- Setup 1: thermal block with theta_1 = theta_2, theta_3 = theta_4 ----

struct Setup1Config {
    int cells = 24;
    double theta_min = 0.1;
    double theta_step = 0.1;
    int T = 10;
    Eigen::Index relax_subsample = 2000;
    double flux = 1.0;
};

struct Setup1World {
    std::vector<Theta> m_thetas, relax_thetas;
    SnapshotSet M;
    SnapshotSet relax;  // contains every column of M
    GreedyResult relax_greedy;
};

/// Grid indices t in {0..T} used along each axis of the relaxed subgrid.
std::vector<int> relax_levels(int T, Eigen::Index relax_subsample);

Setup1World build_setup1_world(const ThermalBlockModel& model, const Setup1Config& config,
                               Eigen::Index greedy_dims);

/// V_j = S_j for j < L and V_L = S_{n_prior}; widths are sups over the relaxed cloud.
PriorManifold setup1_prior(const Setup1World& world, Eigen::Index n_prior, Eigen::Index L);

// ---- Setup 2: two misaligned ellipsoids ----

struct Setup2Config {
    Eigen::Index N = 200;
    Eigen::Index n_max = 50;
    Eigen::Index k_hat = 5;
    double delta = 1e-4;
    double eps_main = 1.0;
    double eps_perturb = 1e-3;
    Eigen::Index points = 150;
};

struct Setup2World {
    Setup2Config config;
    Matrix v_tilde;  // N x n_max
    Matrix w_tilde;  // N x n_max
    Matrix t;        // N x k_hat, main directions
    Eigen::VectorXd gamma;
    SnapshotSet M;

    Subspace W(Eigen::Index m) const;
    Subspace V(Eigen::Index j) const;
    /// V_j = span v~_1..j for j < L and V_L = span v~_1..n; widths are sups over M.
    PriorManifold prior(Eigen::Index n, Eigen::Index L) const;
};

Setup2World build_setup2(const Setup2Config& config, std::uint64_t seed);

}  // namespace pomr
