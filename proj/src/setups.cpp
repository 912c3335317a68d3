#include "pomr/setups.hpp"

#include "pomr/errors.hpp"
#include "pomr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace pomr {

namespace {

constexpr std::uint64_t kTagSubspace = 0x73756273;  // "subs"

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Philox4x32& rng) {
    std::normal_distribution<double> normal;
    Matrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
    return g;
}

// Uniform point of the unit ball in R^d.
Eigen::VectorXd ball_point(Eigen::Index d, Philox4x32& rng) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::VectorXd g(d);
    double len = 0.0;
    while (len == 0.0) {
        for (Eigen::Index i = 0; i < d; ++i) g(i) = normal(rng);
        len = g.norm();
    }
    const double radius = std::pow(unit(rng), 1.0 / static_cast<double>(d));
    return g * (radius / len);
}

Theta theta_at(const Setup1Config& c, int t1, int t2, int t3, int t4) {
    return {c.theta_min + c.theta_step * t1, c.theta_min + c.theta_step * t2,
            c.theta_min + c.theta_step * t3, c.theta_min + c.theta_step * t4};
}

SnapshotSet solve_all(const ThermalBlockModel& model, const std::vector<Theta>& thetas, double flux) {
    Matrix out(model.dim(), static_cast<Eigen::Index>(thetas.size()));
    for (std::size_t j = 0; j < thetas.size(); ++j)
        out.col(static_cast<Eigen::Index>(j)) = model.solve(thetas[j], flux);
    return SnapshotSet(std::move(out));
}

}  // namespace

double inflate_width(double w) { return w * (1.0 + kWidthInflation); }

Subspace random_subspace(Eigen::Index N, Eigen::Index m, std::uint64_t seed) {
    require(m >= 0 && m <= N, "random subspace dimension out of range");
    Philox4x32 rng(derive_seed(seed, kTagSubspace, 0));
    // Gaussian columns have full rank with probability one; redraw on the off chance.
    for (;;) {
        Subspace s = orthonormalize(gaussian_matrix(N, m, rng));
        if (s.dim() == m) return s;
    }
}

std::vector<int> relax_levels(int T, Eigen::Index relax_subsample) {
    const Eigen::Index m_points = static_cast<Eigen::Index>(T + 1) * (T + 1);
    require(T >= 1, "T must be >= 1");
    require(relax_subsample >= m_points, "relax_subsample must hold at least the (T+1)^2 points of M");
    int levels = 1;
    while (levels + 1 <= T + 1) {
        const Eigen::Index next = static_cast<Eigen::Index>(levels + 1);
        if (next * next * next * next + m_points > relax_subsample) break;
        ++levels;
    }
    std::vector<int> out;
    if (levels == 1) {
        out.push_back(0);
        return out;
    }
    for (int k = 0; k < levels; ++k)
        out.push_back(static_cast<int>(std::lround(static_cast<double>(k) * T / (levels - 1))));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Setup1World build_setup1_world(const ThermalBlockModel& model, const Setup1Config& config,
                               Eigen::Index greedy_dims) {
    require(config.theta_min > 0 && config.theta_step >= 0, "theta_min must be positive");
    Setup1World w;
    std::set<std::array<int, 4>> seen;
    for (int a = 0; a <= config.T; ++a)
        for (int b = 0; b <= config.T; ++b) w.m_thetas.push_back(theta_at(config, a, a, b, b));

    const std::vector<int> levels = relax_levels(config.T, config.relax_subsample);
    for (int t1 : levels)
        for (int t2 : levels)
            for (int t3 : levels)
                for (int t4 : levels)
                    if (seen.insert({t1, t2, t3, t4}).second)
                        w.relax_thetas.push_back(theta_at(config, t1, t2, t3, t4));
    for (int a = 0; a <= config.T; ++a)
        for (int b = 0; b <= config.T; ++b)
            if (seen.insert({a, a, b, b}).second) w.relax_thetas.push_back(theta_at(config, a, a, b, b));

    w.M = solve_all(model, w.m_thetas, config.flux);
    w.relax = solve_all(model, w.relax_thetas, config.flux);
    w.relax_greedy = greedy(w.relax, StoppingRule{greedy_dims, 0.0});
    return w;
}

PriorManifold setup1_prior(const Setup1World& world, Eigen::Index n_prior, Eigen::Index L) {
    const GreedyResult& g = world.relax_greedy;
    require(L >= 1 && L <= n_prior, "need 1 <= L <= n");
    require(n_prior <= g.dim(), "greedy on the relaxed cloud produced fewer than n directions");
    std::vector<DegenerateEllipsoid> es;
    for (Eigen::Index j = 1; j < L; ++j)
        es.emplace_back(g.subspace(j), inflate_width(g.error_at(j)));
    es.emplace_back(g.subspace(n_prior), inflate_width(g.error_at(n_prior)));
    return PriorManifold::nested(std::move(es));
}

Subspace Setup2World::W(Eigen::Index m) const {
    require(m >= 1 && m <= config.n_max, "need 1 <= m <= n_max");
    return Subspace::from_orthonormal(w_tilde.leftCols(m));
}

Subspace Setup2World::V(Eigen::Index j) const {
    require(j >= 0 && j <= config.n_max, "need 0 <= j <= n_max");
    return Subspace::from_orthonormal(v_tilde.leftCols(j));
}

PriorManifold Setup2World::prior(Eigen::Index n, Eigen::Index L) const {
    require(L >= 1 && L <= n && n <= config.n_max, "need 1 <= L <= n <= n_max");
    std::vector<DegenerateEllipsoid> es;
    auto add = [&](Eigen::Index j) {
        Subspace s = V(j);
        es.emplace_back(s, inflate_width(empirical_width(M, s)));
    };
    for (Eigen::Index j = 1; j < L; ++j) add(j);
    add(n);
    return PriorManifold::nested(std::move(es));
}

Setup2World build_setup2(const Setup2Config& c, std::uint64_t seed) {
    require(c.n_max >= 1 && 2 * c.n_max <= c.N, "need 2 n_max <= N");
    require(c.k_hat >= 1 && c.k_hat <= c.n_max, "need 1 <= k_hat <= n_max");
    require(c.delta > 0.0 && c.delta < 1.0, "delta must lie in (0, 1)");
    require(1.0 - c.delta * c.delta > 1e-12, "delta too close to 1");
    require(c.eps_main >= 0 && c.eps_perturb >= 0, "ellipsoid widths must be nonnegative");
    require(c.points >= 1, "need at least one manifold point");

    Setup2World w;
    w.config = c;
    const Matrix e = random_subspace(c.N, 2 * c.n_max, seed).basis();
    const double comp = std::sqrt(1.0 - c.delta * c.delta);

    w.v_tilde = e.leftCols(c.n_max);
    w.w_tilde = e.leftCols(c.n_max);
    for (Eigen::Index j = 0; j < c.k_hat; ++j)
        w.w_tilde.col(j) = c.delta * e.col(j) + comp * e.col(c.n_max + j);
    w.t.resize(c.N, c.k_hat);
    for (Eigen::Index j = 0; j < c.k_hat; ++j)
        w.t.col(j) = (w.v_tilde.col(j) - c.delta * w.w_tilde.col(j)) / comp;

    w.gamma.resize(c.n_max);
    for (Eigen::Index j = 0; j < c.n_max; ++j)
        w.gamma(j) = j < c.k_hat ? std::pow(0.85, -static_cast<double>(c.n_max))
                                 : std::pow(0.85, -static_cast<double>(j + 1 - c.k_hat));

    Philox4x32 rng(derive_seed(seed, kTagSubspace, 1));
    Matrix pts(c.N, c.points);
    for (Eigen::Index s = 0; s < c.points; ++s) {
        const Eigen::VectorXd alpha = c.eps_main * ball_point(c.k_hat, rng);
        const Eigen::VectorXd u = ball_point(c.n_max, rng);
        Eigen::VectorXd beta = c.eps_perturb * u.cwiseQuotient(w.gamma);
        beta.head(c.k_hat) *= c.delta;
        pts.col(s) = w.t * alpha + w.w_tilde * beta;
    }
    w.M = SnapshotSet(std::move(pts));
    return w;
}

}  // namespace pomr
