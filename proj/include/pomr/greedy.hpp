#pragma once

#include "pomr/geometry.hpp"

#include <limits>
#include <vector>

namespace pomr {

/// Snapshots stored as the columns of an N x N_snap matrix.
class SnapshotSet {
public:
    SnapshotSet() = default;
    explicit SnapshotSet(Matrix columns);
    SnapshotSet(const std::vector<HVector>& snapshots, Eigen::Index ambient_dim);

    Eigen::Index size() const noexcept { return columns_.cols(); }
    bool empty() const noexcept { return columns_.cols() == 0; }
    Eigen::Index ambient_dim() const noexcept { return columns_.rows(); }
    const Matrix& matrix() const noexcept { return columns_; }
    auto operator[](Eigen::Index j) const { return columns_.col(j); }

    void append(const SnapshotSet& other);

private:
    Matrix columns_;
};

struct StoppingRule {
    Eigen::Index i_max = std::numeric_limits<Eigen::Index>::max();
    double tau = 0.0;
};

struct GreedyResult {
    Matrix basis;  // N x d, column t extends the first t columns
    std::vector<Eigen::Index> selected_indices;
    /// error_curve[t - 1] = max_j dist(h_j, S_t) after t iterations.
    std::vector<double> error_curve;
    double initial_error = 0.0;  // max_j |h_j|

    Eigen::Index dim() const noexcept { return basis.cols(); }
    Subspace subspace(Eigen::Index t) const;
    /// Max error of S_t for t = 0..dim().
    double error_at(Eigen::Index t) const;
};

GreedyResult greedy(const SnapshotSet& snapshots, const StoppingRule& stop);

/// Snapshot span exhausted below this residual.
inline constexpr double kGreedyExhausted = 1e-12;

/// widths[t] = max_j dist(cloud_j, span of the first t columns of basis),
/// t = 0..min(i_max, basis.cols()). Basis columns must be orthonormal.
std::vector<double> nested_widths(const SnapshotSet& cloud, const Matrix& basis, Eigen::Index i_max);

double empirical_width(const SnapshotSet& cloud, const Subspace& s);

}  // namespace pomr
