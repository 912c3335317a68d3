#include "pomr/greedy.hpp"

#include "pomr/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pomr {

namespace {

// Lowest index wins ties.
Eigen::Index argmax(const Eigen::VectorXd& v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (v(i) > v(best)) best = i;
    return best;
}

double max_column_norm(const Matrix& r) {
    if (r.cols() == 0) return 0.0;
    return std::sqrt(r.colwise().squaredNorm().maxCoeff());
}

}  // namespace

SnapshotSet::SnapshotSet(Matrix columns) : columns_(std::move(columns)) {
    require(columns_.allFinite(), "snapshots have non-finite entries");
}

SnapshotSet::SnapshotSet(const std::vector<HVector>& snapshots, Eigen::Index ambient_dim)
    : columns_(ambient_dim, static_cast<Eigen::Index>(snapshots.size())) {
    for (std::size_t j = 0; j < snapshots.size(); ++j) {
        check_vector(snapshots[j], ambient_dim);
        columns_.col(static_cast<Eigen::Index>(j)) = snapshots[j];
    }
}

void SnapshotSet::append(const SnapshotSet& other) {
    if (other.empty()) return;
    if (empty()) {
        columns_ = other.columns_;
        return;
    }
    require(other.ambient_dim() == ambient_dim(), "appending snapshots of another dimension");
    const Eigen::Index old = columns_.cols();
    columns_.conservativeResize(Eigen::NoChange, old + other.size());
    columns_.rightCols(other.size()) = other.columns_;
}

Subspace GreedyResult::subspace(Eigen::Index t) const {
    require(t >= 0 && t <= dim(), "greedy subspace index out of range");
    return Subspace::from_orthonormal(basis.leftCols(t));
}

double GreedyResult::error_at(Eigen::Index t) const {
    require(t >= 0 && t <= dim(), "greedy error index out of range");
    return t == 0 ? initial_error : error_curve[static_cast<std::size_t>(t - 1)];
}

GreedyResult greedy(const SnapshotSet& snapshots, const StoppingRule& stop) {
    require(!snapshots.empty(), "greedy needs at least one snapshot");
    require(stop.i_max >= 0 && stop.tau >= 0, "invalid stopping rule");

    const Eigen::Index n = snapshots.ambient_dim();
    const Eigen::Index cap = std::min(stop.i_max, n);
    Matrix r = snapshots.matrix();
    GreedyResult out;
    out.basis.resize(n, cap);

    Eigen::VectorXd norms = r.colwise().norm().transpose();
    out.initial_error = norms.maxCoeff();

    Eigen::Index d = 0;
    while (d < cap) {
        const Eigen::Index winner = argmax(norms);
        const double worst = norms(winner);
        if (worst <= stop.tau || worst < kGreedyExhausted) break;

        Eigen::VectorXd v = r.col(winner);
        for (int pass = 0; pass < 2; ++pass)
            v -= out.basis.leftCols(d) * (out.basis.leftCols(d).transpose() * v);
        const double len = v.norm();
        if (len < kGreedyExhausted) break;
        v /= len;

        out.basis.col(d++) = v;
        out.selected_indices.push_back(winner);
        r.noalias() -= v * (v.transpose() * r);
        norms = r.colwise().norm().transpose();
        out.error_curve.push_back(norms.maxCoeff());
    }
    out.basis.conservativeResize(n, d);
    return out;
}

std::vector<double> nested_widths(const SnapshotSet& cloud, const Matrix& basis, Eigen::Index i_max) {
    require(!cloud.empty(), "width of an empty cloud");
    require(basis.rows() == cloud.ambient_dim(), "basis and cloud dimensions differ");
    const Eigen::Index d = std::min(i_max, basis.cols());
    std::vector<double> widths;
    widths.reserve(static_cast<std::size_t>(d + 1));
    Matrix r = cloud.matrix();
    widths.push_back(max_column_norm(r));
    for (Eigen::Index t = 0; t < d; ++t) {
        r.noalias() -= basis.col(t) * (basis.col(t).transpose() * r);
        widths.push_back(max_column_norm(r));
    }
    return widths;
}

double empirical_width(const SnapshotSet& cloud, const Subspace& s) {
    require(!cloud.empty(), "width of an empty cloud");
    require(s.ambient_dim() == cloud.ambient_dim(), "subspace and cloud dimensions differ");
    if (s.is_zero()) return max_column_norm(cloud.matrix());
    const Matrix r = cloud.matrix() - s.basis() * (s.basis().transpose() * cloud.matrix());
    return max_column_norm(r);
}

}  // namespace pomr
