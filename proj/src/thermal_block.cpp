#include "pomr/thermal_block.hpp"

#include "pomr/errors.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <vector>

namespace pomr {

namespace {

// Reference square [0,1]^2, nodes (0,0), (1,0), (1,1), (0,1).
constexpr double kNodeX[4] = {0, 1, 1, 0};
constexpr double kNodeY[4] = {0, 0, 1, 1};

double shape(int a, double x, double y) {
    const double sx = kNodeX[a] == 0 ? 1 - x : x;
    const double sy = kNodeY[a] == 0 ? 1 - y : y;
    return sx * sy;
}

Eigen::Vector2d shape_grad(int a, double x, double y) {
    const double sx = kNodeX[a] == 0 ? 1 - x : x;
    const double sy = kNodeY[a] == 0 ? 1 - y : y;
    const double dx = kNodeX[a] == 0 ? -1 : 1;
    const double dy = kNodeY[a] == 0 ? -1 : 1;
    return {dx * sy, sx * dy};
}

const double kGauss[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};

}  // namespace

Eigen::Matrix4d q1_stiffness() {
    // grad on a square of side h scales by 1/h, area by h^2: independent of h.
    Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
    for (double gx : kGauss)
        for (double gy : kGauss)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    k(a, b) += 0.25 * shape_grad(a, gx, gy).dot(shape_grad(b, gx, gy));
    return k;
}

Eigen::Matrix4d q1_mass(double h) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (double gx : kGauss)
        for (double gy : kGauss)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    m(a, b) += 0.25 * h * h * shape(a, gx, gy) * shape(b, gx, gy);
    return m;
}

void check_theta(const Theta& theta) {
    for (double t : theta)
        require(std::isfinite(t) && t > 0.0, "conductivities must be positive");
}

ThermalBlockModel::ThermalBlockModel(int cells) : cells_(cells) {
    require(cells >= 2 && cells % 2 == 0, "cells per side must be even and >= 2");
    dim_ = static_cast<Eigen::Index>(cells) * (cells + 1);
    const double h = 1.0 / cells;
    const Eigen::Matrix4d ke = q1_stiffness();
    const Eigen::Matrix4d me = q1_mass(h);

    std::array<std::vector<Eigen::Triplet<double>>, 4> kt;
    std::vector<Eigen::Triplet<double>> mt;
    for (int cj = 0; cj < cells; ++cj) {
        for (int ci = 0; ci < cells; ++ci) {
            const int s = subdomain(ci, cj);
            Eigen::Index ids[4];
            for (int a = 0; a < 4; ++a)
                ids[a] = dof(ci + static_cast<int>(kNodeX[a]), cj + static_cast<int>(kNodeY[a]));
            for (int a = 0; a < 4; ++a) {
                if (ids[a] < 0) continue;
                for (int b = 0; b < 4; ++b) {
                    if (ids[b] < 0) continue;
                    kt[static_cast<std::size_t>(s)].emplace_back(ids[a], ids[b], ke(a, b));
                    mt.emplace_back(ids[a], ids[b], me(a, b));
                }
            }
        }
    }
    for (std::size_t s = 0; s < 4; ++s) {
        parts_[s].resize(dim_, dim_);
        parts_[s].setFromTriplets(kt[s].begin(), kt[s].end());
    }
    mass_.resize(dim_, dim_);
    mass_.setFromTriplets(mt.begin(), mt.end());

    Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::NaturalOrdering<int>> llt(mass_);
    if (llt.info() != Eigen::Success) throw Error("mass matrix is not positive definite");
    chol_ = llt.matrixL();

    // Trapezoid-exact edge integrals of the linear traces on y = 0.
    flux_left_ = Eigen::VectorXd::Zero(dim_);
    flux_right_ = Eigen::VectorXd::Zero(dim_);
    for (int ci = 0; ci < cells; ++ci) {
        Eigen::VectorXd& target = 2 * ci < cells ? flux_left_ : flux_right_;
        target(dof(ci, 0)) += 0.5 * h;
        target(dof(ci + 1, 0)) += 0.5 * h;
    }
}

Eigen::Index ThermalBlockModel::dof(int i, int j) const noexcept {
    if (j >= cells_) return -1;
    return static_cast<Eigen::Index>(j) * (cells_ + 1) + i;
}

int ThermalBlockModel::subdomain(int ci, int cj) const noexcept {
    const bool right = 2 * ci >= cells_;
    const bool top = 2 * cj >= cells_;
    return top ? (right ? 2 : 0) : (right ? 1 : 3);
}

SparseMatrix ThermalBlockModel::assemble(const Theta& theta) const {
    check_theta(theta);
    SparseMatrix a = theta[0] * parts_[0];
    for (std::size_t s = 1; s < 4; ++s) a += theta[s] * parts_[s];
    return a;
}

SparseMatrix ThermalBlockModel::assemble_direct(const Theta& theta) const {
    check_theta(theta);
    const double h = 1.0 / cells_;
    std::vector<Eigen::Triplet<double>> t;
    for (int cj = 0; cj < cells_; ++cj) {
        for (int ci = 0; ci < cells_; ++ci) {
            const double xc = (ci + 0.5) * h, yc = (cj + 0.5) * h;
            const int s = yc > 0.5 ? (xc > 0.5 ? 2 : 0) : (xc > 0.5 ? 1 : 3);
            const double k = theta[static_cast<std::size_t>(s)];
            for (double gx : kGauss) {
                for (double gy : kGauss) {
                    for (int a = 0; a < 4; ++a) {
                        const Eigen::Index ia = dof(ci + static_cast<int>(kNodeX[a]), cj + static_cast<int>(kNodeY[a]));
                        if (ia < 0) continue;
                        for (int b = 0; b < 4; ++b) {
                            const Eigen::Index ib = dof(ci + static_cast<int>(kNodeX[b]), cj + static_cast<int>(kNodeY[b]));
                            if (ib < 0) continue;
                            const Eigen::Vector2d ga = shape_grad(a, gx, gy) / h;
                            const Eigen::Vector2d gb = shape_grad(b, gx, gy) / h;
                            t.emplace_back(ia, ib, 0.25 * h * h * k * ga.dot(gb));
                        }
                    }
                }
            }
        }
    }
    SparseMatrix a(dim_, dim_);
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

Eigen::VectorXd ThermalBlockModel::flux_load(const Theta& theta, double c) const {
    check_theta(theta);
    return c * (flux_left_ / theta[3] + flux_right_ / theta[1]);
}

HVector ThermalBlockModel::solve(const Theta& theta, double c, const HVector& source) const {
    const SparseMatrix a = assemble(theta);
    Eigen::VectorXd rhs = flux_load(theta, c);
    if (source.size() > 0) {
        check_vector(source, dim_);
        rhs += chol_ * source;
    }
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(a);
    if (ldlt.info() != Eigen::Success) throw Error("stiffness factorization failed");
    const Eigen::VectorXd nodal = ldlt.solve(rhs);
    return to_orth(nodal);
}

HVector ThermalBlockModel::apply_stiffness_orth(const Theta& theta, const HVector& h) const {
    check_vector(h, dim_);
    const Eigen::VectorXd nodal = to_nodal(h);
    const Eigen::VectorXd an = assemble(theta) * nodal;
    return chol_.triangularView<Eigen::Lower>().solve(an);
}

HVector ThermalBlockModel::to_orth(const Eigen::VectorXd& nodal) const {
    return chol_.transpose() * nodal;
}

Eigen::VectorXd ThermalBlockModel::to_nodal(const HVector& orth) const {
    return chol_.transpose().triangularView<Eigen::Upper>().solve(orth);
}

}  // namespace pomr
