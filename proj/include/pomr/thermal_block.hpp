#pragma once

// Thermal block on [0,1]^2 with bilinear (Q1) elements on an n x n grid.
//   Gamma_1 = bottom edge, flux c (scaled by 1/k as in the weak form we use)
//   Gamma_3 = top edge, h = 0 (eliminated)
//   left and right edges insulated
//   Omega_1..4 = quadrants top-left, bottom-right, top-right, bottom-left, so
//   that theta_1 = theta_2 and theta_3 = theta_4 make a checkerboard; row or
//   column pairings make the constrained family separable and M 2- or 3-dimensional
// Solutions are returned in coordinates of an L2-orthonormal basis of the FE
// space, obtained from the Cholesky factor M = L L^T of the mass matrix.

#include "pomr/geometry.hpp"

#include <Eigen/Sparse>

#include <array>

namespace pomr {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Theta = std::array<double, 4>;

/// Element matrices on a square of side `h`, local nodes counterclockwise from
/// the lower-left corner, integrated with 2x2 Gauss quadrature.
Eigen::Matrix4d q1_stiffness();
Eigen::Matrix4d q1_mass(double h);

class ThermalBlockModel {
public:
    explicit ThermalBlockModel(int cells = 24);

    int cells() const noexcept { return cells_; }
    Eigen::Index dim() const noexcept { return dim_; }

    /// Nodal dof of grid node (i, j), j < cells; -1 on the Dirichlet edge.
    Eigen::Index dof(int i, int j) const noexcept;
    /// Subdomain index 0..3 of cell (ci, cj).
    int subdomain(int ci, int cj) const noexcept;

    const SparseMatrix& stiffness_part(int i) const { return parts_.at(static_cast<std::size_t>(i)); }
    SparseMatrix assemble(const Theta& theta) const;
    /// Element-by-element assembly with the piecewise conductivity, as a check on assemble().
    SparseMatrix assemble_direct(const Theta& theta) const;

    const SparseMatrix& mass() const noexcept { return mass_; }
    const SparseMatrix& mass_factor() const noexcept { return chol_; }

    /// Nodal boundary load c * int_{Gamma_1} k^{-1} psi_i.
    Eigen::VectorXd flux_load(const Theta& theta, double c) const;

    /// Solves a(h, .) = b(.) with flux c and a source given by its coordinates
    /// in the orthonormal basis (empty means zero). Returns orthonormal coordinates.
    HVector solve(const Theta& theta, double c, const HVector& source = HVector()) const;

    /// Orthonormal-basis stiffness applied to h: L^{-1} A L^{-T} h.
    HVector apply_stiffness_orth(const Theta& theta, const HVector& h) const;

    HVector to_orth(const Eigen::VectorXd& nodal) const;
    Eigen::VectorXd to_nodal(const HVector& orth) const;

private:
    int cells_;
    Eigen::Index dim_;
    std::array<SparseMatrix, 4> parts_;
    SparseMatrix mass_;
    SparseMatrix chol_;  // lower triangular L
    Eigen::VectorXd flux_left_, flux_right_;
};

void check_theta(const Theta& theta);

}  // namespace pomr
