#pragma once

#include <Eigen/Core>

#include "pvn/lattice_grid.hpp"
#include "pvn/potentials.hpp"
#include "pvn/spectrum.hpp"

namespace pvn {

/// Fourier-grid kinetic energy matrix of the periodic band-limited basis.
///
/// Even N:  T_ii = (hbar^2/2M) (K^2/3)(1 + 2/N^2),
///          T_ij = (hbar^2/2M) (2K^2/N^2) (-1)^(j-i) / sin^2(pi (j-i)/N),
/// with K = pi/dx. Odd N uses the matching odd-N periodic form
/// (K^2/3)(1 - 1/N^2) and an extra cos(pi (j-i)/N) factor off the diagonal.
/// Either way T is symmetric Toeplitz with eigenvalues hbar^2 k_j^2 / 2M.
Eigen::MatrixXd kinetic_matrix(const GridSpec& grid, double mass);

/// The grid momenta k_j = 2 pi j / L of the periodic basis, ascending.
Eigen::VectorXd grid_wavenumbers(const GridSpec& grid);

class GridHamiltonian {
 public:
  GridHamiltonian(GridSpec grid, Eigen::MatrixXd matrix, Eigen::VectorXd potential_diag)
      : grid_(grid), matrix_(std::move(matrix)), potential_diag_(std::move(potential_diag)) {}

  const GridSpec& grid() const noexcept { return grid_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  const Eigen::VectorXd& potential_diag() const noexcept { return potential_diag_; }
  Eigen::MatrixXd kinetic() const;

 private:
  GridSpec grid_;
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd potential_diag_;
};

/// H = T + diag(V(x_i)). Throws SingularPotential naming the grid index.
GridHamiltonian fgh_hamiltonian(const GridSpec& grid, const PotentialModel& model);

/// Lowest n_wanted eigenpairs of H by dense symmetric diagonalization.
SpectrumResult solve_fgh(const GridHamiltonian& hamiltonian, int n_wanted);

}  // namespace pvn
