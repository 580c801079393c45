#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <optional>
#include <span>
#include <vector>

#include "pvn/fgh.hpp"
#include "pvn/lattice_grid.hpp"
#include "pvn/potentials.hpp"
#include "pvn/spectrum.hpp"

namespace pvn {

/// Sign of the momentum phase exp(-/+ i p_c (x - x_c) / hbar). Flipping it
/// conjugates G and leaves every spectrum unchanged.
enum class PhaseSign { negative, positive };

inline constexpr double kDefaultMaxOverlapCondition = 1e12;

/// G[n][m] = g_m(x_n), the vN Gaussian of cell m sampled on the grid:
/// g_m(x) = (2 alpha / pi)^(1/4) exp(-alpha (x - x_c)^2 - i p_c (x - x_c) / hbar).
Eigen::MatrixXcd gaussian_samples(const VnLatticeSpec& lattice,
                                  PhaseSign sign = PhaseSign::negative);

/// S = G^H G with plain sums over grid samples; exactly Hermitian.
Eigen::MatrixXcd overlap_matrix(const Eigen::MatrixXcd& G);

/// Reciprocal 1-norm condition estimate of S taken from its Cholesky factor.
double overlap_condition_estimate(const Eigen::LLT<Eigen::MatrixXcd>& factor);

/// B = G S^-1 by Cholesky solves, so that G^H B = I. Throws IllConditionedOverlap
/// when S is not positive definite or its condition estimate exceeds max_condition.
Eigen::MatrixXcd dual_samples(const Eigen::MatrixXcd& G, const Eigen::MatrixXcd& S,
                              double max_condition = kDefaultMaxOverlapCondition);

/// Sampled pvN Gaussians G, their overlap S and the bi-orthogonal duals B.
struct BasisMatrices {
  VnLatticeSpec lattice;
  Eigen::MatrixXcd G;
  Eigen::MatrixXcd S;
  Eigen::MatrixXcd B;
};

BasisMatrices build_basis(const VnLatticeSpec& lattice,
                          double max_condition = kDefaultMaxOverlapCondition);

/// A Hamiltonian and the metric of the basis it is written in.
struct HermitianPencil {
  Eigen::MatrixXcd H;
  Eigen::MatrixXcd s;
};

/// (G^H H G, G^H G).
HermitianPencil pvn_hamiltonian(const Eigen::MatrixXcd& G, const Eigen::MatrixXd& h_fgh);

/// (B^H H B, B^H B); the metric equals S^-1.
HermitianPencil bvn_hamiltonian(const Eigen::MatrixXcd& B, const Eigen::MatrixXd& h_fgh);

/// Cell subset kept by the classical-region rule: sorted, unique indices.
struct PruneMask {
  std::vector<int> kept;
  double e_cut = 0.0;
  double margin = 0.0;
  VnLatticeSpec lattice;

  int size() const noexcept { return static_cast<int>(kept.size()); }
};

/// Classical energy of every cell center, in cell-index order.
std::vector<double> center_energies(const VnLatticeSpec& lattice, const PotentialModel& model);

/// Keeps every cell whose center has classical energy <= e_cut + margin.
/// Throws EmptyBasis when nothing is kept.
PruneMask prune_mask(const VnLatticeSpec& lattice, const PotentialModel& model, double e_cut,
                     double margin = 0.0);

/// Mask with every cell kept.
PruneMask full_mask(const VnLatticeSpec& lattice);

/// Principal submatrices of H and s on `kept`. Throws IndexError.
HermitianPencil restrict(const HermitianPencil& pencil, std::span<const int> kept);
HermitianPencil restrict(const HermitianPencil& pencil, const PruneMask& mask);

/// Restricted bvN pencils for many masks over one lattice.
///
/// Keeps G, H and the Cholesky factor of S. For kept cells k the restricted
/// pencil is (B_k^H H B_k, S^-1[k, k]) with B_k = G X and X = S^-1[:, k], the
/// kept columns of the inverse obtained by triangular solves. Each call costs
/// O(N^2 |k|); neither S^-1 nor the full bvN Hamiltonian is formed.
class BvnReducer {
 public:
  BvnReducer(Eigen::MatrixXcd G, Eigen::MatrixXd h_fgh,
             double max_condition = kDefaultMaxOverlapCondition);

  HermitianPencil restricted(std::span<const int> kept) const;
  int dimension() const noexcept { return static_cast<int>(g_.cols()); }
  /// 1 / rcond of S from the Cholesky factor.
  double overlap_condition() const noexcept { return overlap_condition_; }

 private:
  Eigen::MatrixXcd g_;
  Eigen::MatrixXd h_;
  Eigen::LLT<Eigen::MatrixXcd> llt_;
  double overlap_condition_;
};

/// Dispatches to the fgh / pvn / bvn / vn-analytic pipelines. A mask is only
/// accepted with bvn. Eigenvalues are returned for the whole (restricted) basis.
SpectrumResult solve_method(const GridSpec& grid, const VnLatticeSpec& lattice,
                            const PotentialModel& model, Method method,
                            const std::optional<PruneMask>& mask = std::nullopt);

/// Conventional vN method: Gaussians on the infinite line with closed-form
/// overlap and Hamiltonian integrals. Harmonic potential only.
SpectrumResult analytic_vn_solve(const VnLatticeSpec& lattice, const PotentialModel& model);

/// Closed-form (H, S) of the conventional vN method; used by analytic_vn_solve.
HermitianPencil analytic_vn_pencil(const VnLatticeSpec& lattice, const Harmonic& model);

/// Largest |<g~_j|psi_k>| over the columns psi_k (grid amplitudes) for each
/// cell j dropped by `mask`, in the order of the dropped indices.
std::vector<std::pair<int, double>> dropped_overlaps(const Eigen::MatrixXcd& G,
                                                     const Eigen::MatrixXcd& psi,
                                                     const PruneMask& mask);

}  // namespace pvn
