#pragma once

#include <Eigen/Core>

namespace pvn {

/// Solution of the Hermitian-definite pencil H U = s U E.
struct GeneralizedEigResult {
  Eigen::VectorXd eigenvalues;    ///< ascending
  Eigen::MatrixXcd eigenvectors;  ///< columns, s-orthonormal
  double residual_max = 0.0;      ///< max_i |H u_i - e_i s u_i| / |u_i|
  double s_condition = 1.0;
  bool rank_deficient = false;
  bool used_fallback = false;
};

inline constexpr double kDefaultSpectralThreshold = 1e-12;

/// Cholesky reduction s = L L^H, standard solve of L^-1 H L^-H, back-transform.
/// If s is not numerically positive definite, falls back to
/// spectral_regularized_eig with `fallback_threshold` and sets used_fallback.
/// Throws NumericalFailure when both paths fail.
GeneralizedEigResult generalized_hermitian_eig(const Eigen::MatrixXcd& H,
                                               const Eigen::MatrixXcd& s,
                                               double fallback_threshold = kDefaultSpectralThreshold);

/// Projects onto the eigenvectors of s with eigenvalue >= threshold * lambda_max
/// and solves the standard problem there. Throws EmptyBasis if nothing survives.
GeneralizedEigResult spectral_regularized_eig(const Eigen::MatrixXcd& H,
                                              const Eigen::MatrixXcd& s, double threshold);

/// lambda_max / lambda_min of a Hermitian matrix; infinity if lambda_min <= 0.
double condition_estimate(const Eigen::MatrixXcd& s);

/// max_i |H u_i - e_i s u_i|_2 / |u_i|_2.
double generalized_residual(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& s,
                            const Eigen::VectorXd& eigenvalues,
                            const Eigen::MatrixXcd& eigenvectors);

/// (m + m^H) / 2
Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m);

}  // namespace pvn
