#pragma once

#include <Eigen/Core>
#include <string>
#include <string_view>

namespace pvn {

enum class Method { fgh, pvn, bvn, vn_analytic };

std::string to_string(Method method);
/// Accepts "fgh", "pvn", "bvn", "vn-analytic". Throws InvalidArgument.
Method parse_method(std::string_view name);

struct SpectrumResult {
  /// Ascending.
  Eigen::VectorXd eigenvalues;
  /// Columns are eigenvectors: grid amplitudes for fgh, basis coefficients otherwise.
  Eigen::MatrixXcd eigenvectors;
  int basis_size = 0;
  /// max_i |H u_i - lambda_i s u_i| / |u_i|
  double residual_max = 0.0;
  /// Extreme-eigenvalue ratio of the metric (1 for an orthonormal basis).
  double overlap_condition = 1.0;
  Method method = Method::fgh;
  bool rank_deficient = false;
  bool used_fallback = false;
};

/// Rescales each column so its largest-magnitude component is real and positive.
void fix_phase(Eigen::MatrixXcd& vectors);

}  // namespace pvn
