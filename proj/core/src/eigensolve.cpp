#include "pvn/eigensolve.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

#include "pvn/errors.hpp"

namespace pvn {
namespace {

void check_pencil(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& s) {
  if (H.rows() != H.cols() || s.rows() != s.cols() || H.rows() != s.rows())
    throw DimensionMismatch("pencil dimensions H " + std::to_string(H.rows()) + "x" +
                            std::to_string(H.cols()) + ", s " + std::to_string(s.rows()) +
                            "x" + std::to_string(s.cols()));
  if (H.rows() == 0) throw EmptyBasis("empty pencil");
}

bool all_finite(const Eigen::MatrixXcd& m) { return m.allFinite(); }

}  // namespace

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd out = 0.5 * (m + m.adjoint());
  return out;
}

double condition_estimate(const Eigen::MatrixXcd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

double generalized_residual(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& s,
                            const Eigen::VectorXd& eigenvalues,
                            const Eigen::MatrixXcd& eigenvectors) {
  const Eigen::MatrixXcd r =
      H * eigenvectors - (s * eigenvectors) * eigenvalues.cast<std::complex<double>>().asDiagonal();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < r.cols(); ++i) {
    const double norm_u = eigenvectors.col(i).norm();
    if (norm_u > 0.0) worst = std::max(worst, r.col(i).norm() / norm_u);
  }
  return worst;
}

GeneralizedEigResult spectral_regularized_eig(const Eigen::MatrixXcd& H,
                                              const Eigen::MatrixXcd& s, double threshold) {
  check_pencil(H, s);
  if (!(threshold > 0.0 && threshold < 1.0))
    throw InvalidArgument("threshold", "must lie in (0, 1)");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> metric(s);
  if (metric.info() != Eigen::Success)
    throw NumericalFailure("eigendecomposition of the overlap matrix did not converge");
  const Eigen::VectorXd& lambda = metric.eigenvalues();
  const double lambda_max = lambda.maxCoeff();
  if (!(lambda_max > 0.0)) throw EmptyBasis("overlap matrix has no positive eigenvalue");

  const double cutoff = threshold * lambda_max;
  Eigen::Index first_kept = 0;
  while (first_kept < lambda.size() && lambda[first_kept] < cutoff) ++first_kept;
  const Eigen::Index kept = lambda.size() - first_kept;
  if (kept == 0) throw EmptyBasis("all overlap modes fall below the threshold");

  // X = V_k Lambda_k^{-1/2} maps the retained orthonormal subspace into the basis.
  Eigen::MatrixXcd X = metric.eigenvectors().rightCols(kept);
  for (Eigen::Index k = 0; k < kept; ++k) X.col(k) /= std::sqrt(lambda[first_kept + k]);

  const Eigen::MatrixXcd reduced = hermitian_part(X.adjoint() * H * X);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(reduced);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("projected eigenproblem did not converge");

  GeneralizedEigResult out;
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = X * es.eigenvectors();
  out.rank_deficient = first_kept > 0;
  out.s_condition = lambda_max / lambda[first_kept];
  out.residual_max = generalized_residual(H, s, out.eigenvalues, out.eigenvectors);
  return out;
}

GeneralizedEigResult generalized_hermitian_eig(const Eigen::MatrixXcd& H,
                                               const Eigen::MatrixXcd& s,
                                               double fallback_threshold) {
  check_pencil(H, s);
  if (!all_finite(H) || !all_finite(s)) throw NumericalFailure("pencil contains non-finite entries");

  Eigen::LLT<Eigen::MatrixXcd> llt(s);
  if (llt.info() == Eigen::Success) {
    const auto L = llt.matrixL();
    // C = L^-1 H L^-H, assembled as (L^-1 (L^-1 H)^H)^H.
    const Eigen::MatrixXcd left = L.solve(H);
    const Eigen::MatrixXcd right = L.solve(Eigen::MatrixXcd(left.adjoint()));
    const Eigen::MatrixXcd reduced = hermitian_part(right.adjoint());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(reduced);
    if (es.info() == Eigen::Success && es.eigenvalues().allFinite()) {
      GeneralizedEigResult out;
      out.eigenvalues = es.eigenvalues();
      out.eigenvectors = llt.matrixU().solve(es.eigenvectors());
      out.s_condition = condition_estimate(s);
      out.residual_max = generalized_residual(H, s, out.eigenvalues, out.eigenvectors);
      return out;
    }
  }

  try {
    GeneralizedEigResult out = spectral_regularized_eig(H, s, fallback_threshold);
    out.used_fallback = true;
    return out;
  } catch (const Error& e) {
    throw NumericalFailure(std::string("Cholesky reduction failed and spectral fallback failed: ") +
                           e.what());
  }
}

}  // namespace pvn
