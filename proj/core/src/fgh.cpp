#include "pvn/fgh.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pvn/errors.hpp"

namespace pvn {

Eigen::MatrixXd kinetic_matrix(const GridSpec& grid, double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("mass", "must be positive");
  const int n = grid.n_points();
  const double nn = static_cast<double>(n) * n;
  const double k = std::numbers::pi / grid.dx();
  const double prefactor = grid.hbar() * grid.hbar() / (2.0 * mass);
  const bool even = n % 2 == 0;

  // The matrix is Toeplitz, so one row of offsets determines it.
  Eigen::VectorXd band(n);
  band[0] = prefactor * (k * k / 3.0) * (even ? 1.0 + 2.0 / nn : 1.0 - 1.0 / nn);
  for (int d = 1; d < n; ++d) {
    const double angle = std::numbers::pi * d / n;
    const double sign = d % 2 == 0 ? 1.0 : -1.0;
    const double s = std::sin(angle);
    double value = prefactor * (2.0 * k * k / nn) * sign / (s * s);
    if (!even) value *= std::cos(angle);
    band[d] = value;
  }

  Eigen::MatrixXd t(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) t(i, j) = t(j, i) = band[j - i];
  return t;
}

Eigen::VectorXd grid_wavenumbers(const GridSpec& grid) {
  const int n = grid.n_points();
  const int first = n % 2 == 0 ? -n / 2 + 1 : -(n - 1) / 2;
  Eigen::VectorXd k(n);
  for (int j = 0; j < n; ++j) k[j] = 2.0 * std::numbers::pi * (first + j) / grid.length();
  return k;
}

Eigen::MatrixXd GridHamiltonian::kinetic() const {
  Eigen::MatrixXd t = matrix_;
  t.diagonal() -= potential_diag_;
  return t;
}

GridHamiltonian fgh_hamiltonian(const GridSpec& grid, const PotentialModel& model) {
  validate(model);
  Eigen::VectorXd v(grid.n_points());
  for (int i = 0; i < grid.n_points(); ++i) {
    const double x = grid.point(i);
    double value = 0.0;
    try {
      value = eval_potential(model, x);
    } catch (const SingularPotential&) {
      value = std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(value)) {
      std::ostringstream msg;
      msg << "potential is not finite at grid index " << i << " (x = " << x << ")";
      throw SingularPotential(msg.str(), i, x);
    }
    v[i] = value;
  }
  Eigen::MatrixXd h = kinetic_matrix(grid, mass_of(model));
  h.diagonal() += v;
  return GridHamiltonian(grid, std::move(h), std::move(v));
}

SpectrumResult solve_fgh(const GridHamiltonian& hamiltonian, int n_wanted) {
  const int n = hamiltonian.grid().n_points();
  if (n_wanted < 1 || n_wanted > n)
    throw InvalidArgument("n_wanted", "must lie in [1, " + std::to_string(n) + "]");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian.matrix());
  if (es.info() != Eigen::Success)
    throw NumericalFailure("symmetric eigensolver did not converge for N = " + std::to_string(n));

  SpectrumResult out;
  out.method = Method::fgh;
  out.basis_size = n;
  out.eigenvalues = es.eigenvalues().head(n_wanted);
  const Eigen::MatrixXd vectors = es.eigenvectors().leftCols(n_wanted);
  const Eigen::MatrixXd r = hamiltonian.matrix() * vectors - vectors * out.eigenvalues.asDiagonal();
  out.residual_max = r.colwise().norm().maxCoeff();
  out.eigenvectors = vectors.cast<std::complex<double>>();
  fix_phase(out.eigenvectors);
  return out;
}

}  // namespace pvn
