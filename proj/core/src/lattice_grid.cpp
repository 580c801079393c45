#include "pvn/lattice_grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pvn/errors.hpp"

namespace pvn {

LatticeMismatch::LatticeMismatch(long long lattice_cells, long long grid_points)
    : Error("lattice n_x*n_p = " + std::to_string(lattice_cells) +
            " does not match grid n_points = " + std::to_string(grid_points)),
      lattice_cells_(lattice_cells),
      grid_points_(grid_points) {}

GridSpec::GridSpec(double x_min, double length, int n_points, double hbar)
    : n_points_(n_points),
      x_min_(x_min),
      length_(length),
      hbar_(hbar),
      dx_(length / n_points),
      p_max_(std::numbers::pi * hbar / dx_) {}

double GridSpec::planck() const noexcept { return 2.0 * std::numbers::pi * hbar_; }

Eigen::VectorXd GridSpec::points() const {
  Eigen::VectorXd x(n_points_);
  for (int i = 0; i < n_points_; ++i) x[i] = point(i);
  return x;
}

GridSpec make_grid(double x_min, double length, int n_points, double hbar) {
  if (!std::isfinite(x_min)) throw InvalidArgument("x_min", "must be finite");
  if (!(length > 0.0) || !std::isfinite(length))
    throw InvalidArgument("length", "must be positive and finite");
  if (n_points < 2) throw InvalidArgument("n_points", "must be at least 2");
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw InvalidArgument("hbar", "must be positive and finite");
  return GridSpec(x_min, length, n_points, hbar);
}

VnLatticeSpec::VnLatticeSpec(GridSpec grid, int n_x, int n_p, double alpha)
    : grid_(grid),
      n_x_(n_x),
      n_p_(n_p),
      a_(grid.length() / n_x),
      dp_(2.0 * std::numbers::pi * grid.hbar() / a_),
      alpha_(alpha) {}

VnLatticeSpec make_lattice(const GridSpec& grid, int n_x, int n_p,
                           std::optional<double> alpha) {
  if (n_x < 1) throw InvalidArgument("n_x", "must be positive");
  if (n_p < 1) throw InvalidArgument("n_p", "must be positive");
  const long long cells = static_cast<long long>(n_x) * n_p;
  if (cells != grid.n_points()) throw LatticeMismatch(cells, grid.n_points());
  if (alpha && !(*alpha > 0.0 && std::isfinite(*alpha)))
    throw InvalidArgument("alpha", "must be positive and finite");

  const double a = grid.length() / n_x;
  const double dp = 2.0 * std::numbers::pi * grid.hbar() / a;
  return VnLatticeSpec(grid, n_x, n_p, alpha.value_or(dp / (2.0 * a)));
}

PhasePoint cell_center(const VnLatticeSpec& lattice, int cell_index) {
  if (cell_index < 0 || cell_index >= lattice.size())
    throw IndexError("cell index " + std::to_string(cell_index) + " outside [0, " +
                     std::to_string(lattice.size()) + ")");
  const int i = cell_index % lattice.n_x();
  const int j = cell_index / lattice.n_x();
  // -P + (j + 1/2) dp written around p = 0 so that mirrored cells are exact negatives.
  const double slot = (j + 0.5) - 0.5 * lattice.n_p();
  return {lattice.grid().x_min() + (i + 0.5) * lattice.a(), slot * lattice.dp()};
}

}  // namespace pvn
