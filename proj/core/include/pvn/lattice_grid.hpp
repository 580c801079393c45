#pragma once

#include <Eigen/Core>
#include <optional>

namespace pvn {

/// N-point periodic coordinate grid on [x_min, x_min + L).
///
/// Points are x_i = x_min + i dx with dx = L / N; the right end x_min + L is
/// not a grid point. The grid is band limited to |p| < P = pi hbar / dx, so it
/// covers a phase-space rectangle of area 2 L P = N h.
class GridSpec {
 public:
  int n_points() const noexcept { return n_points_; }
  double x_min() const noexcept { return x_min_; }
  double length() const noexcept { return length_; }
  double hbar() const noexcept { return hbar_; }
  double dx() const noexcept { return dx_; }
  double p_max() const noexcept { return p_max_; }
  /// Planck constant h = 2 pi hbar.
  double planck() const noexcept;

  double point(int i) const noexcept { return x_min_ + i * dx_; }
  Eigen::VectorXd points() const;
  /// 2 L P.
  double phase_space_area() const noexcept { return 2.0 * length_ * p_max_; }

 private:
  friend GridSpec make_grid(double, double, int, double);
  GridSpec(double x_min, double length, int n_points, double hbar);

  int n_points_;
  double x_min_;
  double length_;
  double hbar_;
  double dx_;
  double p_max_;
};

/// Throws InvalidArgument naming the offending field.
GridSpec make_grid(double x_min, double length, int n_points, double hbar);

struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

/// n_x by n_p von Neumann lattice covering the grid's phase-space rectangle,
/// one cell of area h per grid point.
class VnLatticeSpec {
 public:
  const GridSpec& grid() const noexcept { return grid_; }
  int n_x() const noexcept { return n_x_; }
  int n_p() const noexcept { return n_p_; }
  int size() const noexcept { return n_x_ * n_p_; }
  /// Cell width in x.
  double a() const noexcept { return a_; }
  /// Cell width in p, 2 pi hbar / a.
  double dp() const noexcept { return dp_; }
  double alpha() const noexcept { return alpha_; }

 private:
  friend VnLatticeSpec make_lattice(const GridSpec&, int, int, std::optional<double>);
  VnLatticeSpec(GridSpec grid, int n_x, int n_p, double alpha);

  GridSpec grid_;
  int n_x_;
  int n_p_;
  double a_;
  double dp_;
  double alpha_;
};

/// Default alpha is dp / (2 a). Throws LatticeMismatch when n_x n_p != N.
VnLatticeSpec make_lattice(const GridSpec& grid, int n_x, int n_p,
                           std::optional<double> alpha = std::nullopt);

/// Center of cell `cell_index`, flattened position-fastest:
/// i = index mod n_x, j = index div n_x,
/// x = x_min + (i + 1/2) a, p = -P + (j + 1/2) dp.
PhasePoint cell_center(const VnLatticeSpec& lattice, int cell_index);

}  // namespace pvn
