#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pvn/config.hpp"
#include "pvn/lattice_grid.hpp"
#include "pvn/potentials.hpp"

namespace support {

inline std::filesystem::path preset(const std::string& name) {
  return std::filesystem::path(PVN_PRESET_DIR) / (name + ".ini");
}

inline pvn::ExperimentConfig load_preset(const std::string& name) {
  return pvn::load_config(preset(name));
}

/// Kinetic matrix straight from its definition: T = F^H diag(hbar^2 k^2 / 2m) F
/// over the N plane waves exp(i k x) of the periodic grid.
inline Eigen::MatrixXd dft_kinetic(const pvn::GridSpec& grid, double mass) {
  const int n = grid.n_points();
  const int first = n % 2 == 0 ? -n / 2 + 1 : -(n - 1) / 2;
  Eigen::MatrixXcd f(n, n);
  Eigen::VectorXd energy(n);
  for (int j = 0; j < n; ++j) {
    const double k = 2.0 * std::numbers::pi * (first + j) / grid.length();
    energy[j] = grid.hbar() * grid.hbar() * k * k / (2.0 * mass);
    for (int i = 0; i < n; ++i) f(j, i) = std::polar(1.0 / std::sqrt(double(n)), k * grid.point(i));
  }
  return (f.adjoint() * energy.asDiagonal() * f).real();
}

/// Smooth random potential on [x0, x0 + L): a confining quadratic plus a few
/// random cosines, tabulated finely enough that linear interpolation is smooth.
inline pvn::Tabulated random_smooth_potential(unsigned seed, double x0, double length) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> curvature(0.2, 1.0);
  const double c = curvature(rng);
  double a[3], phase[3];
  for (int k = 0; k < 3; ++k) {
    a[k] = amp(rng);
    phase[k] = 3.0 * amp(rng);
  }
  pvn::Tabulated t;
  t.mass = 1.0;
  const int samples = 2001;
  const double mid = x0 + 0.5 * length;
  for (int i = 0; i < samples; ++i) {
    const double x = x0 - 1.0 + (length + 2.0) * i / (samples - 1);
    double v = c * (x - mid) * (x - mid);
    for (int k = 0; k < 3; ++k) v += a[k] * std::cos((k + 1) * 2.0 * std::numbers::pi * x / length + phase[k]);
    t.x.push_back(x);
    t.v.push_back(v);
  }
  return t;
}

struct Instance {
  pvn::GridSpec grid;
  pvn::VnLatticeSpec lattice;
  pvn::PotentialModel model;
};

inline Instance harmonic_instance() {
  const pvn::GridSpec g = pvn::make_grid(-5.0, 10.0, 16, 1.0);
  return {g, pvn::make_lattice(g, 4, 4, 0.5), pvn::Harmonic{1.0, 1.0}};
}

/// Five small random instances: N <= 24, random box, lattice shape and smooth potential.
inline std::vector<Instance> random_instances() {
  const int shapes[5][2] = {{3, 4}, {4, 5}, {2, 8}, {4, 6}, {6, 4}};
  std::vector<Instance> out;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const int n = shapes[i][0] * shapes[i][1];
    const double x0 = -4.0 - 2.0 * u(rng);
    const double length = 8.0 + 4.0 * u(rng);
    const pvn::GridSpec g = pvn::make_grid(x0, length, n, 0.6 + 0.8 * u(rng));
    const pvn::VnLatticeSpec l = pvn::make_lattice(g, shapes[i][0], shapes[i][1]);
    out.push_back({g, l, random_smooth_potential(100 + i, x0, length)});
  }
  return out;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

inline double max_rel_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1e-300, std::abs(b[i])));
  return worst;
}

}  // namespace support
