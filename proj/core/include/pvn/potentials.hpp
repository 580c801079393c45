#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pvn/lattice_grid.hpp"

namespace pvn {

/// V(x) = m omega^2 x^2 / 2.
struct Harmonic {
  double mass = 1.0;
  double omega = 1.0;
};

/// V(x) = D (1 - exp(-beta x))^2.
struct Morse {
  double depth = 1.0;
  double steepness = 1.0;
  double mass = 1.0;
};

/// V(x) = -Q^2 / (|x| + eps). eps = 0 is the bare Coulomb potential.
struct Coulomb {
  double charge = 1.0;
  double mass = 1.0;
  double core_offset = 0.0;
};

/// Piecewise-linear potential through (x, V) samples, clamped to the end
/// values outside the table. Free particles and random test potentials go
/// through this variant; it has no analytic spectrum.
struct Tabulated {
  std::vector<double> x;
  std::vector<double> v;
  double mass = 1.0;
};

using PotentialModel = std::variant<Harmonic, Morse, Coulomb, Tabulated>;

/// Validates parameters (positive mass, D, beta, omega, Q; eps >= 0; sorted
/// table). Throws InvalidArgument.
void validate(const PotentialModel& model);

double mass_of(const PotentialModel& model);
std::string kind_name(const PotentialModel& model);

/// Constant potential zero on the whole line.
PotentialModel free_particle(double mass);

/// Throws SingularPotential for the bare Coulomb model at x = 0.
double eval_potential(const PotentialModel& model, double x);

/// p^2 / 2m + V(x).
double classical_energy(const PotentialModel& model, PhasePoint point);

/// Number of Morse bound states, floor(sqrt(2 m D) / (beta hbar) - 1/2) + 1.
int morse_bound_count(const Morse& morse, double hbar);

/// Lowest `count` analytic levels, ascending. Coulomb gives the Bohr series
/// -m Q^4 / (2 hbar^2 n^2), n = 1, 2, ... Throws DomainError for Morse beyond
/// the bound count and NotImplemented for tabulated potentials.
std::vector<double> analytic_levels(const PotentialModel& model, double hbar, int count);

/// Number of analytic levels strictly below e_cut.
int count_states_below(const PotentialModel& model, double hbar, double e_cut);

/// Classical turning points {x_lo, x_hi} of the energy shell p^2/2m + V = e.
/// Harmonic and Morse only.
std::pair<double, double> turning_points(const PotentialModel& model, double energy);

/// Phase-space area enclosed by the energy shell, by quadrature of 2 * int p(x) dx.
double shell_area(const PotentialModel& model, double energy);

/// Area of the tightest phase-space rectangle around the shell divided by the
/// shell area: the efficiency bound of a rectangular (grid) basis.
double rectangle_efficiency_bound(const PotentialModel& model, double energy);

}  // namespace pvn
