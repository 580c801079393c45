#include "pvn/potentials.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "pvn/errors.hpp"

namespace pvn {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw InvalidArgument(field, "must be positive and finite");
}

double morse_omega(const Morse& m) { return m.steepness * std::sqrt(2.0 * m.depth / m.mass); }

double morse_level(const Morse& m, double hbar, int n) {
  const double q = hbar * morse_omega(m) * (n + 0.5);
  return q - q * q / (4.0 * m.depth);
}

double coulomb_scale(const Coulomb& c, double hbar) {
  const double q2 = c.charge * c.charge;
  return c.mass * q2 * q2 / (2.0 * hbar * hbar);
}

double interpolate(const Tabulated& t, double x) {
  if (x <= t.x.front()) return t.v.front();
  if (x >= t.x.back()) return t.v.back();
  const auto hi = std::upper_bound(t.x.begin(), t.x.end(), x);
  const auto k = static_cast<std::size_t>(hi - t.x.begin());
  const double w = (x - t.x[k - 1]) / (t.x[k] - t.x[k - 1]);
  return (1.0 - w) * t.v[k - 1] + w * t.v[k];
}

}  // namespace

void validate(const PotentialModel& model) {
  std::visit(overloaded{
                 [](const Harmonic& h) {
                   require_positive(h.mass, "mass");
                   require_positive(h.omega, "omega");
                 },
                 [](const Morse& m) {
                   require_positive(m.mass, "mass");
                   require_positive(m.depth, "depth");
                   require_positive(m.steepness, "steepness");
                 },
                 [](const Coulomb& c) {
                   require_positive(c.mass, "mass");
                   require_positive(c.charge, "charge");
                   if (!(c.core_offset >= 0.0) || !std::isfinite(c.core_offset))
                     throw InvalidArgument("core_offset", "must be finite and >= 0");
                 },
                 [](const Tabulated& t) {
                   require_positive(t.mass, "mass");
                   if (t.x.size() < 2 || t.x.size() != t.v.size())
                     throw InvalidArgument("table", "needs at least two (x, V) rows");
                   for (std::size_t i = 1; i < t.x.size(); ++i)
                     if (!(t.x[i] > t.x[i - 1]))
                       throw InvalidArgument("table", "x column must be strictly increasing");
                 },
             },
             model);
}

double mass_of(const PotentialModel& model) {
  return std::visit([](const auto& m) { return m.mass; }, model);
}

std::string kind_name(const PotentialModel& model) {
  return std::visit(overloaded{
                        [](const Harmonic&) { return std::string("harmonic"); },
                        [](const Morse&) { return std::string("morse"); },
                        [](const Coulomb&) { return std::string("coulomb"); },
                        [](const Tabulated&) { return std::string("tabulated"); },
                    },
                    model);
}

PotentialModel free_particle(double mass) { return Tabulated{{0.0, 1.0}, {0.0, 0.0}, mass}; }

double eval_potential(const PotentialModel& model, double x) {
  return std::visit(
      overloaded{
          [x](const Harmonic& h) { return 0.5 * h.mass * h.omega * h.omega * x * x; },
          [x](const Morse& m) {
            const double s = 1.0 - std::exp(-m.steepness * x);
            return m.depth * s * s;
          },
          [x](const Coulomb& c) {
            const double r = std::abs(x) + c.core_offset;
            if (r == 0.0) throw SingularPotential("Coulomb potential is singular at x = 0", -1, x);
            return -c.charge * c.charge / r;
          },
          [x](const Tabulated& t) { return interpolate(t, x); },
      },
      model);
}

double classical_energy(const PotentialModel& model, PhasePoint point) {
  return point.p * point.p / (2.0 * mass_of(model)) + eval_potential(model, point.x);
}

int morse_bound_count(const Morse& morse, double hbar) {
  const double lambda = std::sqrt(2.0 * morse.mass * morse.depth) / (morse.steepness * hbar);
  return static_cast<int>(std::floor(lambda - 0.5)) + 1;
}

std::vector<double> analytic_levels(const PotentialModel& model, double hbar, int count) {
  if (count < 1) throw InvalidArgument("count", "must be at least 1");
  require_positive(hbar, "hbar");
  std::vector<double> levels(static_cast<std::size_t>(count));
  std::visit(overloaded{
                 [&](const Harmonic& h) {
                   for (int n = 0; n < count; ++n) levels[n] = hbar * h.omega * (n + 0.5);
                 },
                 [&](const Morse& m) {
                   const int bound = morse_bound_count(m, hbar);
                   if (count > bound)
                     throw DomainError("requested " + std::to_string(count) +
                                       " Morse levels but only " + std::to_string(bound) +
                                       " are bound");
                   for (int n = 0; n < count; ++n) levels[n] = morse_level(m, hbar, n);
                 },
                 [&](const Coulomb& c) {
                   const double scale = coulomb_scale(c, hbar);
                   for (int n = 1; n <= count; ++n) levels[n - 1] = -scale / (double(n) * n);
                 },
                 [](const Tabulated&) {
                   throw NotImplemented("tabulated potentials have no analytic spectrum");
                 },
             },
             model);
  return levels;
}

int count_states_below(const PotentialModel& model, double hbar, double e_cut) {
  require_positive(hbar, "hbar");
  return std::visit(
      overloaded{
          [&](const Harmonic& h) {
            const double quantum = hbar * h.omega;
            if (e_cut <= 0.5 * quantum) return 0;
            // Start from the closed form and correct by direct comparison.
            const double guess = std::ceil(e_cut / quantum - 0.5);
            if (guess > std::numeric_limits<int>::max() / 2)
              throw DomainError("harmonic state count overflows");
            int k = static_cast<int>(guess);
            while (k > 0 && hbar * h.omega * (k - 1 + 0.5) >= e_cut) --k;
            while (hbar * h.omega * (k + 0.5) < e_cut) ++k;
            return k;
          },
          [&](const Morse& m) {
            const int bound = morse_bound_count(m, hbar);
            int k = 0;
            while (k < bound && morse_level(m, hbar, k) < e_cut) ++k;
            return k;
          },
          [&](const Coulomb& c) {
            if (e_cut >= 0.0)
              throw DomainError("Coulomb series accumulates at 0; e_cut must be negative");
            const double scale = coulomb_scale(c, hbar);
            const double bound = std::sqrt(scale / -e_cut);
            if (bound > 1e9) throw DomainError("Coulomb state count overflows");
            int k = std::max(0, static_cast<int>(std::ceil(bound)) - 1);
            while (k > 0 && -scale / (double(k) * k) >= e_cut) --k;
            while (-scale / (double(k + 1) * (k + 1)) < e_cut) ++k;
            return k;
          },
          [](const Tabulated&) -> int {
            throw NotImplemented("tabulated potentials have no analytic spectrum");
          },
      },
      model);
}

std::pair<double, double> turning_points(const PotentialModel& model, double energy) {
  if (!(energy > 0.0)) throw DomainError("shell energy must be above the potential minimum 0");
  return std::visit(
      overloaded{
          [&](const Harmonic& h) {
            const double r = std::sqrt(2.0 * energy / (h.mass * h.omega * h.omega));
            return std::pair{-r, r};
          },
          [&](const Morse& m) {
            if (energy >= m.depth) throw DomainError("Morse shell at or above dissociation");
            const double s = std::sqrt(energy / m.depth);
            return std::pair{-std::log1p(s) / m.steepness, -std::log1p(-s) / m.steepness};
          },
          [](const auto&) -> std::pair<double, double> {
            throw NotImplemented("turning points are available for harmonic and Morse only");
          },
      },
      model);
}

double shell_area(const PotentialModel& model, double energy) {
  const auto [lo, hi] = turning_points(model, energy);
  const double m = mass_of(model);
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double half = integrator.integrate(
      [&](double x) { return std::sqrt(std::max(0.0, 2.0 * m * (energy - eval_potential(model, x)))); },
      lo, hi);
  return 2.0 * half;
}

double rectangle_efficiency_bound(const PotentialModel& model, double energy) {
  const auto [lo, hi] = turning_points(model, energy);
  // Both supported potentials have their minimum V = 0 at x = 0.
  const double p_edge = std::sqrt(2.0 * mass_of(model) * energy);
  return (hi - lo) * 2.0 * p_edge / shell_area(model, energy);
}

}  // namespace pvn
