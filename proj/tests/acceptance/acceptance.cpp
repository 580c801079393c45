// Acceptance suite: one PASS/FAIL line per criterion, measured value and
// pinned tolerance included. `pvn-acceptance [criterion ...]` runs a subset.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pvn/config.hpp"
#include "pvn/eigensolve.hpp"
#include "pvn/errors.hpp"
#include "pvn/experiment.hpp"
#include "pvn/fgh.hpp"
#include "pvn/vn_basis.hpp"
#include "support.hpp"

using namespace pvn;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checks {
 public:
  /// Records `measured <= limit` (or the given flag) with a printable description.
  void at_most(const std::string& what, double measured, double limit) {
    add(measured <= limit, what + " " + sci(measured) + " <= " + sci(limit));
  }
  void holds(const std::string& what, bool ok) { add(ok, what); }
  Outcome outcome() const { return {pass_, detail_.str()}; }

  static std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }

 private:
  void add(bool ok, const std::string& text) {
    pass_ = pass_ && ok;
    detail_ << (first_ ? "" : "; ") << (ok ? "" : "[x] ") << text;
    first_ = false;
  }
  bool pass_ = true;
  bool first_ = true;
  std::ostringstream detail_;
};

double max_rel_dev(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return support::max_rel_diff(a.head(b.size()), b);
}

double max_abs_error(const ExperimentReport& r, int count) {
  double worst = 0.0;
  for (int i = 0; i < count; ++i) worst = std::max(worst, r.levels.at(i).abs_error);
  return worst;
}

Outcome pvn_fgh_equivalence(Checks& c) {
  const auto fgh = run_experiment(support::load_preset("harmonic-fgh"));
  const auto pvn = run_experiment(support::load_preset("harmonic-pvn"));
  c.holds("16 eigenvalues", pvn.spectrum.eigenvalues.size() == 16);
  c.at_most("max rel dev pvN vs FGH", max_rel_dev(pvn.spectrum.eigenvalues, fgh.spectrum.eigenvalues),
            1e-8);
  return c.outcome();
}

Outcome bvn_fgh_equivalence(Checks& c) {
  const auto fgh = run_experiment(support::load_preset("harmonic-fgh"));
  const auto bvn = run_experiment(support::load_preset("harmonic-bvn"));
  c.holds("all 16 cells kept", bvn.spectrum.basis_size == 16);
  c.at_most("max rel dev bvN vs FGH", max_rel_dev(bvn.spectrum.eigenvalues, fgh.spectrum.eigenvalues),
            1e-6);
  return c.outcome();
}

Outcome harmonic_accuracy(Checks& c) {
  const auto fgh = run_experiment(support::load_preset("harmonic-fgh"));
  const auto pvn = run_experiment(support::load_preset("harmonic-pvn"));
  const auto vn = run_experiment(support::load_preset("harmonic-vn-analytic"));
  c.at_most("FGH max abs error levels 0-3", max_abs_error(fgh, 4), 1e-6);
  c.at_most("pvN max abs error levels 0-3", max_abs_error(pvn, 4), 1e-6);
  bool smaller = true;
  std::ostringstream errs;
  for (int n = 0; n < 8; ++n) {
    errs << (n ? "," : "") << Checks::sci(pvn.levels[n].abs_error) << "/"
         << Checks::sci(vn.levels[n].abs_error);
    if (n >= 4)
      smaller = smaller && fgh.levels[n].abs_error < vn.levels[n].abs_error &&
                pvn.levels[n].abs_error < vn.levels[n].abs_error;
  }
  c.holds("FGH and pvN errors below vn-analytic for levels 4-7 (pvN/vN: " + errs.str() + ")", smaller);
  return c.outcome();
}

Outcome morse_fgh(Checks& c) {
  const auto r = run_experiment(support::load_preset("morse-fgh"));
  c.holds("24 levels", r.levels.size() == 24);
  c.at_most("max abs error", r.max_abs_error, 5e-5);
  return c.outcome();
}

Outcome morse_bvn(Checks& c) {
  const auto r = run_experiment(support::load_preset("morse-bvn"));
  const int kept = r.spectrum.basis_size;
  c.holds("mask " + std::to_string(kept) + " cells (target 48)", r.search && r.search->achieved == 48);
  c.at_most("max abs error over 24 levels", r.max_abs_error, 5e-5);
  return c.outcome();
}

Outcome coulomb_fgh(Checks& c) {
  const auto r = run_experiment(support::load_preset("coulomb-fgh"));
  c.holds("9 levels", r.levels.size() == 9);
  c.at_most("max rel error vs -2/n^2", r.max_rel_error, 5e-5);
  return c.outcome();
}

Outcome coulomb_bvn(Checks& c) {
  const auto r = run_experiment(support::load_preset("coulomb-bvn"));
  c.holds("mask " + std::to_string(r.spectrum.basis_size) + " cells (target 189)",
          r.spectrum.basis_size == 189);
  c.at_most("max rel error vs -2/n^2", r.max_rel_error, 5e-5);
  return c.outcome();
}

Outcome efficiency_trend(Checks& c) {
  const auto base = support::load_preset("morse-sweep");
  const SweepResult r = sweep_hbar(base, 4);
  std::ostringstream curve;
  bool all_ok = true;
  bool decreasing = true;
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const SweepPoint& p = r.points[i];
    curve << (i ? " " : "") << Checks::sci(p.bvn.hbar) << ":" << Checks::sci(p.bvn.eta) << "/"
          << Checks::sci(p.fgh.eta);
    all_ok = all_ok && p.ok;
    if (i > 0) decreasing = decreasing && p.bvn.eta < r.points[i - 1].bvn.eta;
  }
  c.holds(std::to_string(r.points.size()) + " hbar values, all gated at 4 digits (hbar:eta_bvN/eta_FGH " +
              curve.str() + ")",
          r.points.size() >= 4 && all_ok);
  c.holds("eta_bvN strictly decreasing", decreasing);
  const SweepPoint& last = r.points.back();
  c.at_most("final eta_bvN", last.bvn.eta, 1.15);
  c.at_most("|eta_FGH / " + Checks::sci(r.rectangle_bound) + " - 1| at smallest hbar",
            std::abs(last.fgh.eta / r.rectangle_bound - 1.0), 0.10);
  c.at_most("|rectangle bound - 1.6959|", std::abs(r.rectangle_bound - 1.6959), 5e-5);
  return c.outcome();
}

Outcome property_suites(Checks& c) {
  auto cases = support::random_instances();
  cases.insert(cases.begin(), support::harmonic_instance());
  double biorth = 0.0, recon = 0.0, psd = 0.0, toeplitz = 0.0, scale = 0.0;
  bool monotone = true;
  std::mt19937 rng(11);
  std::normal_distribution<double> normal;
  for (const auto& inst : cases) {
    const auto basis = build_basis(inst.lattice);
    const int n = inst.grid.n_points();
    biorth = std::max(biorth, support::max_abs(basis.G.adjoint() * basis.B -
                                               Eigen::MatrixXcd::Identity(n, n)));
    Eigen::VectorXcd psi(n);
    for (auto& v : psi) v = {normal(rng), normal(rng)};
    recon = std::max(recon, (basis.B * (basis.G.adjoint() * psi) - psi).cwiseAbs().maxCoeff() /
                                psi.cwiseAbs().maxCoeff());

    const Eigen::MatrixXd t = kinetic_matrix(inst.grid, mass_of(inst.model));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
    psd = std::max(psd, -es.eigenvalues().minCoeff() / es.eigenvalues().maxCoeff());
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) toeplitz = std::max(toeplitz, std::abs(t(i, j) - t(i - 1, j - 1)));
    toeplitz = std::max(toeplitz, (t - t.transpose()).cwiseAbs().maxCoeff());

    const auto tiers = mask_tiers(inst.lattice, inst.model);
    std::vector<int> previous;
    for (double e_cut : tiers.e_cuts) {
      const auto kept = prune_mask(inst.lattice, inst.model, e_cut).kept;
      monotone = monotone && std::includes(kept.begin(), kept.end(), previous.begin(), previous.end()) &&
                 kept.size() > previous.size();
      previous = kept;
    }

    const Eigen::MatrixXd h = fgh_hamiltonian(inst.grid, inst.model).matrix();
    const auto p = pvn_hamiltonian(basis.G, h);
    const Eigen::VectorXd e0 = generalized_hermitian_eig(p.H, p.s).eigenvalues;
    for (std::complex<double> f : {std::complex<double>(5.0, 0.0), std::complex<double>(0.2, -0.7)}) {
      const auto q = pvn_hamiltonian(f * basis.G, h);
      scale = std::max(scale, support::max_rel_diff(generalized_hermitian_eig(q.H, q.s).eigenvalues, e0));
    }
  }
  c.at_most("|G^H B - I|_max", biorth, 1e-8);
  c.at_most("|B G^H psi - psi|_inf / |psi|_inf", recon, 1e-8);
  c.at_most("kinetic -lambda_min / lambda_max", psd, 1e-12);
  c.at_most("kinetic Toeplitz/symmetry defect", toeplitz, 0.0);
  c.holds("pruning masks nested and growing over all tiers", monotone);
  c.at_most("spectrum change under G -> cG", scale, 1e-10);
  return c.outcome();
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome(Checks&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "pvN-FGH equivalence, harmonic 4x4", 1.0, pvn_fgh_equivalence},
      {2, "full-basis bvN equivalence, harmonic 4x4", 1.0, bvn_fgh_equivalence},
      {3, "harmonic accuracy vs conventional vN", 1.0, harmonic_accuracy},
      {4, "Morse FGH baseline, N=100", 1.0, morse_fgh},
      {5, "Morse bvN pruning, 48 cells", 1.0, morse_bvn},
      {6, "Coulomb FGH baseline, N=1599", 30.0, coulomb_fgh},
      {7, "Coulomb bvN pruning, 189 cells", 5.0, coulomb_bvn},
      {8, "efficiency trend, Morse shell E=11.25", 300.0, efficiency_trend},
      {9, "property suites, harmonic + 5 random", 10.0, property_suites},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    try {
      selected.push_back(std::stoi(argv[i]));
    } catch (const std::exception&) {
      std::cerr << "usage: pvn-acceptance [criterion ...]\n";
      return 2;
    }
  }
  int failures = 0;
  for (const auto& crit : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), crit.id) == selected.end())
      continue;
    Checks checks;
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      outcome = crit.run(checks);
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < crit.budget_seconds;
    const bool pass = outcome.pass && in_time;
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << crit.id << ". " << crit.name << ": "
              << outcome.detail << "; " << (in_time ? "" : "[x] ") << "runtime "
              << Checks::sci(seconds) << " s < " << crit.budget_seconds << " s" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
