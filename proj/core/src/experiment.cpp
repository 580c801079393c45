#include "pvn/experiment.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "pvn/eigensolve.hpp"
#include "pvn/errors.hpp"
#include "pvn/fgh.hpp"

namespace pvn {
namespace {

using json = nlohmann::json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string number(double value) {
  if (std::isnan(value)) return {};
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

json real_or_null(double value) { return std::isnan(value) ? json(nullptr) : json(value); }

double real_from(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

bool same_real(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

double max_of(const std::vector<LevelRow>& rows, double LevelRow::*field) {
  double out = kNaN;
  for (const auto& r : rows)
    if (!std::isnan(r.*field)) out = std::isnan(out) ? r.*field : std::max(out, r.*field);
  return out;
}

bool gate_passes(double max_rel_error, int digits) {
  return !std::isnan(max_rel_error) && max_rel_error <= std::pow(10.0, -digits);
}

std::filesystem::path under(const std::filesystem::path& dir, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() ? p : dir / p;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::vector<PhaseMaskRow> mask_rows(const PruneMask& mask) {
  std::vector<PhaseMaskRow> rows(static_cast<std::size_t>(mask.lattice.size()));
  for (int m = 0; m < mask.lattice.size(); ++m) {
    const PhasePoint c = cell_center(mask.lattice, m);
    rows[m] = {m, c.x, c.p, false};
  }
  for (int k : mask.kept) rows[k].kept = true;
  return rows;
}

}  // namespace

std::vector<LevelRow> compare_levels(const Eigen::VectorXd& eigenvalues,
                                     const PotentialModel& model, double hbar, int n_levels,
                                     Pairing pairing) {
  if (n_levels <= 0) return {};
  if (eigenvalues.size() == 0) throw NumericalFailure("no eigenvalues to compare");
  if (pairing == Pairing::ordered && eigenvalues.size() < n_levels)
    throw NumericalFailure("only " + std::to_string(eigenvalues.size()) +
                           " eigenvalues for " + std::to_string(n_levels) + " levels");
  const auto exact = analytic_levels(model, hbar, n_levels);
  std::vector<LevelRow> rows(static_cast<std::size_t>(n_levels));
  for (int i = 0; i < n_levels; ++i) {
    double computed = 0.0;
    if (pairing == Pairing::ordered) {
      computed = eigenvalues[i];
    } else {
      Eigen::Index best = 0;
      (eigenvalues.array() - exact[i]).abs().minCoeff(&best);
      computed = eigenvalues[best];
    }
    const double err = std::abs(computed - exact[i]);
    rows[i] = {i, computed, exact[i], err, err / std::abs(exact[i])};
  }
  return rows;
}

MaskTiers mask_tiers(const VnLatticeSpec& lattice, const PotentialModel& model, double margin) {
  auto energies = center_energies(lattice, model);
  std::sort(energies.begin(), energies.end());
  const auto tol = [](double e) { return kEnergyTierTolerance * std::max(1.0, std::abs(e)); };
  MaskTiers tiers;
  const std::size_t n = energies.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool last = i + 1 == n;
    if (!last && energies[i + 1] - energies[i] <= tol(energies[i])) continue;
    tiers.counts.push_back(static_cast<int>(i + 1));
    const double cut = last ? energies[i] + tol(energies[i]) : 0.5 * (energies[i] + energies[i + 1]);
    tiers.e_cuts.push_back(cut - margin);
  }
  return tiers;
}

EcutSearch find_ecut(const VnLatticeSpec& lattice, const PotentialModel& model, int target_count,
                     double margin) {
  if (target_count < 1 || target_count > lattice.size())
    throw InvalidArgument("target_count", "must lie in [1, " + std::to_string(lattice.size()) + "]");
  const MaskTiers tiers = mask_tiers(lattice, model, margin);
  const auto& counts = tiers.counts;
  const auto upper = static_cast<std::size_t>(
      std::lower_bound(counts.begin(), counts.end(), target_count) - counts.begin());

  std::size_t chosen = upper;
  if (counts[upper] != target_count && upper > 0 &&
      target_count - counts[upper - 1] < counts[upper] - target_count)
    chosen = upper - 1;

  EcutSearch out;
  out.target = target_count;
  out.e_cut = tiers.e_cuts[chosen];
  out.achieved = counts[chosen];
  const std::size_t lo = upper >= 2 ? upper - 2 : 0;
  const std::size_t hi = std::min(counts.size(), upper + (counts[upper] == target_count ? 3 : 2));
  for (std::size_t t = lo; t < hi; ++t)
    if (counts[t] != target_count) out.neighbor_counts.push_back(counts[t]);
  if (!out.exact()) {
    std::ostringstream w;
    w << "no e_cut keeps exactly " << target_count << " cells; nearest achievable counts:";
    for (int c : out.neighbor_counts) w << ' ' << c;
    w << "; using " << out.achieved;
    out.warning = w.str();
  }

  const int check = prune_mask(lattice, model, out.e_cut, margin).size();
  if (check != out.achieved)
    throw NumericalFailure("e_cut " + number(out.e_cut) + " keeps " + std::to_string(check) +
                           " cells, expected " + std::to_string(out.achieved));
  return out;
}

EcutSearch find_ecut(const ExperimentConfig& config, int target_count) {
  return find_ecut(lattice_of(config), config.potential, target_count, config.prune.margin);
}

ResolvedMask resolve_mask(const ExperimentConfig& config) {
  if (config.method != Method::bvn)
    throw ConfigError("experiment.method", "a phase mask needs the bvn method");
  const VnLatticeSpec lattice = lattice_of(config);
  if (config.prune.e_cut)
    return {prune_mask(lattice, config.potential, *config.prune.e_cut, config.prune.margin),
            std::nullopt};
  if (!config.prune.target_count) throw ConfigError("prune", "bvn needs e_cut or target_count");
  EcutSearch search = find_ecut(lattice, config.potential, *config.prune.target_count,
                                config.prune.margin);
  PruneMask mask = prune_mask(lattice, config.potential, search.e_cut, config.prune.margin);
  return {std::move(mask), std::move(search)};
}

ExperimentReport run_experiment(const ExperimentConfig& config, int tolerance_digits) {
  const auto start = std::chrono::steady_clock::now();
  validate_config(config);
  if (config.sweep) throw ConfigError("sweep", "sweep configs run through sweep_hbar");

  ExperimentReport report;
  report.config = config;
  const GridSpec grid = grid_of(config);

  switch (config.method) {
    case Method::fgh:
      report.spectrum = solve_fgh(fgh_hamiltonian(grid, config.potential), grid.n_points());
      break;
    case Method::bvn: {
      ResolvedMask resolved = resolve_mask(config);
      report.e_cut = resolved.mask.e_cut;
      report.search = std::move(resolved.search);
      report.spectrum = solve_method(grid, lattice_of(config), config.potential, Method::bvn,
                                     std::move(resolved.mask));
      break;
    }
    default:
      report.spectrum = solve_method(grid, lattice_of(config), config.potential, config.method);
  }

  const auto& eig = report.spectrum.eigenvalues;
  if (config.report.oracle) {
    report.levels = compare_levels(eig, config.potential, grid.hbar(), config.report.n_levels,
                                   config.report.pairing);
  } else {
    const auto n = config.report.n_levels > 0
                       ? std::min<Eigen::Index>(config.report.n_levels, eig.size())
                       : eig.size();
    for (Eigen::Index i = 0; i < n; ++i)
      report.levels.push_back({static_cast<int>(i), eig[i], kNaN, kNaN, kNaN});
  }
  report.max_abs_error = max_of(report.levels, &LevelRow::abs_error);
  report.max_rel_error = max_of(report.levels, &LevelRow::rel_error);

  report.gate_digits = tolerance_digits >= 0 ? tolerance_digits : config.report.tolerance_digits;
  if (!config.report.oracle) report.gate_digits = 0;
  report.gate_passed = report.gate_digits == 0 || gate_passes(report.max_rel_error, report.gate_digits);
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string result_document(const ExperimentReport& r) {
  const ExperimentConfig& c = r.config;
  json doc;
  doc["format"] = "pvn-result-1";
  doc["name"] = c.name;
  doc["method"] = to_string(c.method);
  doc["potential"] = kind_name(c.potential);
  doc["hbar"] = c.grid.hbar;
  doc["n_points"] = c.grid.n_points;
  doc["basis_size"] = r.spectrum.basis_size;
  doc["residual_max"] = r.spectrum.residual_max;
  doc["overlap_condition"] = r.spectrum.overlap_condition;
  doc["rank_deficient"] = r.spectrum.rank_deficient;
  doc["used_fallback"] = r.spectrum.used_fallback;
  if (r.e_cut) {
    json prune{{"e_cut", *r.e_cut}, {"margin", c.prune.margin}, {"kept", r.spectrum.basis_size}};
    if (r.search) {
      prune["target_count"] = r.search->target;
      prune["achieved_count"] = r.search->achieved;
      prune["neighbor_counts"] = r.search->neighbor_counts;
      prune["warning"] = r.search->warning;
    }
    doc["prune"] = prune;
  } else {
    doc["prune"] = nullptr;
  }
  doc["oracle"] = c.report.oracle;
  doc["pairing"] = to_string(c.report.pairing);
  doc["n_levels"] = c.report.n_levels;
  json levels = json::array();
  for (const auto& row : r.levels)
    levels.push_back({{"level", row.level},
                      {"computed", row.computed},
                      {"exact", real_or_null(row.exact)},
                      {"abs_error", real_or_null(row.abs_error)},
                      {"rel_error", real_or_null(row.rel_error)}});
  doc["levels"] = levels;
  doc["max_abs_error"] = real_or_null(r.max_abs_error);
  doc["max_rel_error"] = real_or_null(r.max_rel_error);
  doc["gate"] = {{"digits", r.gate_digits}, {"passed", r.gate_passed}};
  doc["eigenvalues"] = std::vector<double>(r.spectrum.eigenvalues.begin(), r.spectrum.eigenvalues.end());
  doc["seconds"] = r.seconds;
  doc["config"] = render_config(c);
  doc["base_dir"] = c.base_dir.string();
  return doc.dump(2) + "\n";
}

std::string level_table(const ExperimentReport& report) {
  std::ostringstream out;
  out << "level,computed,exact,abs_error,rel_error\n";
  for (const auto& r : report.levels)
    out << r.level << ',' << number(r.computed) << ',' << number(r.exact) << ','
        << number(r.abs_error) << ',' << number(r.rel_error) << '\n';
  return out.str();
}

std::vector<std::string> verify_result_document(std::string_view json_text) {
  std::vector<std::string> diffs;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    return {std::string("document: ") + e.what()};
  }
  try {
    const ExperimentConfig c =
        parse_config(doc.at("config").get<std::string>(), doc.at("base_dir").get<std::string>());
    const auto stored_eig = doc.at("eigenvalues").get<std::vector<double>>();
    const Eigen::VectorXd eig = Eigen::Map<const Eigen::VectorXd>(
        stored_eig.data(), static_cast<Eigen::Index>(stored_eig.size()));
    const auto& levels = doc.at("levels");

    std::vector<LevelRow> expected;
    if (c.report.oracle) {
      expected = compare_levels(eig, c.potential, c.grid.hbar, c.report.n_levels, c.report.pairing);
    } else {
      for (std::size_t i = 0; i < levels.size(); ++i)
        expected.push_back({static_cast<int>(i), i < stored_eig.size() ? stored_eig[i] : kNaN, kNaN,
                            kNaN, kNaN});
    }
    if (levels.size() != expected.size())
      diffs.push_back("levels: " + std::to_string(levels.size()) + " rows stored, " +
                      std::to_string(expected.size()) + " expected");
    for (std::size_t i = 0; i < std::min(levels.size(), expected.size()); ++i) {
      const auto& row = levels[i];
      const LevelRow& e = expected[i];
      const auto check = [&](const char* key, double want) {
        const double got = real_from(row.at(key));
        if (!same_real(got, want))
          diffs.push_back("levels[" + std::to_string(i) + "]." + key + ": stored " + number(got) +
                          ", recomputed " + number(want));
      };
      if (row.at("level").get<int>() != e.level)
        diffs.push_back("levels[" + std::to_string(i) + "].level");
      check("computed", e.computed);
      check("exact", e.exact);
      check("abs_error", e.abs_error);
      check("rel_error", e.rel_error);
    }
    const double max_abs = max_of(expected, &LevelRow::abs_error);
    const double max_rel = max_of(expected, &LevelRow::rel_error);
    if (!same_real(real_from(doc.at("max_abs_error")), max_abs)) diffs.push_back("max_abs_error");
    if (!same_real(real_from(doc.at("max_rel_error")), max_rel)) diffs.push_back("max_rel_error");
    const int digits = doc.at("gate").at("digits").get<int>();
    const bool passed = digits == 0 || gate_passes(max_rel, digits);
    if (doc.at("gate").at("passed").get<bool>() != passed) diffs.push_back("gate.passed");
  } catch (const json::exception& e) {
    diffs.push_back(std::string("document: ") + e.what());
  } catch (const Error& e) {
    diffs.push_back(std::string("oracle: ") + e.what());
  }
  return diffs;
}

std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> paths{under(out_dir, report.config.report.result_file),
                                           under(out_dir, report.config.report.table_file)};
  write_file(paths[0], result_document(report));
  write_file(paths[1], level_table(report));
  if (report.config.method == Method::bvn) {
    paths.push_back(under(out_dir, report.config.report.mask_file));
    write_file(paths.back(), phase_mask_table(emit_phase_mask(report.config)));
  }
  return paths;
}

std::vector<PhaseMaskRow> emit_phase_mask(const ExperimentConfig& config) {
  return mask_rows(resolve_mask(config).mask);
}

std::string phase_mask_table(std::span<const PhaseMaskRow> rows) {
  std::ostringstream out;
  out << "cell_index,x_center,p_center,kept\n";
  for (const auto& r : rows)
    out << r.cell_index << ',' << number(r.x_center) << ',' << number(r.p_center) << ','
        << (r.kept ? 1 : 0) << '\n';
  return out.str();
}

ExperimentConfig sweep_point_config(const ExperimentConfig& base, double hbar) {
  if (!base.sweep) throw ConfigError("sweep", "missing required section");
  if (!(hbar > 0.0)) throw ConfigError("sweep.hbar_values", "values must be positive");
  const SweepBlock& s = *base.sweep;
  const double scale = std::pow(hbar, s.margin_exponent);
  const auto [lo, hi] = turning_points(base.potential, s.e_shell);
  const double x_min = lo - s.margin_x_low * scale;
  const double length = hi + s.margin_x_high * scale - x_min;
  const double p_edge = std::sqrt(2.0 * mass_of(base.potential) * s.e_shell) + s.margin_p * scale;
  const double n_min = length * p_edge / (std::numbers::pi * hbar);
  const int n_x = std::max(1, static_cast<int>(std::ceil(std::sqrt(n_min))));
  const int n_p = std::max(2, static_cast<int>(std::ceil(n_min / n_x)));

  ExperimentConfig c;
  std::ostringstream name;
  name << base.name << "-hbar-" << number(hbar);
  c.name = name.str();
  c.method = Method::bvn;
  c.grid = {x_min, length, n_x * n_p, hbar};
  c.lattice = LatticeBlock{n_x, n_p, std::nullopt};
  if (s.alpha_rule == "symmetric") {
    const double a = length / n_x;
    c.lattice->alpha = std::numbers::pi / (a * a);
  } else if (s.alpha_rule != "default") {
    c.lattice->alpha = std::stod(s.alpha_rule);
  }
  c.potential = base.potential;
  c.potential_table = base.potential_table;
  c.prune.margin = base.prune.margin;
  c.prune.target_count = c.grid.n_points;
  c.report.n_levels = std::max(1, count_states_below(base.potential, hbar, s.e_shell));
  c.report.oracle = true;
  c.report.pairing = Pairing::ordered;
  c.report.tolerance_digits = s.tolerance_digits;
  c.report.result_file = c.name + ".json";
  c.report.table_file = c.name + ".csv";
  c.report.mask_file = c.name + "-mask.csv";
  c.base_dir = base.base_dir;
  return c;
}

SweepResult sweep_hbar(const ExperimentConfig& base, std::span<const double> hbar_values,
                       double e_shell, int tolerance_digits) {
  if (!base.sweep) throw ConfigError("sweep", "missing required section");
  ExperimentConfig shell_base = base;
  shell_base.sweep->e_shell = e_shell;
  const int digits = tolerance_digits >= 0 ? tolerance_digits : base.sweep->tolerance_digits;
  const double tolerance = std::pow(10.0, -digits);

  SweepResult result;
  result.e_shell = e_shell;
  result.tolerance_digits = digits;
  result.rectangle_bound = rectangle_efficiency_bound(base.potential, e_shell);
  std::ostringstream box;
  box << "box per hbar: turning points of the shell widened by (" << number(base.sweep->margin_x_low)
      << ", " << number(base.sweep->margin_x_high) << ") * hbar^" << number(base.sweep->margin_exponent)
      << " in x and sqrt(2 m E) + " << number(base.sweep->margin_p) << " * hbar^"
      << number(base.sweep->margin_exponent) << " in p; N = n_x n_p covers L P / (pi hbar)";
  result.assumptions = {
      "the hbar values and the per-hbar grids are choices of this preset, not reference data",
      box.str(),
      "alpha rule: " + base.sweep->alpha_rule,
      "gate: relative error <= 1e-" + std::to_string(digits) +
          " on every analytic level below the shell",
      "bvN masks are energy thresholds on cell centers; the smallest passing threshold is found "
      "by bisection over achievable mask sizes",
      "eta = basis_size / states_below_cut",
  };

  for (double hbar : hbar_values) {
    SweepPoint point;
    point.bvn.hbar = point.fgh.hbar = hbar;
    try {
      const int count = count_states_below(base.potential, hbar, e_shell);
      point.bvn.states_below_cut = point.fgh.states_below_cut = count;
      if (count < 1) throw DomainError("no analytic level lies below the shell");
      ExperimentConfig cfg = sweep_point_config(shell_base, hbar);
      point.config_text = render_config(cfg);
      const GridSpec grid = grid_of(cfg);
      const VnLatticeSpec lattice = lattice_of(cfg);
      const auto exact = analytic_levels(base.potential, hbar, count);
      const auto max_rel = [&](const Eigen::VectorXd& eig) {
        if (eig.size() < count) return std::numeric_limits<double>::infinity();
        double worst = 0.0;
        for (int i = 0; i < count; ++i)
          worst = std::max(worst, std::abs(eig[i] - exact[i]) / std::abs(exact[i]));
        return worst;
      };

      const GridHamiltonian h = fgh_hamiltonian(grid, base.potential);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> fgh(h.matrix(), Eigen::EigenvaluesOnly);
      if (fgh.info() != Eigen::Success) throw NumericalFailure("FGH eigensolver did not converge");
      point.fgh.basis_size = grid.n_points();
      point.fgh.eta = double(grid.n_points()) / count;
      point.fgh_max_rel_error = max_rel(fgh.eigenvalues());

      const BvnReducer reducer(gaussian_samples(lattice), h.matrix());
      point.overlap_condition = reducer.overlap_condition();
      const MaskTiers tiers = mask_tiers(lattice, base.potential, cfg.prune.margin);
      std::map<std::size_t, double> errors;
      const auto error_at = [&](std::size_t t) {
        if (const auto it = errors.find(t); it != errors.end()) return it->second;
        const PruneMask mask = prune_mask(lattice, base.potential, tiers.e_cuts[t], cfg.prune.margin);
        const auto pencil = reducer.restricted(mask.kept);
        const double err = max_rel(generalized_hermitian_eig(pencil.H, pencil.s).eigenvalues);
        errors[t] = err;
        return err;
      };

      std::size_t lo = static_cast<std::size_t>(
          std::lower_bound(tiers.counts.begin(), tiers.counts.end(), count) - tiers.counts.begin());
      std::size_t hi = tiers.counts.size() - 1;
      if (!(error_at(hi) <= tolerance)) {
        point.bvn_max_rel_error = error_at(hi);
        throw NumericalFailure("accuracy gate not reached with all " +
                               std::to_string(grid.n_points()) + " cells (max relative error " +
                               number(error_at(hi)) + ")");
      }
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (error_at(mid) <= tolerance) hi = mid;
        else lo = mid + 1;
      }
      point.bvn.basis_size = tiers.counts[hi];
      point.bvn.eta = double(tiers.counts[hi]) / count;
      point.bvn_max_rel_error = error_at(hi);
      point.e_cut = tiers.e_cuts[hi];
      cfg.prune.target_count.reset();
      cfg.prune.e_cut = point.e_cut;
      point.config_text = render_config(cfg);
      point.ok = true;
    } catch (const Error& e) {
      point.failure = e.what();
    }
    result.points.push_back(std::move(point));
  }
  return result;
}

SweepResult sweep_hbar(const ExperimentConfig& base, int tolerance_digits) {
  if (!base.sweep) throw ConfigError("sweep", "missing required section");
  return sweep_hbar(base, base.sweep->hbar_values, base.sweep->e_shell, tolerance_digits);
}

std::string sweep_document(const SweepResult& r) {
  json doc;
  doc["format"] = "pvn-sweep-1";
  doc["e_shell"] = r.e_shell;
  doc["tolerance_digits"] = r.tolerance_digits;
  doc["rectangle_bound"] = r.rectangle_bound;
  doc["assumptions"] = r.assumptions;
  json points = json::array();
  for (const auto& p : r.points) {
    json j;
    j["hbar"] = p.bvn.hbar;
    j["ok"] = p.ok;
    j["failure"] = p.failure;
    j["states_below_cut"] = p.bvn.states_below_cut;
    j["bvn"] = {{"basis_size", p.bvn.basis_size},
                {"eta", p.bvn.eta},
                {"max_rel_error", p.bvn_max_rel_error},
                {"e_cut", p.e_cut}};
    j["fgh"] = {{"basis_size", p.fgh.basis_size},
                {"eta", p.fgh.eta},
                {"max_rel_error", p.fgh_max_rel_error}};
    j["overlap_condition"] = p.overlap_condition;
    j["config"] = p.config_text;
    points.push_back(j);
  }
  doc["points"] = points;
  return doc.dump(2) + "\n";
}

std::string efficiency_table(const SweepResult& result, Method method) {
  std::ostringstream out;
  out << "# hbar eta (" << to_string(method) << ")\n";
  for (const auto& p : result.points) {
    const EfficiencyPoint& e = method == Method::bvn ? p.bvn : p.fgh;
    if (e.basis_size > 0 && (method != Method::bvn || p.ok))
      out << number(e.hbar) << ' ' << number(e.eta) << '\n';
  }
  return out.str();
}

std::vector<std::filesystem::path> write_sweep(const SweepResult& result,
                                               const ExperimentConfig& base,
                                               const std::filesystem::path& out_dir) {
  if (!base.sweep) throw ConfigError("sweep", "missing required section");
  std::vector<std::filesystem::path> paths{
      under(out_dir, base.report.result_file), under(out_dir, base.report.table_file),
      under(out_dir, base.sweep->bvn_file), under(out_dir, base.sweep->fgh_file)};
  write_file(paths[0], sweep_document(result));
  std::ostringstream csv;
  csv << "hbar,states_below_cut,bvn_basis_size,eta_bvn,fgh_basis_size,eta_fgh,bvn_max_rel_error,"
         "fgh_max_rel_error,ok\n";
  for (const auto& p : result.points)
    csv << number(p.bvn.hbar) << ',' << p.bvn.states_below_cut << ',' << p.bvn.basis_size << ','
        << number(p.bvn.eta) << ',' << p.fgh.basis_size << ',' << number(p.fgh.eta) << ','
        << number(p.bvn_max_rel_error) << ',' << number(p.fgh_max_rel_error) << ','
        << (p.ok ? 1 : 0) << '\n';
  write_file(paths[1], csv.str());
  write_file(paths[2], efficiency_table(result, Method::bvn));
  write_file(paths[3], efficiency_table(result, Method::fgh));
  return paths;
}

}  // namespace pvn
