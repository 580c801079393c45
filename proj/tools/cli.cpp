#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iomanip>

#include "pvn/config.hpp"
#include "pvn/errors.hpp"
#include "pvn/experiment.hpp"

namespace pvn::cli {
namespace {

struct Options {
  std::string config;
  std::string out_dir = ".";
  int tolerance_digits = -1;
  int target = 0;
  bool quiet = false;
};

void print_report(const ExperimentReport& r, std::ostream& out) {
  out << r.config.name << ": method " << to_string(r.config.method) << ", basis " << r.spectrum.basis_size
      << ", residual " << std::scientific << std::setprecision(2) << r.spectrum.residual_max
      << ", overlap condition " << r.spectrum.overlap_condition << "\n";
  if (r.e_cut) out << "  e_cut " << std::setprecision(10) << std::defaultfloat << *r.e_cut << "\n";
  if (r.search && !r.search->warning.empty()) out << "  warning: " << r.search->warning << "\n";
  out << "  level  computed            exact               abs_error  rel_error\n";
  for (const auto& row : r.levels) {
    out << "  " << std::setw(5) << row.level << "  " << std::setw(18) << std::setprecision(12)
        << std::defaultfloat << row.computed << "  ";
    if (std::isnan(row.exact)) {
      out << "\n";
      continue;
    }
    out << std::setw(18) << row.exact << "  " << std::scientific << std::setprecision(2)
        << std::setw(9) << row.abs_error << "  " << std::setw(9) << row.rel_error << "\n";
  }
  out << std::defaultfloat;
  if (!r.levels.empty() && !std::isnan(r.max_rel_error))
    out << "  max abs error " << std::setprecision(3) << r.max_abs_error << ", max rel error "
        << r.max_rel_error << "\n";
  if (r.gate_digits > 0)
    out << "  gate " << r.gate_digits << " digits: " << (r.gate_passed ? "passed" : "FAILED") << "\n";
  out << "  " << std::setprecision(3) << r.seconds << " s\n";
}

int solve(const Options& o, std::ostream& out) {
  const ExperimentConfig config = load_config(o.config);
  const ExperimentReport report = run_experiment(config, o.tolerance_digits);
  const auto paths = write_report(report, o.out_dir);
  if (!o.quiet) {
    print_report(report, out);
    for (const auto& p : paths) out << "  wrote " << p.string() << "\n";
  }
  return report.gate_passed ? kSuccess : kGateFailure;
}

int find(const Options& o, std::ostream& out) {
  const ExperimentConfig config = load_config(o.config);
  const EcutSearch s = find_ecut(config, o.target);
  out << std::setprecision(17) << "e_cut " << s.e_cut << "\nachieved " << s.achieved << "\n";
  if (!o.quiet && !s.warning.empty()) out << "warning: " << s.warning << "\n";
  return kSuccess;
}

int sweep(const Options& o, std::ostream& out) {
  const ExperimentConfig config = load_config(o.config);
  const SweepResult result = sweep_hbar(config, o.tolerance_digits);
  const auto paths = write_sweep(result, config, o.out_dir);
  bool all_ok = true;
  if (!o.quiet) {
    out << "shell E = " << result.e_shell << ", gate " << result.tolerance_digits
        << " digits, rectangle bound " << std::setprecision(6) << result.rectangle_bound << "\n";
    out << "  hbar      states  bvn_size  eta_bvn   fgh_size  eta_fgh\n";
  }
  for (const auto& p : result.points) {
    all_ok = all_ok && p.ok;
    if (o.quiet) continue;
    out << "  " << std::left << std::setw(9) << p.bvn.hbar << " " << std::right << std::setw(6)
        << p.bvn.states_below_cut << "  " << std::setw(8) << p.bvn.basis_size << "  "
        << std::setw(8) << std::setprecision(5) << p.bvn.eta << "  " << std::setw(8)
        << p.fgh.basis_size << "  " << std::setw(7) << p.fgh.eta;
    if (!p.ok) out << "  FAILED: " << p.failure;
    out << "\n";
  }
  if (!o.quiet)
    for (const auto& p : paths) out << "  wrote " << p.string() << "\n";
  return all_ok ? kSuccess : kGateFailure;
}

int phase_mask(const Options& o, std::ostream& out) {
  const ExperimentConfig config = load_config(o.config);
  const auto rows = emit_phase_mask(config);
  const auto path = std::filesystem::path(o.out_dir) / config.report.mask_file;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path);
  file << phase_mask_table(rows);
  if (!file) throw Error("cannot write '" + path.string() + "'");
  if (!o.quiet) {
    const auto kept = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.kept; });
    out << kept << " of " << rows.size() << " cells kept\n  wrote " << path.string() << "\n";
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic and bi-orthogonal von Neumann basis benchmarks", "pvn-bench"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--out-dir", o.out_dir, "Directory for result files")->capture_default_str();
  app.add_option("--tolerance-digits", o.tolerance_digits,
                 "Accuracy gate in significant digits (overrides the config)")
      ->check(CLI::Range(0, 15));
  app.add_flag("--quiet,-q", o.quiet, "Suppress the summary on stdout");

  auto* solve_cmd = app.add_subcommand("solve", "Solve one experiment and write its report");
  solve_cmd->add_option("config", o.config, "Experiment config (INI)")->required();
  auto* find_cmd = app.add_subcommand("find-ecut", "Find the e_cut that keeps a target cell count");
  find_cmd->add_option("config", o.config, "Experiment config (INI)")->required();
  find_cmd->add_option("--target", o.target, "Number of cells to keep")->required();
  auto* sweep_cmd = app.add_subcommand("sweep-hbar", "Run the basis-efficiency sweep over hbar");
  sweep_cmd->add_option("config", o.config, "Sweep config (INI)")->required();
  auto* mask_cmd = app.add_subcommand("phase-mask", "Write the kept/dropped flag of every cell");
  mask_cmd->add_option("config", o.config, "Experiment config (INI)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*solve_cmd) return solve(o, out);
    if (*find_cmd) return find(o, out);
    if (*sweep_cmd) return sweep(o, out);
    return phase_mask(o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NotImplemented& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace pvn::cli
