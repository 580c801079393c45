#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pvn/config.hpp"
#include "pvn/spectrum.hpp"
#include "pvn/vn_basis.hpp"

namespace pvn {

/// One reported level. `exact` and the errors are NaN without an oracle.
struct LevelRow {
  int level = 0;
  double computed = 0.0;
  double exact = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
};

/// Pairs computed eigenvalues (ascending) with the lowest n_levels analytic
/// levels. Ordered pairing needs at least n_levels eigenvalues.
std::vector<LevelRow> compare_levels(const Eigen::VectorXd& eigenvalues,
                                     const PotentialModel& model, double hbar, int n_levels,
                                     Pairing pairing);

/// Outcome of the e_cut search. Mask size is a step function of e_cut, so a
/// target between two achievable counts resolves to the nearer one (the larger
/// on a tie) and `warning` lists the neighbouring achievable counts.
struct EcutSearch {
  double e_cut = 0.0;
  int target = 0;
  int achieved = 0;
  std::vector<int> neighbor_counts;
  std::string warning;

  bool exact() const noexcept { return achieved == target; }
};

/// Center energies closer than this (relative to max(1, |E|)) form one tier
/// and are kept or dropped together.
inline constexpr double kEnergyTierTolerance = 1e-9;

/// Achievable mask sizes in ascending order, with the e_cut that realizes each.
struct MaskTiers {
  std::vector<int> counts;
  std::vector<double> e_cuts;
};

MaskTiers mask_tiers(const VnLatticeSpec& lattice, const PotentialModel& model, double margin = 0.0);

EcutSearch find_ecut(const VnLatticeSpec& lattice, const PotentialModel& model, int target_count,
                     double margin = 0.0);
/// Uses the config's lattice, potential and prune margin.
EcutSearch find_ecut(const ExperimentConfig& config, int target_count);

/// The mask a bvn config asks for: from prune.e_cut directly or via find_ecut.
struct ResolvedMask {
  PruneMask mask;
  std::optional<EcutSearch> search;
};

ResolvedMask resolve_mask(const ExperimentConfig& config);

struct ExperimentReport {
  ExperimentConfig config;
  SpectrumResult spectrum;
  std::vector<LevelRow> levels;
  /// Over rows with an oracle value; NaN without one.
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  std::optional<double> e_cut;
  std::optional<EcutSearch> search;
  /// Digits of the accuracy gate; 0 when no gate applies.
  int gate_digits = 0;
  bool gate_passed = true;
  double seconds = 0.0;
};

/// Solves the configured experiment. `tolerance_digits` >= 0 overrides the
/// config's report.tolerance_digits.
ExperimentReport run_experiment(const ExperimentConfig& config, int tolerance_digits = -1);

/// Result document: JSON with the eigenvalues, per-level errors, diagnostics
/// and the config echoed as INI text.
std::string result_document(const ExperimentReport& report);

/// Per-level table: CSV header `level,computed,exact,abs_error,rel_error`.
std::string level_table(const ExperimentReport& report);

/// Re-parses a result document, recomputes every oracle value and error from
/// the stored eigenvalues and returns the fields that differ (empty when the
/// document round-trips exactly).
std::vector<std::string> verify_result_document(std::string_view json_text);

/// Writes the result document and level table under out_dir, plus the phase
/// mask for bvn. Returns the paths written.
std::vector<std::filesystem::path> write_report(const ExperimentReport& report,
                                                const std::filesystem::path& out_dir);

struct PhaseMaskRow {
  int cell_index = 0;
  double x_center = 0.0;
  double p_center = 0.0;
  bool kept = false;
};

/// One row per lattice cell. Requires method bvn.
std::vector<PhaseMaskRow> emit_phase_mask(const ExperimentConfig& config);
/// CSV header `cell_index,x_center,p_center,kept`.
std::string phase_mask_table(std::span<const PhaseMaskRow> rows);

struct EfficiencyPoint {
  double hbar = 0.0;
  int basis_size = 0;
  int states_below_cut = 0;
  /// basis_size / states_below_cut
  double eta = 0.0;
};

/// Everything computed at one hbar of the sweep.
struct SweepPoint {
  EfficiencyPoint bvn;
  EfficiencyPoint fgh;
  bool ok = false;
  std::string failure;
  double fgh_max_rel_error = 0.0;
  double bvn_max_rel_error = 0.0;
  double e_cut = 0.0;
  double overlap_condition = 0.0;
  /// Full config of this point (INI), runnable with `solve`.
  std::string config_text;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  double e_shell = 0.0;
  int tolerance_digits = 0;
  /// Tight-rectangle area over shell area, the limit of the FGH curve.
  double rectangle_bound = 0.0;
  std::vector<std::string> assumptions;
};

/// Derives the grid and lattice used at one hbar (see SweepBlock).
ExperimentConfig sweep_point_config(const ExperimentConfig& base, double hbar);

/// For every hbar finds the smallest energy-threshold bvN mask that reproduces
/// all analytic levels below e_shell to `tolerance_digits` relative digits.
/// Points where the gate cannot be met are recorded as failures.
/// `tolerance_digits` < 0 uses the config's sweep.tolerance_digits.
SweepResult sweep_hbar(const ExperimentConfig& base, std::span<const double> hbar_values,
                       double e_shell, int tolerance_digits = -1);
/// Values and shell from the config's sweep block.
SweepResult sweep_hbar(const ExperimentConfig& base, int tolerance_digits = -1);

std::string sweep_document(const SweepResult& result);
/// Two columns `hbar eta`, one line per successful point.
std::string efficiency_table(const SweepResult& result, Method method);

std::vector<std::filesystem::path> write_sweep(const SweepResult& result,
                                               const ExperimentConfig& base,
                                               const std::filesystem::path& out_dir);

}  // namespace pvn
