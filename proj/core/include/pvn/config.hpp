#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pvn/lattice_grid.hpp"
#include "pvn/potentials.hpp"
#include "pvn/spectrum.hpp"

namespace pvn {

struct GridBlock {
  double x_min = 0.0;
  double length = 0.0;
  int n_points = 0;
  double hbar = 1.0;
};

struct LatticeBlock {
  int n_x = 0;
  int n_p = 0;
  std::optional<double> alpha;
};

struct PruneBlock {
  std::optional<double> e_cut;
  std::optional<int> target_count;
  double margin = 0.0;
};

/// How computed eigenvalues are matched to oracle levels.
/// `ordered` pairs the i-th lowest with level i; `nearest` pairs every oracle
/// level with the closest computed eigenvalue (for spectra with spurious or
/// doubly degenerate states).
enum class Pairing { ordered, nearest };

struct ReportBlock {
  int n_levels = 0;
  bool oracle = true;
  Pairing pairing = Pairing::ordered;
  /// Accuracy gate in significant digits (relative error <= 10^-d); 0 disables it.
  int tolerance_digits = 0;
  std::string result_file;
  std::string table_file;
  std::string mask_file;
};

/// Per-hbar box and lattice scaling of the efficiency sweep.
///
/// For each hbar the box is the shell's turning points widened by
/// margin_x_low * s and margin_x_high * s, and the momentum edge is
/// sqrt(2 m e_shell) + margin_p * s, with s = hbar^margin_exponent. N is the
/// smallest n_x * n_p >= L P / (pi hbar) with n_x = ceil(sqrt(N_min)).
struct SweepBlock {
  std::vector<double> hbar_values;
  double e_shell = 0.0;
  double margin_x_low = 0.0;
  double margin_x_high = 0.0;
  double margin_p = 0.0;
  double margin_exponent = 0.0;
  /// "symmetric" (alpha = dp / (2 hbar a)), "default" (dp / (2 a)) or a number.
  std::string alpha_rule = "symmetric";
  int tolerance_digits = 12;
  std::string fgh_file;
  std::string bvn_file;
};

struct ExperimentConfig {
  std::string name;
  Method method = Method::fgh;
  GridBlock grid;
  std::optional<LatticeBlock> lattice;
  PotentialModel potential;
  /// Table path as written in the file, for tabulated potentials.
  std::string potential_table;
  PruneBlock prune;
  ReportBlock report;
  std::optional<SweepBlock> sweep;
  /// Directory that relative paths in the file are resolved against.
  std::filesystem::path base_dir;
};

/// Parses INI text. Unknown sections or keys, missing required keys and
/// malformed values throw ConfigError naming "section.key".
ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path& base_dir = ".");

/// Reads and parses a config file; relative paths resolve against its directory.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Cross-block checks: the grid and lattice construct, the lattice matches
/// the grid, the model is valid, bvn has exactly one of e_cut / target_count.
/// Throws ConfigError naming the field.
void validate_config(const ExperimentConfig& config);

/// INI text that parse_config turns back into an equal config.
std::string render_config(const ExperimentConfig& config);

GridSpec grid_of(const ExperimentConfig& config);
/// Throws ConfigError when the config has no lattice block.
VnLatticeSpec lattice_of(const ExperimentConfig& config);

/// Two-column (x, V) file, whitespace or comma separated, '#' comments.
Tabulated read_potential_table(const std::filesystem::path& path, double mass);

std::string to_string(Pairing pairing);

}  // namespace pvn
