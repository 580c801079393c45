#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "pvn/config.hpp"
#include "pvn/errors.hpp"
#include "pvn/experiment.hpp"
#include "support.hpp"

using namespace pvn;

namespace {

const char* kHarmonic = R"(
[experiment]
name = h
method = bvn
[grid]
x_min = -5
length = 10
n_points = 16
[lattice]
n_x = 4
n_p = 4
alpha = 0.5
[potential]
kind = harmonic
omega = 1
[prune]
e_cut = 5
[report]
n_levels = 4
)";

std::string config_field_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "none";
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("pvn-unit-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config: every preset loads and validates") {
  for (const char* name : {"harmonic-fgh", "harmonic-pvn", "harmonic-bvn", "harmonic-vn-analytic",
                           "morse-fgh", "morse-bvn", "coulomb-fgh", "coulomb-bvn", "morse-sweep"}) {
    CAPTURE(name);
    CHECK_NOTHROW(support::load_preset(name));
  }
  const auto morse = support::load_preset("morse-bvn");
  CHECK(morse.method == Method::bvn);
  CHECK(morse.grid.n_points == 100);
  CHECK(morse.prune.target_count == 48);
  CHECK(std::get<Morse>(morse.potential).depth == 12.0);
  CHECK(support::load_preset("coulomb-fgh").report.pairing == Pairing::nearest);
}

TEST_CASE("config: errors name the offending field") {
  CHECK(config_field_error(replace(kHarmonic, "n_points", "n_pts")) == "grid.n_pts");
  CHECK(config_field_error(replace(kHarmonic, "[grid]", "[grids]")) == "grids");
  CHECK(config_field_error(replace(kHarmonic, "length = 10", "length = ten")) == "grid.length");
  CHECK(config_field_error(replace(kHarmonic, "length = 10", "")) == "grid.length");
  CHECK(config_field_error(replace(kHarmonic, "length = 10", "length = -10")) == "grid.length");
  CHECK(config_field_error(replace(kHarmonic, "n_x = 4", "n_x = 3")) == "lattice");
  CHECK(config_field_error(replace(kHarmonic, "e_cut = 5", "e_cut = 5\ntarget_count = 3")) == "prune");
  CHECK(config_field_error(replace(kHarmonic, "e_cut = 5", "")) == "prune");
  CHECK(config_field_error(replace(kHarmonic, "e_cut = 5", "target_count = 17")) == "prune.target_count");
  CHECK(config_field_error(replace(kHarmonic, "method = bvn", "method = dvr")) == "experiment.method");
  CHECK(config_field_error(replace(kHarmonic, "omega = 1", "omega = 0")) == "potential.omega");
  CHECK(config_field_error(replace(kHarmonic, "omega = 1", "depth = 1")) == "potential.depth");
  CHECK(config_field_error(replace(kHarmonic, "kind = harmonic", "kind = square")) == "potential.kind");
  CHECK(config_field_error(replace(kHarmonic, "n_levels = 4", "n_levels = 0")) == "report.n_levels");
  CHECK(config_field_error(replace(kHarmonic, "method = bvn", "method = pvn")) == "prune");
}

TEST_CASE("config: render and parse round-trip") {
  for (const char* name : {"morse-bvn", "coulomb-fgh", "morse-sweep", "harmonic-vn-analytic"}) {
    const auto a = support::load_preset(name);
    const auto b = parse_config(render_config(a), a.base_dir);
    CHECK(render_config(b) == render_config(a));
  }
}

TEST_CASE("config: tabulated potential file") {
  const auto dir = temp_dir("table");
  {
    std::ofstream(dir / "well.dat") << "# x V\n-6 18\n0, 0\n6 18  # right wall\n";
  }
  const std::string text = replace(replace(kHarmonic, "kind = harmonic\nomega = 1",
                                           "kind = tabulated\ntable_file = well.dat"),
                                   "n_levels = 4", "n_levels = 4\noracle = off");
  const auto c = parse_config(text, dir);
  const auto& t = std::get<Tabulated>(c.potential);
  CHECK(t.x == std::vector<double>{-6.0, 0.0, 6.0});
  CHECK(t.v == std::vector<double>{18.0, 0.0, 18.0});
  CHECK(eval_potential(c.potential, 3.0) == doctest::Approx(9.0));
  const auto report = run_experiment(c);
  CHECK(report.levels.size() == 4);
  CHECK(std::isnan(report.levels[0].exact));

  std::ofstream(dir / "bad.dat") << "1 2 3\n";
  try {
    parse_config(replace(text, "well.dat", "bad.dat"), dir);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "potential.table_file");
  }
}

TEST_CASE("find_ecut: all cells, one cell, exact and nearest counts") {
  const auto morse = support::load_preset("morse-bvn");
  const auto lattice = lattice_of(morse);
  const auto energies = center_energies(lattice, morse.potential);
  const double hi = *std::max_element(energies.begin(), energies.end());
  const double lo = *std::min_element(energies.begin(), energies.end());

  const EcutSearch all = find_ecut(morse, 100);
  CHECK(all.achieved == 100);
  CHECK(all.e_cut >= hi);

  // Centers come in +p / -p pairs, so a single cell is not achievable.
  const EcutSearch one = find_ecut(morse, 1);
  CHECK(one.achieved == 2);
  CHECK(one.e_cut > lo);
  CHECK_FALSE(one.warning.empty());

  const EcutSearch s48 = find_ecut(morse, 48);
  CHECK(s48.exact());
  CHECK(s48.warning.empty());
  CHECK(prune_mask(lattice, morse.potential, s48.e_cut).size() == 48);

  const EcutSearch s47 = find_ecut(morse, 47);
  CHECK_FALSE(s47.exact());
  CHECK(s47.achieved % 2 == 0);
  CHECK(std::abs(s47.achieved - 47) == 1);
  CHECK(std::find(s47.neighbor_counts.begin(), s47.neighbor_counts.end(), s47.achieved) !=
        s47.neighbor_counts.end());

  CHECK_THROWS_AS(find_ecut(morse, 0), InvalidArgument);
  CHECK_THROWS_AS(find_ecut(morse, 101), InvalidArgument);
}

TEST_CASE("find_ecut on the Coulomb preset reaches 189 cells") {
  const EcutSearch s = find_ecut(support::load_preset("coulomb-bvn"), 189);
  CHECK(s.exact());
}

TEST_CASE("mask tiers are strictly increasing and realizable") {
  const auto c = support::load_preset("morse-bvn");
  const auto lattice = lattice_of(c);
  const MaskTiers tiers = mask_tiers(lattice, c.potential);
  CHECK(std::is_sorted(tiers.counts.begin(), tiers.counts.end()));
  CHECK(std::adjacent_find(tiers.counts.begin(), tiers.counts.end()) == tiers.counts.end());
  CHECK(tiers.counts.back() == 100);
  for (std::size_t t = 0; t < tiers.counts.size(); ++t)
    CHECK(prune_mask(lattice, c.potential, tiers.e_cuts[t]).size() == tiers.counts[t]);
}

TEST_CASE("pvN preset errors equal FGH preset errors") {
  const auto fgh = run_experiment(support::load_preset("harmonic-fgh"));
  const auto pvn = run_experiment(support::load_preset("harmonic-pvn"));
  REQUIRE(fgh.levels.size() == pvn.levels.size());
  for (std::size_t i = 0; i < fgh.levels.size(); ++i)
    CHECK(std::abs(fgh.levels[i].abs_error - pvn.levels[i].abs_error) <= 1e-8);
}

TEST_CASE("level pairing: ordered and nearest") {
  Eigen::VectorXd e(4);
  e << -5.0, -2.01, -0.49, -0.2;
  const Coulomb c{1.0, 1.0, 0.0};
  const auto nearest = compare_levels(e, c, 0.5, 2, Pairing::nearest);
  CHECK(nearest[0].computed == -2.01);
  CHECK(nearest[1].computed == -0.49);
  CHECK(nearest[0].rel_error == doctest::Approx(0.005));
  const auto ordered = compare_levels(e, c, 0.5, 2, Pairing::ordered);
  CHECK(ordered[0].computed == -5.0);
  CHECK_THROWS_AS(compare_levels(e, c, 0.5, 5, Pairing::ordered), NumericalFailure);
}

TEST_CASE("result documents round-trip and detect tampering") {
  const auto report = run_experiment(support::load_preset("morse-bvn"));
  CHECK(report.spectrum.basis_size == 48);
  CHECK(report.levels.size() == 24);
  const std::string doc = result_document(report);
  CHECK(verify_result_document(doc).empty());

  std::string tampered = doc;
  const auto at = tampered.find("\"abs_error\": ");
  REQUIRE(at != std::string::npos);
  tampered.insert(at + 13, "1");
  CHECK_FALSE(verify_result_document(tampered).empty());
  CHECK_FALSE(verify_result_document("{").empty());
}

TEST_CASE("level table has a header and one row per level") {
  const auto report = run_experiment(support::load_preset("harmonic-fgh"));
  const std::string table = level_table(report);
  CHECK(table.rfind("level,computed,exact,abs_error,rel_error\n", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 17);
}

TEST_CASE("accuracy gate in digits") {
  const auto morse = support::load_preset("morse-fgh");
  const auto loose = run_experiment(morse, 3);
  CHECK(loose.gate_digits == 3);
  CHECK(loose.gate_passed);
  const auto strict = run_experiment(morse, 8);
  CHECK_FALSE(strict.gate_passed);
  CHECK(run_experiment(morse).gate_digits == 0);
}

TEST_CASE("write_report writes result, table and mask files") {
  const auto dir = temp_dir("report");
  const auto paths = write_report(run_experiment(support::load_preset("morse-bvn")), dir);
  REQUIRE(paths.size() == 3);
  for (const auto& p : paths) CHECK(std::filesystem::exists(p));
  std::ifstream in(paths[0]);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(verify_result_document(text).empty());
}

TEST_CASE("phase mask: Morse preset keeps 48 of 100 cells") {
  const auto rows = emit_phase_mask(support::load_preset("morse-bvn"));
  CHECK(rows.size() == 100);
  CHECK(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.kept; }) == 48);
  CHECK(phase_mask_table(rows).rfind("cell_index,x_center,p_center,kept\n", 0) == 0);
}

TEST_CASE("phase mask: Coulomb preset is symmetric under p -> -p") {
  const auto rows = emit_phase_mask(support::load_preset("coulomb-bvn"));
  CHECK(rows.size() == 1599);
  std::set<std::pair<double, double>> kept;
  for (const auto& r : rows)
    if (r.kept) kept.insert({r.x_center, r.p_center});
  CHECK(kept.size() == 189);
  for (const auto& [x, p] : kept) CHECK(kept.count({x, -p}) == 1);
}

TEST_CASE("phase mask: all-kept config") {
  auto c = support::load_preset("harmonic-bvn");
  c.prune.target_count = 16;
  const auto rows = emit_phase_mask(c);
  CHECK(std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.kept; }));
  CHECK_THROWS_AS(emit_phase_mask(support::load_preset("harmonic-fgh")), ConfigError);
}

TEST_CASE("sweep point configs scale the box with hbar") {
  const auto base = support::load_preset("morse-sweep");
  const auto a = sweep_point_config(base, 0.5);
  const auto b = sweep_point_config(base, 0.25);
  CHECK(b.grid.n_points > a.grid.n_points);
  CHECK(b.grid.length < a.grid.length);
  CHECK(a.grid.n_points == a.lattice->n_x * a.lattice->n_p);
  CHECK(a.report.n_levels == count_states_below(base.potential, 0.5, 11.25));
  CHECK_NOTHROW(validate_config(a));
}

TEST_CASE("single-hbar sweep equals a manual run of its point config") {
  const auto base = support::load_preset("morse-sweep");
  const double hbar[] = {0.5};
  const SweepResult sweep = sweep_hbar(base, hbar, 11.25, 4);
  REQUIRE(sweep.points.size() == 1);
  const SweepPoint& p = sweep.points[0];
  REQUIRE(p.ok);
  CHECK(p.bvn.states_below_cut == 36);
  CHECK(p.bvn.eta == doctest::Approx(double(p.bvn.basis_size) / 36));

  const auto manual = run_experiment(parse_config(p.config_text, base.base_dir), 4);
  CHECK(manual.spectrum.basis_size == p.bvn.basis_size);
  CHECK(manual.gate_passed);
  CHECK(manual.max_rel_error == doctest::Approx(p.bvn_max_rel_error).epsilon(1e-9));
  CHECK(sweep.rectangle_bound == doctest::Approx(1.6959).epsilon(5e-5));
}

TEST_CASE("sweep output is deterministic") {
  const auto base = support::load_preset("morse-sweep");
  const double hbar[] = {1.0, 0.5};
  CHECK(sweep_document(sweep_hbar(base, hbar, 11.25, 4)) ==
        sweep_document(sweep_hbar(base, hbar, 11.25, 4)));
}

TEST_CASE("sweep records an unreachable gate and continues") {
  const auto base = support::load_preset("morse-sweep");
  const double hbar[] = {1.0, 0.5};
  const SweepResult r = sweep_hbar(base, hbar, 11.25, 12);
  REQUIRE(r.points.size() == 2);
  for (const auto& p : r.points) {
    CHECK_FALSE(p.ok);
    CHECK(p.failure.find("gate") != std::string::npos);
    CHECK(p.fgh.basis_size > 0);
  }
  CHECK(efficiency_table(r, Method::bvn) == "# hbar eta (bvn)\n");
}
