#include "pvn/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pvn/errors.hpp"

namespace pvn {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"experiment", {"name", "method"}},
      {"grid", {"x_min", "length", "n_points", "hbar"}},
      {"lattice", {"n_x", "n_p", "alpha"}},
      {"potential",
       {"kind", "mass", "omega", "depth", "steepness", "charge", "core_offset", "table_file"}},
      {"prune", {"e_cut", "target_count", "margin"}},
      {"report",
       {"n_levels", "oracle", "pairing", "tolerance_digits", "result_file", "table_file",
        "mask_file"}},
      {"sweep",
       {"hbar_values", "e_shell", "margin_x_low", "margin_x_high", "margin_p", "margin_exponent",
        "alpha_rule", "tolerance_digits", "fgh_file", "bvn_file"}},
  };
  return keys;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  bool present() const { return tree_ != nullptr; }
  std::string field(const std::string& key) const { return name_ + "." + key; }

  std::optional<std::string> raw(const std::string& key) const {
    if (!tree_) return std::nullopt;
    const auto v = tree_->get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return trim(*v);
  }

  std::optional<double> real(const std::string& key) const {
    const auto s = raw(key);
    if (!s) return std::nullopt;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(s->data(), s->data() + s->size(), value);
    if (ec != std::errc() || end != s->data() + s->size() || !std::isfinite(value))
      throw ConfigError(field(key), "expected a finite number, got '" + *s + "'");
    return value;
  }

  std::optional<int> integer(const std::string& key) const {
    const auto s = raw(key);
    if (!s) return std::nullopt;
    int value = 0;
    const auto [end, ec] = std::from_chars(s->data(), s->data() + s->size(), value);
    if (ec != std::errc() || end != s->data() + s->size())
      throw ConfigError(field(key), "expected an integer, got '" + *s + "'");
    return value;
  }

  std::optional<bool> flag(const std::string& key) const {
    const auto s = raw(key);
    if (!s) return std::nullopt;
    if (*s == "on" || *s == "true" || *s == "yes" || *s == "1") return true;
    if (*s == "off" || *s == "false" || *s == "no" || *s == "0") return false;
    throw ConfigError(field(key), "expected on/off, got '" + *s + "'");
  }

  template <class T>
  T required(std::optional<T> value, const std::string& key) const {
    if (!value) throw ConfigError(field(key), "missing required key");
    return *value;
  }

  std::vector<double> real_list(const std::string& key) const {
    const auto s = raw(key);
    if (!s) return {};
    std::vector<double> out;
    std::stringstream in(*s);
    std::string item;
    while (std::getline(in, item, ',')) {
      item = trim(item);
      double value = 0.0;
      const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (item.empty() || ec != std::errc() || end != item.data() + item.size() ||
          !std::isfinite(value))
        throw ConfigError(field(key), "expected a comma-separated list of numbers, got '" + *s + "'");
      out.push_back(value);
    }
    return out;
  }

 private:
  const pt::ptree* tree_;
  std::string name_;
};

Section section(const pt::ptree& root, const std::string& name) {
  const auto child = root.get_child_optional(name);
  return Section(child ? &*child : nullptr, name);
}

void check_known(const pt::ptree& root) {
  for (const auto& [name, body] : root) {
    const auto it = known_keys().find(name);
    if (it == known_keys().end()) {
      if (body.empty()) throw ConfigError(name, "keys must be inside a section");
      throw ConfigError(name, "unknown section");
    }
    for (const auto& [key, value] : body)
      if (!it->second.contains(key)) throw ConfigError(name + "." + key, "unknown key");
  }
}

PotentialModel parse_potential(const Section& s, const std::filesystem::path& base_dir,
                               std::string& table_path) {
  const std::string kind = s.required(s.raw("kind"), "kind");
  const double mass = s.real("mass").value_or(1.0);
  const auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* key : keys)
      if (s.raw(key)) throw ConfigError(s.field(key), "not a parameter of kind '" + kind + "'");
  };
  if (kind == "harmonic") {
    forbid({"depth", "steepness", "charge", "core_offset", "table_file"});
    return Harmonic{mass, s.required(s.real("omega"), "omega")};
  }
  if (kind == "morse") {
    forbid({"omega", "charge", "core_offset", "table_file"});
    return Morse{s.required(s.real("depth"), "depth"), s.required(s.real("steepness"), "steepness"),
                 mass};
  }
  if (kind == "coulomb") {
    forbid({"omega", "depth", "steepness", "table_file"});
    return Coulomb{s.required(s.real("charge"), "charge"), mass,
                   s.real("core_offset").value_or(0.0)};
  }
  if (kind == "tabulated") {
    forbid({"omega", "depth", "steepness", "charge", "core_offset"});
    table_path = s.required(s.raw("table_file"), "table_file");
    std::filesystem::path p(table_path);
    if (p.is_relative()) p = base_dir / p;
    try {
      return read_potential_table(p, mass);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(s.field("table_file"), e.what());
    }
  }
  throw ConfigError(s.field("kind"),
                    "unknown kind '" + kind + "' (expected harmonic, morse, coulomb or tabulated)");
}

Pairing parse_pairing(const Section& s) {
  const auto v = s.raw("pairing");
  if (!v || *v == "ordered") return Pairing::ordered;
  if (*v == "nearest") return Pairing::nearest;
  throw ConfigError(s.field("pairing"), "expected ordered or nearest, got '" + *v + "'");
}

std::string number(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

/// Rethrows library argument errors as ConfigError under a config field name.
template <class F>
auto as_config_error(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ConfigError(field + "." + e.field(), e.what());
  } catch (const LatticeMismatch& e) {
    throw ConfigError("lattice", e.what());
  }
}

}  // namespace

std::string to_string(Pairing pairing) {
  return pairing == Pairing::nearest ? "nearest" : "ordered";
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  pt::ptree root;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("file", e.message() + " at line " + std::to_string(e.line()));
  }
  check_known(root);

  ExperimentConfig c;
  c.base_dir = base_dir;

  const Section experiment = section(root, "experiment");
  c.name = experiment.raw("name").value_or("experiment");
  const std::string method = experiment.required(experiment.raw("method"), "method");
  try {
    c.method = parse_method(method);
  } catch (const InvalidArgument& e) {
    throw ConfigError(experiment.field("method"), e.what());
  }

  const Section grid = section(root, "grid");
  if (grid.present()) {
    c.grid.x_min = grid.required(grid.real("x_min"), "x_min");
    c.grid.length = grid.required(grid.real("length"), "length");
    c.grid.n_points = grid.required(grid.integer("n_points"), "n_points");
    c.grid.hbar = grid.real("hbar").value_or(1.0);
  }

  const Section lattice = section(root, "lattice");
  if (lattice.present())
    c.lattice = LatticeBlock{lattice.required(lattice.integer("n_x"), "n_x"),
                             lattice.required(lattice.integer("n_p"), "n_p"), lattice.real("alpha")};

  const Section potential = section(root, "potential");
  if (!potential.present()) throw ConfigError("potential", "missing required section");
  c.potential = parse_potential(potential, base_dir, c.potential_table);

  const Section prune = section(root, "prune");
  c.prune.e_cut = prune.real("e_cut");
  c.prune.target_count = prune.integer("target_count");
  c.prune.margin = prune.real("margin").value_or(0.0);

  const Section report = section(root, "report");
  c.report.n_levels = report.integer("n_levels").value_or(0);
  c.report.oracle = report.flag("oracle").value_or(true);
  c.report.pairing = parse_pairing(report);
  c.report.tolerance_digits = report.integer("tolerance_digits").value_or(0);
  c.report.result_file = report.raw("result_file").value_or(c.name + ".json");
  c.report.table_file = report.raw("table_file").value_or(c.name + ".csv");
  c.report.mask_file = report.raw("mask_file").value_or(c.name + "-mask.csv");

  const Section sweep = section(root, "sweep");
  if (sweep.present()) {
    SweepBlock s;
    s.hbar_values = sweep.real_list("hbar_values");
    s.e_shell = sweep.required(sweep.real("e_shell"), "e_shell");
    s.margin_x_low = sweep.real("margin_x_low").value_or(0.0);
    s.margin_x_high = sweep.real("margin_x_high").value_or(0.0);
    s.margin_p = sweep.real("margin_p").value_or(0.0);
    s.margin_exponent = sweep.real("margin_exponent").value_or(0.0);
    s.alpha_rule = sweep.raw("alpha_rule").value_or("symmetric");
    s.tolerance_digits = sweep.integer("tolerance_digits").value_or(12);
    s.fgh_file = sweep.raw("fgh_file").value_or(c.name + "-fgh.dat");
    s.bvn_file = sweep.raw("bvn_file").value_or(c.name + "-bvn.dat");
    c.sweep = std::move(s);
  }

  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("file", "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path().empty() ? "." : path.parent_path());
}

void validate_config(const ExperimentConfig& c) {
  as_config_error("potential", [&] {
    validate(c.potential);
    return 0;
  });

  if (c.sweep) {
    const SweepBlock& s = *c.sweep;
    if (s.hbar_values.empty()) throw ConfigError("sweep.hbar_values", "must list at least one value");
    for (double h : s.hbar_values)
      if (!(h > 0.0)) throw ConfigError("sweep.hbar_values", "values must be positive");
    if (!(s.e_shell > 0.0)) throw ConfigError("sweep.e_shell", "must be positive");
    if (!std::holds_alternative<Harmonic>(c.potential) && !std::holds_alternative<Morse>(c.potential))
      throw ConfigError("potential.kind", "the sweep needs a harmonic or morse potential");
    for (auto [v, key] : {std::pair{s.margin_x_low, "margin_x_low"},
                          std::pair{s.margin_x_high, "margin_x_high"},
                          std::pair{s.margin_p, "margin_p"}})
      if (v < 0.0) throw ConfigError(std::string("sweep.") + key, "must be >= 0");
    if (s.alpha_rule != "symmetric" && s.alpha_rule != "default") {
      double value = 0.0;
      const auto [end, ec] =
          std::from_chars(s.alpha_rule.data(), s.alpha_rule.data() + s.alpha_rule.size(), value);
      if (ec != std::errc() || end != s.alpha_rule.data() + s.alpha_rule.size() || !(value > 0.0))
        throw ConfigError("sweep.alpha_rule", "expected symmetric, default or a positive number");
    }
    if (s.tolerance_digits < 1 || s.tolerance_digits > 15)
      throw ConfigError("sweep.tolerance_digits", "must lie in [1, 15]");
    if (c.prune.margin < 0.0) throw ConfigError("prune.margin", "must be >= 0");
    return;
  }

  if (c.grid.n_points == 0) throw ConfigError("grid", "missing required section");
  const GridSpec grid = grid_of(c);
  if (c.method != Method::fgh || c.lattice) {
    if (!c.lattice) throw ConfigError("lattice", "method " + to_string(c.method) + " needs a lattice");
    lattice_of(c);
  }

  if (c.method == Method::bvn) {
    if (c.prune.e_cut.has_value() == c.prune.target_count.has_value())
      throw ConfigError("prune", "bvn needs exactly one of e_cut or target_count");
    if (c.prune.target_count && (*c.prune.target_count < 1 || *c.prune.target_count > grid.n_points()))
      throw ConfigError("prune.target_count",
                        "must lie in [1, " + std::to_string(grid.n_points()) + "]");
  } else if (c.prune.e_cut || c.prune.target_count) {
    throw ConfigError("prune", "pruning applies to the bvn method only");
  }
  if (!(c.prune.margin >= 0.0)) throw ConfigError("prune.margin", "must be >= 0");

  if (c.report.n_levels < 0) throw ConfigError("report.n_levels", "must be >= 0");
  if (c.report.oracle && c.report.n_levels == 0)
    throw ConfigError("report.n_levels", "must be positive when the oracle is on");
  if (c.report.tolerance_digits < 0 || c.report.tolerance_digits > 15)
    throw ConfigError("report.tolerance_digits", "must lie in [0, 15]");
  if (c.report.oracle && std::holds_alternative<Tabulated>(c.potential))
    throw ConfigError("report.oracle", "tabulated potentials have no analytic levels");
  if (c.method == Method::vn_analytic && !std::holds_alternative<Harmonic>(c.potential))
    throw ConfigError("experiment.method", "vn-analytic supports the harmonic potential only");
}

GridSpec grid_of(const ExperimentConfig& c) {
  return as_config_error("grid", [&] {
    return make_grid(c.grid.x_min, c.grid.length, c.grid.n_points, c.grid.hbar);
  });
}

VnLatticeSpec lattice_of(const ExperimentConfig& c) {
  if (!c.lattice) throw ConfigError("lattice", "missing required section");
  const GridSpec grid = grid_of(c);
  return as_config_error("lattice", [&] {
    return make_lattice(grid, c.lattice->n_x, c.lattice->n_p, c.lattice->alpha);
  });
}

std::string render_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[experiment]\nname = " << c.name << "\nmethod = " << to_string(c.method) << "\n";
  if (c.grid.n_points > 0)
    out << "\n[grid]\nx_min = " << number(c.grid.x_min) << "\nlength = " << number(c.grid.length)
        << "\nn_points = " << c.grid.n_points << "\nhbar = " << number(c.grid.hbar) << "\n";
  if (c.lattice) {
    out << "\n[lattice]\nn_x = " << c.lattice->n_x << "\nn_p = " << c.lattice->n_p << "\n";
    if (c.lattice->alpha) out << "alpha = " << number(*c.lattice->alpha) << "\n";
  }
  out << "\n[potential]\nkind = " << kind_name(c.potential)
      << "\nmass = " << number(mass_of(c.potential)) << "\n";
  if (const auto* h = std::get_if<Harmonic>(&c.potential)) out << "omega = " << number(h->omega) << "\n";
  if (const auto* m = std::get_if<Morse>(&c.potential))
    out << "depth = " << number(m->depth) << "\nsteepness = " << number(m->steepness) << "\n";
  if (const auto* q = std::get_if<Coulomb>(&c.potential))
    out << "charge = " << number(q->charge) << "\ncore_offset = " << number(q->core_offset) << "\n";
  if (std::holds_alternative<Tabulated>(c.potential)) out << "table_file = " << c.potential_table << "\n";

  out << "\n[prune]\n";
  if (c.prune.e_cut) out << "e_cut = " << number(*c.prune.e_cut) << "\n";
  if (c.prune.target_count) out << "target_count = " << *c.prune.target_count << "\n";
  out << "margin = " << number(c.prune.margin) << "\n";

  out << "\n[report]\nn_levels = " << c.report.n_levels
      << "\noracle = " << (c.report.oracle ? "on" : "off")
      << "\npairing = " << to_string(c.report.pairing)
      << "\ntolerance_digits = " << c.report.tolerance_digits
      << "\nresult_file = " << c.report.result_file << "\ntable_file = " << c.report.table_file
      << "\nmask_file = " << c.report.mask_file << "\n";

  if (c.sweep) {
    const SweepBlock& s = *c.sweep;
    out << "\n[sweep]\nhbar_values = ";
    for (std::size_t i = 0; i < s.hbar_values.size(); ++i)
      out << (i ? ", " : "") << number(s.hbar_values[i]);
    out << "\ne_shell = " << number(s.e_shell) << "\nmargin_x_low = " << number(s.margin_x_low)
        << "\nmargin_x_high = " << number(s.margin_x_high) << "\nmargin_p = " << number(s.margin_p)
        << "\nmargin_exponent = " << number(s.margin_exponent) << "\nalpha_rule = " << s.alpha_rule
        << "\ntolerance_digits = " << s.tolerance_digits << "\nfgh_file = " << s.fgh_file
        << "\nbvn_file = " << s.bvn_file << "\n";
  }
  return out.str();
}

Tabulated read_potential_table(const std::filesystem::path& path, double mass) {
  std::ifstream in(path);
  if (!in) throw ConfigError("potential.table_file", "cannot open '" + path.string() + "'");
  Tabulated table;
  table.mass = mass;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    double x = 0.0, v = 0.0;
    const auto parse = [](const std::string& s, double& value) {
      const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      return ec == std::errc() && end == s.data() + s.size() && std::isfinite(value);
    };
    if (!(fields >> b) || (fields >> extra) || !parse(a, x) || !parse(b, v))
      throw ConfigError("potential.table_file",
                        path.string() + ":" + std::to_string(line_no) + ": expected two numbers");
    table.x.push_back(x);
    table.v.push_back(v);
  }
  if (table.x.size() < 2)
    throw ConfigError("potential.table_file", "needs at least two (x, V) rows");
  for (std::size_t i = 1; i < table.x.size(); ++i)
    if (!(table.x[i] > table.x[i - 1]))
      throw ConfigError("potential.table_file", "x values must be strictly increasing");
  return table;
}

}  // namespace pvn
