#include "hopspin/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hopspin {

using nlohmann::json;

// ------------------------------------------------------------------ columns

std::string_view column_name(Column c) {
  switch (c) {
    case Column::t: return "t";
    case Column::P1: return "P1";
    case Column::P2: return "P2";
    case Column::P0: return "P0";
    case Column::P_up: return "P_up";
    case Column::F_plus: return "F_plus";
    case Column::F_minus: return "F_minus";
    case Column::logneg: return "logneg";
    case Column::F2: return "F2";
    case Column::Sz: return "Sz";
    case Column::S12sq: return "S12sq";
    case Column::norm: return "norm";
  }
  return "?";
}

std::vector<Column> all_columns(int n_sites) {
  std::vector<Column> cols{Column::t, Column::P1, Column::P2};
  if (n_sites == 3) cols.push_back(Column::P0);
  for (Column c : {Column::P_up, Column::F_plus, Column::F_minus, Column::logneg, Column::F2,
                   Column::Sz, Column::S12sq, Column::norm}) {
    cols.push_back(c);
  }
  return cols;
}

namespace {

bool is_probability(Column c) {
  switch (c) {
    case Column::P1:
    case Column::P2:
    case Column::P0:
    case Column::P_up:
    case Column::F_plus:
    case Column::F_minus:
    case Column::F2: return true;
    default: return false;
  }
}

double column_value(const ObservableRecord& r, const BasisLayout& layout, Column c) {
  switch (c) {
    case Column::t: return r.t;
    case Column::P1: return r.site_probability(layout, 1);
    case Column::P2: return r.site_probability(layout, 2);
    case Column::P0: return r.site_probability(layout, 0);
    case Column::P_up: return r.p_up;
    case Column::F_plus: return r.f_plus;
    case Column::F_minus: return r.f_minus;
    case Column::logneg: return r.log_negativity;
    case Column::F2: return r.f2;
    case Column::Sz: return r.sz_total;
    case Column::S12sq: return r.s12_squared;
    case Column::norm: return r.norm;
  }
  return 0.0;
}

// --------------------------------------------------------- json helpers

void reject_unknown_keys(const json& obj, std::string_view block,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + std::string(block) + "." + key + "'");
    }
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string field(std::string_view block, std::string_view key) {
  return std::string(block) + "." + std::string(key);
}

double get_number(const json& obj, std::string_view block, const char* key) {
  const json* v = find(obj, key);
  if (v == nullptr) throw ConfigError("missing required field '" + field(block, key) + "'");
  if (!v->is_number()) throw ConfigError("'" + field(block, key) + "' must be a number");
  return v->get<double>();
}

std::optional<double> get_optional_number(const json& obj, std::string_view block, const char* key) {
  if (find(obj, key) == nullptr) return std::nullopt;
  return get_number(obj, block, key);
}

long long get_integer(const json& obj, std::string_view block, const char* key) {
  const json* v = find(obj, key);
  if (v == nullptr) throw ConfigError("missing required field '" + field(block, key) + "'");
  if (!v->is_number_integer()) throw ConfigError("'" + field(block, key) + "' must be an integer");
  return v->get<long long>();
}

std::string get_string(const json& obj, std::string_view block, const char* key) {
  const json* v = find(obj, key);
  if (v == nullptr) throw ConfigError("missing required field '" + field(block, key) + "'");
  if (!v->is_string()) throw ConfigError("'" + field(block, key) + "' must be a string");
  return v->get<std::string>();
}

const json& get_block(const json& root, const char* key, bool required) {
  static const json kEmpty = json::object();
  const json* v = find(root, key);
  if (v == nullptr) {
    if (required) throw ConfigError("missing required block '" + std::string(key) + "'");
    return kEmpty;
  }
  if (!v->is_object()) throw ConfigError("'" + std::string(key) + "' must be an object");
  return *v;
}

template <class F>
auto semantic(std::string_view where, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("'" + std::string(where) + "': " + e.what());
  }
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

ModelSpec parse_model(const json& m) {
  reject_unknown_keys(m, "model", {"n_sites", "eta", "preset", "j_xy", "j_z", "attachments"});
  ModelSpec spec;
  const long long n_sites = get_integer(m, "model", "n_sites");
  if (n_sites != 2 && n_sites != 3) {
    throw ConfigError("'model.n_sites' must be 2 or 3 (got " + std::to_string(n_sites) + ")");
  }
  spec.n_sites = static_cast<int>(n_sites);
  spec.eta = get_number(m, "model", "eta");
  if (!(spec.eta >= 0.0)) throw ConfigError("'model.eta' must be non-negative");
  spec.preset = semantic("model.preset",
                         [&] { return parse_coupling_preset(get_string(m, "model", "preset")); });

  const auto j_xy = get_optional_number(m, "model", "j_xy");
  const auto j_z = get_optional_number(m, "model", "j_z");
  switch (spec.preset) {
    case CouplingPreset::xy:
      if (j_z && *j_z != 0.0) {
        throw ConfigError("'model.j_z': preset xy requires j_z = 0 (got " + format_number(*j_z) + ")");
      }
      spec.j_xy = j_xy.value_or(1.0);
      spec.j_z = 0.0;
      break;
    case CouplingPreset::heisenberg:
      if (j_xy && j_z && std::abs(*j_z - 2.0 * *j_xy) > 1e-12 * std::max(1.0, std::abs(*j_z))) {
        throw ConfigError("'model.j_z': preset heisenberg requires j_z = 2 * j_xy (got j_xy=" +
                          format_number(*j_xy) + ", j_z=" + format_number(*j_z) + ")");
      }
      spec.j_z = j_z ? *j_z : (j_xy ? 2.0 * *j_xy : 1.0);
      spec.j_xy = 0.5 * spec.j_z;
      break;
    case CouplingPreset::custom:
      if (!j_xy && !j_z) throw ConfigError("'model': preset custom needs j_xy and/or j_z");
      spec.j_xy = j_xy.value_or(0.0);
      spec.j_z = j_z.value_or(0.0);
      break;
  }

  if (const json* att = find(m, "attachments")) {
    if (!att->is_object()) throw ConfigError("'model.attachments' must be an object");
    reject_unknown_keys(*att, "model.attachments", {"spin1", "spin2"});
    spec.attachments = {static_cast<int>(get_integer(*att, "model.attachments", "spin1")),
                        static_cast<int>(get_integer(*att, "model.attachments", "spin2"))};
  } else {
    spec.attachments = {1, 2};
  }
  semantic("model", [&] {
    spec.validate();
    return 0;
  });
  return spec;
}

InitialBlock parse_initial(const json& b, const ModelSpec& spec) {
  reject_unknown_keys(b, "initial", {"site", "e_spin", "static"});
  InitialBlock init;
  if (find(b, "site")) init.site = static_cast<int>(get_integer(b, "initial", "site"));
  semantic("initial.site", [&] { return BasisLayout(spec.n_sites).position(init.site); });
  if (find(b, "e_spin")) {
    init.e_spin = semantic("initial.e_spin", [&] { return parse_spin(get_string(b, "initial", "e_spin")); });
  }
  if (find(b, "static")) {
    init.statics = semantic("initial.static",
                            [&] { return parse_static_preset(get_string(b, "initial", "static")); });
  }
  return init;
}

RunBlock parse_run(const json& b, const ModelSpec& spec) {
  reject_unknown_keys(b, "run", {"hamiltonian", "t_max", "n_points", "effective", "ratios"});
  RunBlock run;
  run.effective = spec.n_sites == 2 ? EffectiveVariant::two_site
                                    : EffectiveVariant::three_site_middle_start;
  if (find(b, "hamiltonian")) {
    run.hamiltonian = semantic(
        "run.hamiltonian", [&] { return parse_hamiltonian_kind(get_string(b, "run", "hamiltonian")); });
  }
  if (find(b, "t_max")) run.grid.t_max = get_number(b, "run", "t_max");
  if (find(b, "n_points")) {
    const long long n = get_integer(b, "run", "n_points");
    if (n < 2) throw ConfigError("'run.n_points' must be at least 2");
    run.grid.n_points = static_cast<std::size_t>(n);
  }
  semantic("run.t_max", [&] {
    run.grid.validate();
    return 0;
  });
  if (find(b, "effective")) {
    run.effective = semantic("run.effective",
                             [&] { return parse_effective_variant(get_string(b, "run", "effective")); });
  }
  if (const json* r = find(b, "ratios")) {
    if (!r->is_array() || r->empty()) throw ConfigError("'run.ratios' must be a nonempty array");
    run.ratios.clear();
    for (const auto& v : *r) {
      if (!v.is_number() || !(v.get<double>() >= 0.0)) {
        throw ConfigError("'run.ratios' entries must be non-negative numbers");
      }
      run.ratios.push_back(v.get<double>());
    }
  }
  // Both Hamiltonians must exist for this lattice.
  semantic("run", [&] {
    (void)build_hamiltonian(spec, run.hamiltonian);
    (void)build_effective_hamiltonian(spec, run.effective);
    return 0;
  });
  return run;
}

OutputBlock parse_output(const json& b, int n_sites) {
  reject_unknown_keys(b, "output", {"path", "columns"});
  OutputBlock out;
  if (find(b, "path")) out.path = get_string(b, "output", "path");
  const auto valid = all_columns(n_sites);
  if (const json* cols = find(b, "columns")) {
    if (!cols->is_array()) throw ConfigError("'output.columns' must be an array of names");
    std::set<Column> chosen{Column::t};
    for (const auto& v : *cols) {
      if (!v.is_string()) throw ConfigError("'output.columns' entries must be strings");
      const auto name = v.get<std::string>();
      const auto it = std::find_if(valid.begin(), valid.end(),
                                   [&](Column c) { return column_name(c) == name; });
      if (it == valid.end()) {
        throw ConfigError("'output.columns': unknown column '" + name + "' for a " +
                          std::to_string(n_sites) + "-site lattice");
      }
      chosen.insert(*it);
    }
    for (Column c : valid) {
      if (chosen.contains(c)) out.columns.push_back(c);
    }
  } else {
    out.columns = valid;
  }
  return out;
}

std::string csv_line(std::initializer_list<std::string_view> cells) {
  std::string line;
  bool first = true;
  for (auto cell : cells) {
    if (!first) line += ',';
    line += cell;
    first = false;
  }
  line += '\n';
  return line;
}

}  // namespace

// ------------------------------------------------------------------ config

StateVector ScenarioConfig::initial_state() const {
  return encode_state(BasisLayout(model.n_sites), initial.site, initial.e_spin, initial.statics);
}

ScenarioConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at line.., column..:" prefix.
    if (const auto pos = what.find(": syntax error"); pos != std::string::npos) what = what.substr(pos + 2);
    throw ConfigError("syntax error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + what);
  }
  if (!root.is_object()) throw ConfigError("scenario must be a JSON object");
  reject_unknown_keys(root, "", {"model", "initial", "run", "output"});

  ScenarioConfig config;
  config.model = parse_model(get_block(root, "model", true));
  config.initial = parse_initial(get_block(root, "initial", false), config.model);
  config.run = parse_run(get_block(root, "run", false), config.model);
  config.output = parse_output(get_block(root, "output", false), config.model.n_sites);
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------- simulate

std::string SimulateResult::summary_line() const {
  std::string line = "summary rows=" + std::to_string(records.size());
  for (const auto& s : summary) {
    if (s.column == Column::t) continue;
    line += ' ';
    line += column_name(s.column);
    line += "[min=" + format_number(s.min) + ",max=" + format_number(s.max) + "]";
  }
  return line;
}

SimulateResult run_simulate(const ScenarioConfig& config) {
  constexpr double kTol = 1e-9;
  const BasisLayout layout(config.model.n_sites);
  SimulateResult result;
  result.records =
      run_trajectory(config.model, config.run.hamiltonian, config.initial_state(), config.run.grid);

  const auto& cols = config.output.columns;
  std::vector<std::vector<double>> table(result.records.size(), std::vector<double>(cols.size()));
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const auto& rec = result.records[i];
    if (std::abs(rec.norm - 1.0) > kTol) {
      throw NumericalInvariantError("norm drift " + format_number(rec.norm - 1.0) + " at t=" +
                                    format_number(rec.t) + " exceeds 1e-9");
    }
    for (std::size_t c = 0; c < cols.size(); ++c) {
      double v = column_value(rec, layout, cols[c]);
      if (is_probability(cols[c])) {
        if (v < -kTol || v > 1.0 + kTol) {
          throw NumericalInvariantError(std::string(column_name(cols[c])) + " = " + format_number(v) +
                                        " at t=" + format_number(rec.t) + " is outside [0,1]");
        }
        v = std::clamp(v, 0.0, 1.0);
      }
      table[i][c] = v;
    }
  }

  std::string csv;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) csv += ',';
    csv += column_name(cols[c]);
  }
  csv += '\n';
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) csv += ',';
      csv += format_number(row[c]);
    }
    csv += '\n';
  }
  result.csv = std::move(csv);

  for (std::size_t c = 0; c < cols.size(); ++c) {
    ColumnSummary s{cols[c], table.front()[c], table.front()[c]};
    for (const auto& row : table) {
      s.min = std::min(s.min, row[c]);
      s.max = std::max(s.max, row[c]);
    }
    result.summary.push_back(s);
  }
  return result;
}

// ----------------------------------------------------------------- compare

std::string run_compare(const ScenarioConfig& config, const std::vector<double>& ratios) {
  if (ratios.empty()) throw ConfigError("compare: no eta/J ratios given");
  const auto reports = compare_ratios(config.model, config.run.effective, config.initial_state(),
                                      config.run.grid, ratios);
  std::string csv = csv_line({"eta_over_j", "max_state_infidelity", "max_full_state_infidelity",
                              "gap_P1", "gap_P_up", "gap_F_plus", "gap_F_minus", "gap_logneg",
                              "gap_F2"});
  for (const auto& r : reports) {
    const auto& g = r.max_gaps;
    csv += csv_line({format_number(r.eta_over_j), format_number(r.max_state_infidelity),
                     format_number(r.max_full_state_infidelity), format_number(g.p1),
                     format_number(g.p_up), format_number(g.f_plus), format_number(g.f_minus),
                     format_number(g.log_negativity), format_number(g.f2)});
  }
  return csv;
}

// ---------------------------------------------------------------- analytic

std::string run_analytic(const ScenarioConfig& config) {
  const ModelKind kind = semantic("model.preset", [&] {
    return parse_model_kind(to_string(config.model.preset));
  });
  const Lattice lattice =
      config.model.n_sites == 2 ? Lattice::two_site : Lattice::three_site_middle_start;
  const double j = config.model.energy_unit();
  std::string csv = csv_line({"t", "alpha_up_sq", "alpha_down_sq"});
  for (double t : config.run.grid.times()) {
    const auto s = analytic_sample(kind, lattice, t, j);
    csv += csv_line({format_number(t), format_number(std::clamp(s.up_probability(), 0.0, 1.0)),
                     format_number(std::clamp(s.down_probability(), 0.0, 1.0))});
  }
  return csv;
}

}  // namespace hopspin
