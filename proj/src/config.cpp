#include "mgsim/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include "tomlplusplus/toml.hpp"

#include "mgsim/presets.hpp"
#include "mgsim/snapshot.hpp"

namespace mgsim {

namespace {

std::string_view scheme_name(Scheme s) {
  return s == Scheme::ExponentialRK2 ? "etd-rk2" : "if-rk2";
}

// One TOML table plus its dotted path for messages.
class Section {
 public:
  Section(const toml::table* table, std::string path) : table_(table), path_(std::move(path)) {}

  bool present() const { return table_ != nullptr; }
  const std::string& path() const { return path_; }

  std::string key_path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  void reject_unknown(std::initializer_list<std::string_view> allowed) const {
    if (!table_) return;
    for (const auto& [key, node] : *table_) {
      if (std::find(allowed.begin(), allowed.end(), key.str()) == allowed.end()) {
        throw ConfigError("unknown key '" + key_path(key.str()) + "'");
      }
    }
  }

  const toml::node* node(std::string_view key) const {
    return table_ ? table_->get(key) : nullptr;
  }

  Section sub(std::string_view key) const {
    const toml::node* n = node(key);
    if (!n) return Section(nullptr, key_path(key));
    if (!n->is_table()) throw ConfigError(key_path(key) + ": expected a table");
    return Section(n->as_table(), key_path(key));
  }

  void read(std::string_view key, double& out) const {
    const toml::node* n = node(key);
    if (!n) return;
    if (auto v = n->as_floating_point()) {
      out = v->get();
    } else if (auto i = n->as_integer()) {
      out = static_cast<double>(i->get());
    } else {
      throw ConfigError(key_path(key) + ": expected a number");
    }
  }

  void read(std::string_view key, int& out) const {
    const toml::node* n = node(key);
    if (!n) return;
    auto i = n->as_integer();
    if (!i) throw ConfigError(key_path(key) + ": expected an integer");
    const auto v = i->get();
    if (v < -(1LL << 30) || v > (1LL << 30)) throw ConfigError(key_path(key) + ": out of range");
    out = static_cast<int>(v);
  }

  void read(std::string_view key, bool& out) const {
    const toml::node* n = node(key);
    if (!n) return;
    auto b = n->as_boolean();
    if (!b) throw ConfigError(key_path(key) + ": expected true or false");
    out = b->get();
  }

  void read(std::string_view key, std::string& out) const {
    const toml::node* n = node(key);
    if (!n) return;
    auto s = n->as_string();
    if (!s) throw ConfigError(key_path(key) + ": expected a string");
    out = s->get();
  }

 private:
  const toml::table* table_;
  std::string path_;
};

InitialMode read_mode(const toml::node& node, const std::string& path) {
  if (!node.is_table()) throw ConfigError(path + ": expected a table {n, m, re, im}");
  Section s(node.as_table(), path);
  s.reject_unknown({"n", "m", "re", "im"});
  if (!s.node("n") || !s.node("m")) throw ConfigError(path + ": n and m are required");
  InitialMode md;
  s.read("n", md.n);
  s.read("m", md.m);
  s.read("re", md.re);
  s.read("im", md.im);
  return md;
}

void rethrow_as_config(const std::exception& e) { throw ConfigError(e.what()); }

}  // namespace

void ScenarioConfig::validate() const {
  if (n_modes_x < 1) throw ConfigError("constraint violated: grid.n_modes_x >= 1");
  if (n_modes_y < 1) throw ConfigError("constraint violated: grid.n_modes_y >= 1");
  if (oversample < 2) throw ConfigError("constraint violated: grid.oversample >= 2");
  if (forcing && modes.theorem_mode()) {
    throw ConfigError("constraint violated: theorem mode requires forcing = none");
  }
  try {
    ModelParams p;
    p.mu = mu;
    p.alpha = alpha;
    p.beta = beta;
    p.validate(modes.theorem_mode());
    stepper.validate();
    if (forcing) {
      manufactured.validate();
      if (manufactured.n0 > n_modes_x || manufactured.m0 > n_modes_y) {
        throw ConfigError("constraint violated: forcing mode (n0, m0) inside the truncation");
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    rethrow_as_config(e);
  }
  switch (initial.kind) {
    case InitialCondition::Kind::Preset:
      if (initial.preset == "manufactured") {
        if (!forcing) throw ConfigError("initial.preset = \"manufactured\" requires params.forcing");
      } else if (!is_preset(initial.preset)) {
        throw ConfigError("initial.preset: unknown preset '" + initial.preset + "'");
      }
      break;
    case InitialCondition::Kind::Modes:
      for (const auto& md : initial.modes) {
        if (std::abs(md.n) > n_modes_x || md.m < 1 || md.m > n_modes_y) {
          throw ConfigError("initial.modes: mode (" + std::to_string(md.n) + ", " +
                            std::to_string(md.m) + ") outside the truncation");
        }
        if (md.n == 0 && md.im != 0.0) throw ConfigError("initial.modes: n = 0 requires im = 0");
      }
      break;
    case InitialCondition::Kind::Snapshot:
      if (initial.snapshot.empty()) throw ConfigError("initial.snapshot: empty path");
      break;
  }
  if (output.snapshot_every < 0) throw ConfigError("constraint violated: output.snapshot_every >= 0");
}

Grid ScenarioConfig::grid() const { return Grid(n_modes_x, n_modes_y, oversample); }

ModelParams ScenarioConfig::model_params() const {
  ModelParams p;
  p.mu = mu;
  p.alpha = alpha;
  p.beta = beta;
  p.nonlinear = nonlinear;
  if (forcing) p.forcing = manufacture_forcing(manufactured, p, grid());
  return p;
}

SpectralField ScenarioConfig::initial_field() const {
  const Grid g = grid();
  switch (initial.kind) {
    case InitialCondition::Kind::Preset:
      if (initial.preset == "manufactured") return manufactured.exact_field(g, 0.0);
      return preset_field(initial.preset, g);
    case InitialCondition::Kind::Modes: {
      SpectralField u(g);
      for (const auto& md : initial.modes) {
        const cplx v(md.re, md.im);
        if (md.n == 0) {
          u(0, md.m) += md.re;
        } else {
          const int n = std::abs(md.n);
          const cplx w = md.n > 0 ? v : std::conj(v);
          u(n, md.m) += w;
          u(-n, md.m) += std::conj(w);
        }
      }
      return u;
    }
    case InitialCondition::Kind::Snapshot: {
      const SpectralField s = read_snapshot(std::filesystem::path(initial.snapshot), oversample);
      SpectralField u(g);
      const int nmax = std::min(s.n_modes_x(), g.n_modes_x());
      const int mmax = std::min(s.n_modes_y(), g.n_modes_y());
      for (int n = -nmax; n <= nmax; ++n) {
        for (int m = 1; m <= mmax; ++m) u(n, m) = s(n, m);
      }
      return u;
    }
  }
  return SpectralField(g);
}

ScenarioConfig parse_config(std::string_view text) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "malformed TOML at line " << e.source().begin.line << ": " << e.description();
    throw ConfigError(msg.str());
  }
  ScenarioConfig c;
  const Section top(&root, "");
  top.reject_unknown({"name", "grid", "params", "forcing", "initial", "stepper", "output", "modes"});
  top.read("name", c.name);

  const Section grid = top.sub("grid");
  grid.reject_unknown({"n_modes_x", "n_modes_y", "oversample"});
  grid.read("n_modes_x", c.n_modes_x);
  grid.read("n_modes_y", c.n_modes_y);
  grid.read("oversample", c.oversample);

  const Section params = top.sub("params");
  params.reject_unknown({"mu", "alpha", "beta", "nonlinear", "forcing"});
  params.read("mu", c.mu);
  params.read("alpha", c.alpha);
  params.read("beta", c.beta);
  params.read("nonlinear", c.nonlinear);
  std::string forcing = "none";
  params.read("forcing", forcing);
  if (forcing == "manufactured") {
    c.forcing = true;
  } else if (forcing != "none") {
    throw ConfigError("params.forcing: expected \"none\" or \"manufactured\"");
  }

  const Section fc = top.sub("forcing");
  fc.reject_unknown({"amplitude", "decay", "n0", "m0"});
  fc.read("amplitude", c.manufactured.amplitude);
  fc.read("decay", c.manufactured.decay);
  fc.read("n0", c.manufactured.n0);
  fc.read("m0", c.manufactured.m0);

  const Section init = top.sub("initial");
  init.reject_unknown({"preset", "modes", "snapshot"});
  const int given = (init.node("preset") ? 1 : 0) + (init.node("modes") ? 1 : 0) +
                    (init.node("snapshot") ? 1 : 0);
  if (given > 1) throw ConfigError("initial: give exactly one of preset, modes, snapshot");
  if (init.node("modes")) {
    c.initial.kind = InitialCondition::Kind::Modes;
    const toml::array* arr = init.node("modes")->as_array();
    if (!arr) throw ConfigError("initial.modes: expected an array of tables");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      c.initial.modes.push_back(read_mode(*arr->get(i), "initial.modes[" + std::to_string(i) + "]"));
    }
  } else if (init.node("snapshot")) {
    c.initial.kind = InitialCondition::Kind::Snapshot;
    init.read("snapshot", c.initial.snapshot);
  } else {
    init.read("preset", c.initial.preset);
  }

  const Section st = top.sub("stepper");
  st.reject_unknown({"dt", "t_end", "cfl_safety", "adapt", "log_every", "scheme"});
  st.read("dt", c.stepper.dt);
  st.read("t_end", c.stepper.t_end);
  st.read("cfl_safety", c.stepper.cfl_safety);
  st.read("adapt", c.stepper.adapt);
  st.read("log_every", c.stepper.log_every);
  std::string scheme(scheme_name(c.stepper.scheme));
  st.read("scheme", scheme);
  if (scheme == "if-rk2") {
    c.stepper.scheme = Scheme::IntegratingFactorRK2;
  } else if (scheme == "etd-rk2") {
    c.stepper.scheme = Scheme::ExponentialRK2;
  } else {
    throw ConfigError("stepper.scheme: expected \"if-rk2\" or \"etd-rk2\"");
  }

  const Section out = top.sub("output");
  out.reject_unknown({"csv", "report", "snapshot_every", "snapshot_dir"});
  out.read("csv", c.output.csv);
  out.read("report", c.output.report);
  out.read("snapshot_every", c.output.snapshot_every);
  out.read("snapshot_dir", c.output.snapshot_dir);

  const Section md = top.sub("modes");
  md.reject_unknown({"theorem1", "theorem2", "mms", "oracle_compare"});
  md.read("theorem1", c.modes.theorem1);
  md.read("theorem2", c.modes.theorem2);
  md.read("mms", c.modes.mms);
  md.read("oracle_compare", c.modes.oracle_compare);

  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  toml::table root;
  root.insert("name", c.name);
  root.insert("grid", toml::table{{"n_modes_x", c.n_modes_x},
                                  {"n_modes_y", c.n_modes_y},
                                  {"oversample", c.oversample}});
  root.insert("params", toml::table{{"mu", c.mu},
                                    {"alpha", c.alpha},
                                    {"beta", c.beta},
                                    {"nonlinear", c.nonlinear},
                                    {"forcing", c.forcing ? "manufactured" : "none"}});
  if (c.forcing) {
    root.insert("forcing", toml::table{{"amplitude", c.manufactured.amplitude},
                                       {"decay", c.manufactured.decay},
                                       {"n0", c.manufactured.n0},
                                       {"m0", c.manufactured.m0}});
  }
  toml::table init;
  switch (c.initial.kind) {
    case InitialCondition::Kind::Preset:
      init.insert("preset", c.initial.preset);
      break;
    case InitialCondition::Kind::Modes: {
      toml::array modes;
      for (const auto& md : c.initial.modes) {
        modes.push_back(toml::table{{"n", md.n}, {"m", md.m}, {"re", md.re}, {"im", md.im}});
      }
      init.insert("modes", std::move(modes));
      break;
    }
    case InitialCondition::Kind::Snapshot:
      init.insert("snapshot", c.initial.snapshot);
      break;
  }
  root.insert("initial", std::move(init));
  root.insert("stepper", toml::table{{"dt", c.stepper.dt},
                                     {"t_end", c.stepper.t_end},
                                     {"cfl_safety", c.stepper.cfl_safety},
                                     {"adapt", c.stepper.adapt},
                                     {"log_every", c.stepper.log_every},
                                     {"scheme", std::string(scheme_name(c.stepper.scheme))}});
  root.insert("output", toml::table{{"csv", c.output.csv},
                                    {"report", c.output.report},
                                    {"snapshot_every", c.output.snapshot_every},
                                    {"snapshot_dir", c.output.snapshot_dir}});
  root.insert("modes", toml::table{{"theorem1", c.modes.theorem1},
                                   {"theorem2", c.modes.theorem2},
                                   {"mms", c.modes.mms},
                                   {"oracle_compare", c.modes.oracle_compare}});
  std::ostringstream os;
  os << root << '\n';
  return os.str();
}

ScenarioConfig preset_scenario(std::string_view name) {
  ScenarioConfig c;
  c.name = std::string(name);
  c.initial.kind = InitialCondition::Kind::Preset;
  c.initial.preset = std::string(name);
  if (name == "zero") {
    c.n_modes_x = 8;
    c.n_modes_y = 8;
    c.stepper.dt = 1e-3;
    c.stepper.t_end = 1e-2;
    c.modes.theorem1 = true;
  } else if (name == "small_data") {
    c.alpha = -0.1;
    c.beta = 0.5;
    c.modes.theorem1 = true;
  } else if (name == "wiener_small") {
    c.modes.theorem1 = true;
    c.modes.theorem2 = true;
  } else if (name == "wiener_large") {
    c.stepper.t_end = 0.05;
    c.stepper.adapt = true;
    c.modes.theorem2 = true;
  } else if (name == "blowup_stress") {
    c.mu = 1e-4;
    c.stepper.dt = 1e-2;
  } else {
    throw ConfigError("unknown scenario '" + std::string(name) + "'");
  }
  c.output.csv = c.name + ".csv";
  c.output.report = c.name + "_report";
  c.validate();
  return c;
}

std::string config_reference() {
  const ScenarioConfig d;
  std::ostringstream os;
  auto num = [](double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  };
  auto flag = [](bool b) { return b ? "true" : "false"; };
  os << "# Scenario configuration\n\n"
     << "Scenarios are TOML files. Every key is optional; unknown keys are rejected with an\n"
     << "error naming the key. This page is generated by `mgsim config-reference`.\n\n"
     << "| key | type | default | meaning |\n"
     << "|---|---|---|---|\n"
     << "| `name` | string | `" << d.name << "` | label used in reports |\n"
     << "| `grid.n_modes_x` | int | " << d.n_modes_x << " | N, x wavenumbers -N..N |\n"
     << "| `grid.n_modes_y` | int | " << d.n_modes_y << " | M, sine modes 1..M |\n"
     << "| `grid.oversample` | int | " << d.oversample << " | physical grid factor, >= 2 |\n"
     << "| `params.mu` | float | " << num(d.mu) << " | viscosity, > 0 |\n"
     << "| `params.alpha` | float | " << num(d.alpha) << " | linear growth; <= 0 in theorem modes |\n"
     << "| `params.beta` | float | " << num(d.beta) << " | coefficient of -beta Tu |\n"
     << "| `params.nonlinear` | bool | " << flag(d.nonlinear) << " | keep u u_x - Tu u_y |\n"
     << "| `params.forcing` | string | `none` | `none` or `manufactured` |\n"
     << "| `forcing.amplitude` | float | " << num(d.manufactured.amplitude)
     << " | a in u_e = a e^{-lambda t} sin(n0 x) sin(m0 pi y) |\n"
     << "| `forcing.decay` | float | " << num(d.manufactured.decay) << " | lambda |\n"
     << "| `forcing.n0` | int | " << d.manufactured.n0 << " | x wavenumber of u_e |\n"
     << "| `forcing.m0` | int | " << d.manufactured.m0 << " | y mode of u_e |\n"
     << "| `initial.preset` | string | `" << d.initial.preset
     << "` | zero, small_data, wiener_small, wiener_large, blowup_stress, manufactured |\n"
     << "| `initial.modes` | array | - | `[{n = 1, m = 1, re = 0.1, im = 0.0}, ...]`, coefficient of "
        "e^{inx} sin(m pi y); the conjugate mode is added |\n"
     << "| `initial.snapshot` | string | - | MGSP snapshot file |\n"
     << "| `stepper.dt` | float | " << num(d.stepper.dt) << " | step (initial step when adaptive) |\n"
     << "| `stepper.t_end` | float | " << num(d.stepper.t_end) << " | final time |\n"
     << "| `stepper.cfl_safety` | float | " << num(d.stepper.cfl_safety)
     << " | fraction of the stable step, in (0, 1] |\n"
     << "| `stepper.adapt` | bool | " << flag(d.stepper.adapt) << " | adaptive step |\n"
     << "| `stepper.log_every` | int | " << d.stepper.log_every << " | diagnostics cadence in steps |\n"
     << "| `stepper.scheme` | string | `" << scheme_name(d.stepper.scheme) << "` | `if-rk2` or `etd-rk2` |\n"
     << "| `output.csv` | string | (none) | diagnostics CSV path |\n"
     << "| `output.report` | string | (none) | report path stem (`.txt` and `.json`) |\n"
     << "| `output.snapshot_every` | int | " << d.output.snapshot_every
     << " | snapshot cadence in steps, 0 = off |\n"
     << "| `output.snapshot_dir` | string | `" << d.output.snapshot_dir << "` | snapshot directory |\n"
     << "| `modes.theorem1` | bool | false | check the maximum principle and energy clauses |\n"
     << "| `modes.theorem2` | bool | false | check the Wiener-norm clauses |\n"
     << "| `modes.mms` | bool | false | run the manufactured-solution study |\n"
     << "| `modes.oracle_compare` | bool | false | compare against the finite-difference solver |\n"
     << "\nTheorem modes require `alpha <= 0`, `forcing = \"none\"` and a mean-zero initial field.\n";
  return os.str();
}

}  // namespace mgsim
