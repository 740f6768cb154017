#include "kerrcomm/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace kerrcomm {

namespace {

std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

// Parameter checks report "key: message"; turn that into "block.key".
std::string qualify(const std::string& block, const std::string& diagnostic) {
  const auto colon = diagnostic.find(": ");
  return colon == std::string::npos ? block : join_path(block, diagnostic.substr(0, colon));
}

std::string detail(const std::string& diagnostic) {
  const auto colon = diagnostic.find(": ");
  return colon == std::string::npos ? diagnostic : diagnostic.substr(colon + 2);
}

// Walks a YAML tree, collecting every problem with its key path instead of
// stopping at the first one.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  void error(const std::string& path, const std::string& message) {
    errors_.push_back(fmt::format("{}: {}", path, message));
  }

  bool expect_map(const YAML::Node& node, const std::string& path,
                  std::initializer_list<std::string_view> allowed) {
    if (!node.IsMap()) {
      error(path.empty() ? "<root>" : path, "expected a mapping");
      return false;
    }
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        error(join_path(path, key), "unknown key");
      }
    }
    return true;
  }

  void number(const YAML::Node& map, const std::string& path, const char* key, double& target) {
    const YAML::Node node = map[key];
    if (!node) return;
    try {
      if (!node.IsScalar()) throw YAML::Exception(YAML::Mark::null_mark(), "");
      target = node.as<double>();
    } catch (const YAML::Exception&) {
      error(join_path(path, key), "expected a number");
    }
  }

  template <typename Int>
  void integer(const YAML::Node& map, const std::string& path, const char* key, Int& target) {
    const YAML::Node node = map[key];
    if (!node) return;
    try {
      const auto value = node.as<long long>();
      if (value < 0 && std::is_unsigned_v<Int>) {
        error(join_path(path, key), "expected a non-negative integer");
        return;
      }
      target = static_cast<Int>(value);
    } catch (const YAML::Exception&) {
      error(join_path(path, key), "expected an integer");
    }
  }

  std::optional<std::string> text(const YAML::Node& map, const std::string& path,
                                  const char* key) {
    const YAML::Node node = map[key];
    if (!node) return std::nullopt;
    if (!node.IsScalar()) {
      error(join_path(path, key), "expected a string");
      return std::nullopt;
    }
    return node.as<std::string>();
  }

 private:
  std::vector<std::string>& errors_;
};

void read_effective(Reader& r, const YAML::Node& node, EffectiveInputs& e) {
  const std::string path = "effective";
  if (!r.expect_map(node, path,
                    {"omega_a", "omega_m", "omega_c", "omega_b", "kappa_a", "kappa_m", "kappa_c",
                     "gamma_b", "g_am", "G_m", "G_c", "temperature", "delta_a", "delta_m_eff",
                     "delta_c_eff", "delta_k"})) {
    return;
  }
  r.number(node, path, "omega_a", e.omega_a);
  r.number(node, path, "omega_m", e.omega_m);
  r.number(node, path, "omega_c", e.omega_c);
  r.number(node, path, "omega_b", e.omega_b);
  r.number(node, path, "kappa_a", e.kappa_a);
  r.number(node, path, "kappa_m", e.kappa_m);
  r.number(node, path, "kappa_c", e.kappa_c);
  r.number(node, path, "gamma_b", e.gamma_b);
  r.number(node, path, "g_am", e.g_am);
  r.number(node, path, "G_m", e.G_m);
  r.number(node, path, "G_c", e.G_c);
  r.number(node, path, "temperature", e.temperature);
  r.number(node, path, "delta_a", e.delta_a);
  r.number(node, path, "delta_m_eff", e.delta_m_eff);
  r.number(node, path, "delta_c_eff", e.delta_c_eff);
  r.number(node, path, "delta_k", e.delta_k);
}

void read_physical(Reader& r, const YAML::Node& node, SystemParams& p) {
  const std::string path = "physical";
  if (!r.expect_map(node, path,
                    {"omega_a", "omega_m", "omega_c", "omega_b", "kappa_a", "kappa_m", "kappa_c",
                     "gamma_b", "g_am", "g_m", "g_c", "K0", "E_m", "E_c", "w_m", "w_c",
                     "temperature"})) {
    return;
  }
  r.number(node, path, "omega_a", p.omega_a);
  r.number(node, path, "omega_m", p.omega_m);
  r.number(node, path, "omega_c", p.omega_c);
  r.number(node, path, "omega_b", p.omega_b);
  r.number(node, path, "kappa_a", p.kappa_a);
  r.number(node, path, "kappa_m", p.kappa_m);
  r.number(node, path, "kappa_c", p.kappa_c);
  r.number(node, path, "gamma_b", p.gamma_b);
  r.number(node, path, "g_am", p.g_am);
  r.number(node, path, "g_m", p.g_m);
  r.number(node, path, "g_c", p.g_c);
  r.number(node, path, "K0", p.K0);
  r.number(node, path, "E_m", p.E_m);
  r.number(node, path, "E_c", p.E_c);
  r.number(node, path, "w_m", p.w_m);
  r.number(node, path, "w_c", p.w_c);
  r.number(node, path, "temperature", p.temperature);
}

std::vector<ModePair> read_pairs(Reader& r, const YAML::Node& node, const std::string& path) {
  std::vector<ModePair> pairs;
  if (!node.IsSequence()) {
    r.error(path, "expected a list of mode pairs such as [mb, ac]");
    return pairs;
  }
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string item_path = fmt::format("{}[{}]", path, i);
    try {
      auto pair = ModePair::parse(node[i].as<std::string>());
      if (std::find(pairs.begin(), pairs.end(), pair) != pairs.end()) {
        r.error(item_path, fmt::format("pair '{}' listed twice", pair.label()));
      } else {
        pairs.push_back(pair);
      }
    } catch (const std::exception& e) {
      r.error(item_path, e.what());
    }
  }
  if (pairs.empty() && node.size() == 0) r.error(path, "at least one mode pair is required");
  return pairs;
}

std::optional<Axis> read_axis(Reader& r, const YAML::Node& node, const std::string& path) {
  if (!r.expect_map(node, path, {"parameter", "start", "stop", "count"})) return std::nullopt;
  Axis axis;
  bool ok = true;
  if (auto name = r.text(node, path, "parameter")) {
    try {
      axis.parameter = parse_parameter(*name);
    } catch (const std::exception& e) {
      r.error(join_path(path, "parameter"), e.what());
      ok = false;
    }
  } else {
    r.error(join_path(path, "parameter"), "required");
    ok = false;
  }
  for (const char* key : {"start", "stop", "count"}) {
    if (!node[key]) {
      r.error(join_path(path, key), "required");
      ok = false;
    }
  }
  r.number(node, path, "start", axis.start);
  r.number(node, path, "stop", axis.stop);
  r.integer(node, path, "count", axis.count);
  if (!ok) return std::nullopt;
  return axis;
}

std::optional<SweepBlock> read_sweep(Reader& r, const YAML::Node& node) {
  const std::string path = "sweep";
  if (!r.expect_map(node, path, {"axis1", "axis2", "kerr_signs", "pairs", "locus"})) {
    return std::nullopt;
  }
  SweepBlock block;
  if (!node["axis1"]) {
    r.error("sweep.axis1", "required");
  } else if (auto axis = read_axis(r, node["axis1"], "sweep.axis1")) {
    block.axis1 = *axis;
  }
  if (node["axis2"]) block.axis2 = read_axis(r, node["axis2"], "sweep.axis2");
  if (node["kerr_signs"]) {
    block.kerr_signs.clear();
    const YAML::Node signs = node["kerr_signs"];
    if (!signs.IsSequence()) {
      r.error("sweep.kerr_signs", "expected a list");
    } else {
      for (std::size_t i = 0; i < signs.size(); ++i) {
        try {
          block.kerr_signs.push_back(parse_kerr_sign(signs[i].as<std::string>()));
        } catch (const std::exception& e) {
          r.error(fmt::format("sweep.kerr_signs[{}]", i), e.what());
        }
      }
    }
  }
  if (node["pairs"]) {
    block.pairs = read_pairs(r, node["pairs"], "sweep.pairs");
  } else {
    r.error("sweep.pairs", "required");
  }
  if (node["locus"]) {
    const YAML::Node locus = node["locus"];
    if (r.expect_map(locus, "sweep.locus", {"pair"})) {
      if (auto label = r.text(locus, "sweep.locus", "pair")) {
        try {
          block.locus_pair = ModePair::parse(*label);
        } catch (const std::exception& e) {
          r.error("sweep.locus.pair", e.what());
        }
      } else {
        r.error("sweep.locus.pair", "required");
      }
    }
  }
  return block;
}

void read_solver(Reader& r, const YAML::Node& node, SolverBlock& solver) {
  if (!r.expect_map(node, "solver", {"lyapunov", "stability_epsilon", "homotopy_steps"})) return;
  if (auto method = r.text(node, "solver", "lyapunov")) {
    if (*method == "schur") {
      solver.lyapunov = LyapunovMethod::schur;
    } else if (*method == "kronecker") {
      solver.lyapunov = LyapunovMethod::kronecker;
    } else {
      r.error("solver.lyapunov", fmt::format("expected schur or kronecker, got '{}'", *method));
    }
  }
  r.number(node, "solver", "stability_epsilon", solver.stability_epsilon);
  if (!(solver.stability_epsilon >= 0.0)) {
    r.error("solver.stability_epsilon", "must be >= 0");
  }
  r.integer(node, "solver", "homotopy_steps", solver.homotopy_steps);
  if (solver.homotopy_steps < 1) r.error("solver.homotopy_steps", "must be >= 1");
}

ConfigReport check_node(const YAML::Node& root) {
  ConfigReport report;
  Reader r(report.errors);
  RunConfig cfg;
  const auto every_pair = all_mode_pairs();
  cfg.point_pairs.assign(every_pair.begin(), every_pair.end());

  if (!r.expect_map(root, "", {"schema_version", "mode", "effective", "physical", "point",
                                     "sweep", "solver", "provenance"})) {
    return report;
  }
  if (!root["schema_version"]) {
    r.error("schema_version", "required");
  } else {
    r.integer(root, "", "schema_version", cfg.schema_version);
    if (cfg.schema_version != kSchemaVersion) {
      r.error("schema_version", fmt::format("unsupported version {} (expected {})",
                                            cfg.schema_version, kSchemaVersion));
    }
  }

  std::optional<RunMode> mode;
  if (auto text = r.text(root, "", "mode")) {
    if (*text == "effective") {
      mode = RunMode::effective;
    } else if (*text == "physical") {
      mode = RunMode::physical;
    } else {
      r.error("mode", fmt::format("expected effective or physical, got '{}'", *text));
    }
  } else if (!root["mode"]) {
    r.error("mode", "required");
  }

  const bool has_effective = static_cast<bool>(root["effective"]);
  const bool has_physical = static_cast<bool>(root["physical"]);
  if (has_effective && has_physical) {
    r.error("effective", "ambiguous: both 'effective' and 'physical' parameter blocks present");
  }
  if (mode) {
    cfg.mode = *mode;
    if (*mode == RunMode::effective && !has_effective) {
      r.error("effective", "required when mode is effective");
    }
    if (*mode == RunMode::physical && !has_physical) {
      r.error("physical", "required when mode is physical");
    }
    if (*mode == RunMode::effective && has_physical && !has_effective) {
      r.error("physical", "not allowed when mode is effective");
    }
    if (*mode == RunMode::physical && has_effective && !has_physical) {
      r.error("effective", "not allowed when mode is physical");
    }
  }
  if (has_effective) {
    read_effective(r, root["effective"], cfg.effective);
    const auto diag = check(cfg.effective);
    for (const auto& e : diag.errors) r.error(qualify("effective", e), detail(e));
    for (const auto& w : diag.warnings) report.warnings.push_back("effective: " + w);
  }
  if (has_physical) {
    read_physical(r, root["physical"], cfg.physical);
    const auto diag = check(cfg.physical);
    for (const auto& e : diag.errors) r.error(qualify("physical", e), detail(e));
    for (const auto& w : diag.warnings) report.warnings.push_back("physical: " + w);
  }
  if (root["point"]) {
    const YAML::Node point = root["point"];
    if (r.expect_map(point, "point", {"pairs"}) && point["pairs"]) {
      cfg.point_pairs = read_pairs(r, point["pairs"], "point.pairs");
    }
  }
  if (root["solver"]) read_solver(r, root["solver"], cfg.solver);
  if (root["sweep"]) {
    cfg.sweep = read_sweep(r, root["sweep"]);
    if (cfg.sweep && mode == RunMode::physical) {
      r.error("sweep", "sweeps run on effective inputs; use mode: effective");
    }
    if (cfg.sweep && report.errors.empty()) {
      for (const auto& problem : validate(make_sweep_spec(cfg))) {
        // fixed.* problems were already reported against the effective block
        if (problem.rfind("fixed.", 0) != 0) r.error(qualify("sweep", problem), detail(problem));
      }
      if (cfg.sweep->locus_pair) {
        const auto& s = *cfg.sweep;
        if (s.axis1.parameter != SweepParameter::delta_k || !s.axis2 ||
            s.axis2->parameter != SweepParameter::delta_m_eff) {
          r.error("sweep.locus", "requires axis1 = delta_k and axis2 = delta_m_eff");
        }
        if (std::find(s.pairs.begin(), s.pairs.end(), *s.locus_pair) == s.pairs.end()) {
          r.error("sweep.locus.pair", "must be one of sweep.pairs");
        }
      }
    }
  }
  if (report.errors.empty()) report.config = cfg;
  return report;
}

[[noreturn]] void throw_report(const ConfigReport& report) {
  std::string message = "invalid configuration:";
  for (const auto& e : report.errors) message += "\n  " + e;
  throw ConfigError(message);
}

}  // namespace

ConfigReport check_config_text(const std::string& text) {
  try {
    return check_node(YAML::Load(text));
  } catch (const YAML::Exception& e) {
    ConfigReport report;
    report.errors.push_back(fmt::format("<root>: YAML parse error: {}", e.what()));
    return report;
  }
}

ConfigReport check_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ConfigReport report;
    report.errors.push_back(fmt::format("<file>: cannot read '{}'", path.string()));
    return report;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return check_config_text(buffer.str());
}

RunConfig parse_config_text(const std::string& text) {
  auto report = check_config_text(text);
  if (!report.config) throw_report(report);
  return *report.config;
}

RunConfig load_config(const std::filesystem::path& path) {
  auto report = check_config_file(path);
  if (!report.config) throw_report(report);
  return *report.config;
}

namespace {

void emit_axis(YAML::Emitter& y, const char* key, const Axis& axis) {
  y << YAML::Key << key << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "parameter" << YAML::Value << std::string(parameter_name(axis.parameter));
  y << YAML::Key << "start" << YAML::Value << axis.start;
  y << YAML::Key << "stop" << YAML::Value << axis.stop;
  y << YAML::Key << "count" << YAML::Value << axis.count;
  y << YAML::EndMap;
}

void emit_pairs(YAML::Emitter& y, const std::vector<ModePair>& pairs) {
  y << YAML::Flow << YAML::BeginSeq;
  for (const auto& p : pairs) y << p.label();
  y << YAML::EndSeq;
}

}  // namespace

std::string emit_config(const RunConfig& cfg,
                        const std::vector<std::pair<std::string, std::string>>& provenance) {
  YAML::Emitter y;
  y.SetDoublePrecision(17);
  y << YAML::BeginMap;
  y << YAML::Key << "schema_version" << YAML::Value << cfg.schema_version;
  y << YAML::Key << "mode" << YAML::Value
    << (cfg.mode == RunMode::effective ? "effective" : "physical");
  if (cfg.mode == RunMode::effective) {
    const auto& e = cfg.effective;
    y << YAML::Key << "effective" << YAML::Value << YAML::BeginMap;
    const std::pair<const char*, double> fields[] = {
        {"omega_a", e.omega_a},         {"omega_m", e.omega_m},     {"omega_c", e.omega_c},
        {"omega_b", e.omega_b},         {"kappa_a", e.kappa_a},     {"kappa_m", e.kappa_m},
        {"kappa_c", e.kappa_c},         {"gamma_b", e.gamma_b},     {"g_am", e.g_am},
        {"G_m", e.G_m},                 {"G_c", e.G_c},             {"temperature", e.temperature},
        {"delta_a", e.delta_a},         {"delta_m_eff", e.delta_m_eff},
        {"delta_c_eff", e.delta_c_eff}, {"delta_k", e.delta_k}};
    for (const auto& [k, v] : fields) y << YAML::Key << k << YAML::Value << v;
    y << YAML::EndMap;
  } else {
    const auto& p = cfg.physical;
    y << YAML::Key << "physical" << YAML::Value << YAML::BeginMap;
    const std::pair<const char*, double> fields[] = {
        {"omega_a", p.omega_a}, {"omega_m", p.omega_m}, {"omega_c", p.omega_c},
        {"omega_b", p.omega_b}, {"kappa_a", p.kappa_a}, {"kappa_m", p.kappa_m},
        {"kappa_c", p.kappa_c}, {"gamma_b", p.gamma_b}, {"g_am", p.g_am},
        {"g_m", p.g_m},         {"g_c", p.g_c},         {"K0", p.K0},
        {"E_m", p.E_m},         {"E_c", p.E_c},         {"w_m", p.w_m},
        {"w_c", p.w_c},         {"temperature", p.temperature}};
    for (const auto& [k, v] : fields) y << YAML::Key << k << YAML::Value << v;
    y << YAML::EndMap;
  }
  y << YAML::Key << "point" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "pairs" << YAML::Value;
  emit_pairs(y, cfg.point_pairs);
  y << YAML::EndMap;
  if (cfg.sweep) {
    const auto& s = *cfg.sweep;
    y << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    emit_axis(y, "axis1", s.axis1);
    if (s.axis2) emit_axis(y, "axis2", *s.axis2);
    y << YAML::Key << "kerr_signs" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (KerrSign k : s.kerr_signs) y << std::string(kerr_sign_name(k));
    y << YAML::EndSeq;
    y << YAML::Key << "pairs" << YAML::Value;
    emit_pairs(y, s.pairs);
    if (s.locus_pair) {
      y << YAML::Key << "locus" << YAML::Value << YAML::BeginMap;
      y << YAML::Key << "pair" << YAML::Value << s.locus_pair->label();
      y << YAML::EndMap;
    }
    y << YAML::EndMap;
  }
  y << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "lyapunov" << YAML::Value
    << (cfg.solver.lyapunov == LyapunovMethod::schur ? "schur" : "kronecker");
  y << YAML::Key << "stability_epsilon" << YAML::Value << cfg.solver.stability_epsilon;
  y << YAML::Key << "homotopy_steps" << YAML::Value << cfg.solver.homotopy_steps;
  y << YAML::EndMap;
  if (!provenance.empty()) {
    y << YAML::Key << "provenance" << YAML::Value << YAML::BeginMap;
    for (const auto& [k, v] : provenance) y << YAML::Key << k << YAML::Value << v;
    y << YAML::EndMap;
  }
  y << YAML::EndMap;
  return std::string(y.c_str()) + "\n";
}

SweepSpec make_sweep_spec(const RunConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep: block required");
  SweepSpec spec;
  spec.axis1 = cfg.sweep->axis1;
  spec.axis2 = cfg.sweep->axis2;
  spec.fixed = cfg.effective;
  spec.pairs = cfg.sweep->pairs;
  spec.kerr_signs = cfg.sweep->kerr_signs;
  spec.lyapunov = cfg.solver.lyapunov;
  spec.stability_epsilon = cfg.solver.stability_epsilon;
  return spec;
}

}  // namespace kerrcomm
