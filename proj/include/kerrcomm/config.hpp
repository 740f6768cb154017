#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kerrcomm/core.hpp"
#include "kerrcomm/entanglement.hpp"
#include "kerrcomm/lyapunov.hpp"
#include "kerrcomm/sweep.hpp"

namespace kerrcomm {

inline constexpr int kSchemaVersion = 1;

enum class RunMode { effective, physical };

struct SweepBlock {
  Axis axis1;
  std::optional<Axis> axis2;
  std::vector<KerrSign> kerr_signs = {KerrSign::given};
  std::vector<ModePair> pairs;
  /// When set, the sweep must be (delta_k x delta_m_eff) and the ridge of
  /// this pair is fitted.
  std::optional<ModePair> locus_pair;
};

struct SolverBlock {
  LyapunovMethod lyapunov = LyapunovMethod::schur;
  double stability_epsilon = kDefaultStabilityEpsilon;
  int homotopy_steps = 40;
};

/// A parsed, validated run description (YAML on disk).
struct RunConfig {
  int schema_version = kSchemaVersion;
  RunMode mode = RunMode::effective;
  EffectiveInputs effective;
  SystemParams physical;
  std::vector<ModePair> point_pairs;
  std::optional<SweepBlock> sweep;
  SolverBlock solver;
};

struct ConfigReport {
  std::optional<RunConfig> config;  ///< set iff errors is empty
  std::vector<std::string> errors;  ///< "key.path: message"
  std::vector<std::string> warnings;
};

ConfigReport check_config_text(const std::string& text);
ConfigReport check_config_file(const std::filesystem::path& path);

/// Throws ConfigError listing every problem.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

/// Fully resolved YAML for `config`, with an optional provenance block
/// (ignored when the file is read back).
std::string emit_config(const RunConfig& config,
                        const std::vector<std::pair<std::string, std::string>>& provenance = {});

SweepSpec make_sweep_spec(const RunConfig& config);

}  // namespace kerrcomm
