#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mgsim/mms.hpp"
#include "mgsim/operators.hpp"
#include "mgsim/stepper.hpp"

namespace mgsim {

/// Parse or validation failure; the message names the offending key or clause.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct InitialMode {
  int n = 1;
  int m = 1;
  double re = 0.0;
  double im = 0.0;
  bool operator==(const InitialMode&) const = default;
};

/// Exactly one of preset, modes or snapshot. The preset "manufactured" starts
/// from the exact solution of the [forcing] case.
struct InitialCondition {
  enum class Kind { Preset, Modes, Snapshot };
  Kind kind = Kind::Preset;
  std::string preset = "zero";
  std::vector<InitialMode> modes;
  std::string snapshot;
  bool operator==(const InitialCondition&) const = default;
};

struct OutputConfig {
  std::string csv;
  std::string report;
  /// Snapshot cadence in steps (0 = none); files go to snapshot_dir.
  int snapshot_every = 0;
  std::string snapshot_dir = "snapshots";
  bool operator==(const OutputConfig&) const = default;
};

struct ModeFlags {
  bool theorem1 = false;
  bool theorem2 = false;
  bool mms = false;
  bool oracle_compare = false;
  bool theorem_mode() const { return theorem1 || theorem2; }
  bool operator==(const ModeFlags&) const = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  int n_modes_x = 32;
  int n_modes_y = 32;
  int oversample = 2;
  double mu = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  bool nonlinear = true;
  /// false: F = 0; true: F manufactured from `manufactured`.
  bool forcing = false;
  ManufacturedCase manufactured;
  InitialCondition initial;
  StepperConfig stepper;
  OutputConfig output;
  ModeFlags modes;

  /// Throws ConfigError naming the clause.
  void validate() const;
  Grid grid() const;
  /// Parameters on grid(); builds the manufactured forcing when enabled.
  ModelParams model_params() const;
  /// Reads the snapshot file for Kind::Snapshot (throws SnapshotError).
  SpectralField initial_field() const;

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config(std::string_view text);
/// Throws ConfigError when the file cannot be read.
ScenarioConfig load_config(const std::filesystem::path& path);
/// TOML text that parse_config maps back to an equal config.
std::string serialize_config(const ScenarioConfig& c);

/// The shipped scenario of a preset (grid, parameters, stepper, checks).
ScenarioConfig preset_scenario(std::string_view name);

/// Markdown reference of every key with its default.
std::string config_reference();

}  // namespace mgsim
