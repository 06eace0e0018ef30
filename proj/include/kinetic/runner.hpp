#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kinetic/integrators.hpp"
#include "kinetic/scenarios.hpp"

namespace kinetic {

/// Overrides on top of a catalogue scenario. Unset fields keep the scenario defaults.
struct RunConfig {
  std::string scenario;
  Preset preset = Preset::paper;
  /// fe, rk4, pfe, prk4, tpfe or tprk4.
  std::optional<std::string> integrator;
  std::optional<std::string> model;  // none, bgk, bgk_rho, boltzmann
  std::optional<double> nu;
  std::optional<int> n_theta;
  std::optional<double> epsilon;
  std::optional<double> h0;
  /// Step of the plain integrators (fe, rk4).
  std::optional<double> dt;
  std::optional<double> cfl;
  std::optional<double> t_end;
  std::optional<int> K;
  std::optional<int> levels;
  std::optional<int> weno_k;
  std::optional<int> snapshots;
  /// Literal extrapolation factors; when set they define the plan exactly.
  std::vector<double> M;
  std::string out = "out";
  bool write_files = true;
};

/// Applies one `key=value` setting; throws ConfigError for unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
/// Reads a flat `key=value` file (`#` starts a comment).
void load_config_file(RunConfig& cfg, const std::string& path);

struct ResolvedRun {
  Scenario scenario;
  std::string integrator;
  IntegratorPlan plan;
  /// Largest collision frequency of the initial field, used for h0 = epsilon / rate.
  double fastest_rate = 0.0;
};

ResolvedRun resolve(const RunConfig& cfg);
/// Same, starting from an explicit scenario (the name in cfg is ignored).
ResolvedRun resolve(Scenario scenario, const RunConfig& cfg);

nlohmann::json plan_json(const IntegratorPlan& plan);

struct RunResult {
  nlohmann::json manifest;
  std::vector<std::string> snapshot_files;
  std::vector<double> snapshot_times;
  DistributionField final_field;
  bool rejected = false;
};

/// Integrates to the end time, writing snapshots and manifest.json into cfg.out when
/// write_files is set. A step rejection flushes the last accepted state as
/// `<scenario>_last.csv`, records it in the manifest, and rethrows.
RunResult run(const RunConfig& cfg);
RunResult run(const ResolvedRun& resolved, const RunConfig& cfg);

}  // namespace kinetic
