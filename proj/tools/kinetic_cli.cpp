#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <numbers>
#include <string>

#include "kinetic/errors.hpp"
#include "kinetic/runner.hpp"
#include "kinetic/spectrum.hpp"
#include "kinetic/system.hpp"

namespace {

using namespace kinetic;

constexpr int kExitConfig = 2;
constexpr int kExitRejected = 3;

// Options shared by `run` and `plan`; each one maps onto a RunConfig key.
struct RunOptions {
  std::string config;
  std::map<std::string, std::string> values;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "key=value file applied before the flags");
    const std::pair<const char*, const char*> keys[] = {
        {"scenario", "catalogue scenario"},
        {"preset", "paper or desk"},
        {"integrator", "fe, rk4, pfe, prk4, tpfe, tprk4"},
        {"model", "none, bgk, bgk_rho, boltzmann"},
        {"nu", "constant BGK collision frequency"},
        {"n-theta", "angles of the spectral Boltzmann quadrature"},
        {"epsilon", "Knudsen number (inf for collisionless)"},
        {"h0", "innermost step"},
        {"dt", "step of fe / rk4"},
        {"cfl", "outer step as a multiple of the minimum cell size"},
        {"t-end", "end time"},
        {"K", "inner damping steps"},
        {"levels", "projective levels"},
        {"k", "WENO order parameter"},
        {"snapshots", "number of evenly spaced snapshots"},
        {"M", "comma separated extrapolation factors"},
        {"out", "output directory"},
    };
    for (const auto& [key, help] : keys) cmd->add_option(std::string("--") + key, values[key], help);
  }

  RunConfig resolve_config() const {
    RunConfig cfg;
    if (!config.empty()) load_config_file(cfg, config);
    for (const auto& [key, value] : values)
      if (!value.empty()) apply_setting(cfg, key, value);
    if (cfg.scenario.empty()) throw ConfigError("no scenario given (--scenario or config file)");
    return cfg;
  }
};

struct SpectrumOptions {
  std::string model = "bgk";
  std::string nu = "1";
  double epsilon = 1e-3;
  int J = 16;
  int vdims = 2;
  int cells = 8;
  double extent = 8.0;
  bool transport = false;
  std::string csv;
};

int do_run(const RunOptions& o) {
  const RunConfig cfg = o.resolve_config();
  const RunResult r = run(cfg);
  std::printf("%s: reached t=%.6g, %zu snapshots in %s\n", cfg.scenario.c_str(),
              r.manifest["time_reached"].get<double>(), r.snapshot_files.size(), cfg.out.c_str());
  return 0;
}

int do_plan(const RunOptions& o) {
  const ResolvedRun r = resolve(o.resolve_config());
  nlohmann::json j;
  j["scenario"] = r.scenario.name;
  j["integrator"] = r.integrator;
  j["fastest_rate"] = r.fastest_rate;
  j["plan"] = plan_json(r.plan);
  j["speedup"] = speedup(r.plan);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int do_spectrum(const SpectrumOptions& o) {
  if (o.model != "bgk") throw ConfigError("spectrum: only --model bgk is supported");
  if (o.nu != "1" && o.nu != "rho") throw ConfigError("spectrum: --nu must be 1 or rho");
  if (!(o.epsilon > 0.0)) throw ConfigError("spectrum: epsilon must be positive");
  const bool constant = o.nu == "1";
  const VelocityGrid v = VelocityGrid::make(o.vdims, o.extent, o.J);

  SpectrumReport rep;
  if (constant && !o.transport) {
    rep = spectrum(build_linearized_bgk(v, 1.0, o.epsilon));
  } else {
    // finite-difference Jacobian about a local Maxwellian with rho = 1 + sin(2 pi x) / 2
    const SpatialGrid s = SpatialGrid::line(0.0, 1.0, o.cells, Boundary::periodic);
    if (static_cast<long>(s.size()) * v.size() > kMaxDenseSize)
      throw ConfigError("spectrum: cells * velocity nodes exceeds " + std::to_string(kMaxDenseSize));
    Eigen::MatrixXd f(v.size(), s.size());
    for (int c = 0; c < s.size(); ++c)
      f.col(c) = maxwellian(v, 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * s.center(0, c)),
                            Eigen::Vector2d::Zero(), 1.0);
    auto sys = std::make_shared<KineticSystem>(
        s, v, WenoConfig{}, constant ? CollisionModel::bgk(1.0) : CollisionModel::bgk_density(), o.epsilon,
        o.transport);
    rep = spectrum(jacobian_probe([sys](const Eigen::MatrixXd& x, Eigen::MatrixXd& out) { sys->rhs(x, out); }, f));
  }

  const auto& ev = rep.eigenvalues;
  double fast_min = INFINITY, fast_max = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i)
    if (rep.fast[i]) {
      fast_min = std::min(fast_min, std::abs(ev[i]));
      fast_max = std::max(fast_max, std::abs(ev[i]));
    }
  std::printf("eigenvalues: %zu  slow: %d  fast: %zu\n", ev.size(), rep.slow_count(), ev.size() - rep.slow_count());
  if (fast_max > 0.0) std::printf("fast |lambda| in [%.6g, %.6g]\n", fast_min, fast_max);
  std::printf("gap ratio: %.6g\n", rep.gap_ratio);
  if (!o.csv.empty()) write_eigenvalues_csv(o.csv, rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic BGK / Boltzmann solver with projective time integration"};
  app.require_subcommand(1);

  RunOptions run_opts, plan_opts;
  CLI::App* run_cmd = app.add_subcommand("run", "integrate a scenario and write snapshots");
  run_opts.attach(run_cmd);
  CLI::App* plan_cmd = app.add_subcommand("plan", "print the resolved integrator plan");
  plan_opts.attach(plan_cmd);

  SpectrumOptions sp;
  CLI::App* spec_cmd = app.add_subcommand("spectrum", "eigenvalues of a linearized BGK operator");
  spec_cmd->add_option("--model", sp.model, "collision model (bgk)");
  spec_cmd->add_option("--nu", sp.nu, "collision frequency: 1 or rho");
  spec_cmd->add_option("--epsilon", sp.epsilon, "Knudsen number");
  spec_cmd->add_option("--J", sp.J, "velocity nodes per axis");
  spec_cmd->add_option("--vdims", sp.vdims, "velocity dimensions (1 or 2)");
  spec_cmd->add_option("--V", sp.extent, "velocity box half-width");
  spec_cmd->add_option("--cells", sp.cells, "spatial cells of the probe grid");
  spec_cmd->add_flag("--transport", sp.transport, "include free transport (Jacobian probe)");
  spec_cmd->add_option("--csv", sp.csv, "write re,im,cluster rows here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run_cmd) return do_run(run_opts);
    if (*plan_cmd) return do_plan(plan_opts);
    return do_spectrum(sp);
  } catch (const StepRejected& e) {
    std::cerr << "step rejected: " << e.what() << "\n";
    return kExitRejected;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
