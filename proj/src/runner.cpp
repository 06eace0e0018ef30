#include "kinetic/runner.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kinetic/errors.hpp"
#include "kinetic/planner.hpp"
#include "kinetic/snapshot.hpp"

namespace kinetic {

namespace {

std::string normalize_key(std::string k) {
  std::string out;
  for (char c : k) {
    if (c == '-') c = '_';
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  while (!out.empty() && out.front() == '_') out.erase(out.begin());
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || trim(v.substr(pos)) != "") throw ConfigError("setting " + key + ": '" + v + "' is not a number");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError("setting " + key + ": '" + v + "' is not an integer");
  return static_cast<int>(x);
}

const std::vector<std::string> kIntegrators = {"fe", "rk4", "pfe", "prk4", "tpfe", "tprk4"};

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = normalize_key(raw_key);
  const std::string v = trim(raw_value);
  if (key == "scenario") cfg.scenario = v;
  else if (key == "preset") cfg.preset = parse_preset(v);
  else if (key == "integrator") {
    if (std::find(kIntegrators.begin(), kIntegrators.end(), v) == kIntegrators.end())
      throw ConfigError("unknown integrator '" + v + "' (fe, rk4, pfe, prk4, tpfe, tprk4)");
    cfg.integrator = v;
  } else if (key == "model") {
    CollisionModel::parse(v);
    cfg.model = v;
  } else if (key == "nu") cfg.nu = to_double(key, v);
  else if (key == "n_theta") cfg.n_theta = to_int(key, v);
  else if (key == "epsilon") cfg.epsilon = v == "inf" ? kCollisionless : to_double(key, v);
  else if (key == "h0") cfg.h0 = to_double(key, v);
  else if (key == "dt") cfg.dt = to_double(key, v);
  else if (key == "cfl") cfg.cfl = to_double(key, v);
  else if (key == "t_end") cfg.t_end = to_double(key, v);
  else if (key == "K") cfg.K = to_int(key, v);
  else if (key == "levels") cfg.levels = to_int(key, v);
  else if (key == "k" || key == "weno_k") cfg.weno_k = to_int(key, v);
  else if (key == "snapshots") cfg.snapshots = to_int(key, v);
  else if (key == "M") {
    cfg.M.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trim(item).empty()) cfg.M.push_back(to_double(key, item));
  } else if (key == "out") cfg.out = v;
  else throw ConfigError("unknown setting '" + raw_key + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

ResolvedRun resolve(const RunConfig& cfg) {
  if (cfg.scenario.empty()) throw ConfigError("no scenario given");
  return resolve(find_scenario(cfg.scenario, cfg.preset), cfg);
}

ResolvedRun resolve(Scenario s, const RunConfig& cfg) {
  if (cfg.model) s.model = CollisionModel::parse(*cfg.model, cfg.nu.value_or(1.0), cfg.n_theta.value_or(4));
  else {
    if (cfg.nu) s.model.nu0 = *cfg.nu;
    if (cfg.n_theta) s.model.n_theta = *cfg.n_theta;
  }
  if (cfg.epsilon) s.epsilon = *cfg.epsilon;
  if (cfg.t_end) s.t_end = *cfg.t_end;
  if (cfg.weno_k) s.weno_k = *cfg.weno_k;
  if (cfg.integrator) s.integrator = *cfg.integrator;
  if (cfg.K) s.K = *cfg.K;
  if (cfg.cfl) s.cfl = *cfg.cfl;
  if (cfg.levels) s.levels = *cfg.levels;
  if (cfg.snapshots) s.snapshots = *cfg.snapshots;
  if (!(s.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(s.t_end >= 0.0)) throw ConfigError("end time must be non-negative");
  if (s.snapshots < 1) throw ConfigError("need at least one snapshot");
  WenoConfig{s.weno_k}.validate();

  // building the system validates the model against the grids
  KineticSystem sys(s.space, s.velocity, WenoConfig{s.weno_k}, s.model, s.epsilon);
  const DistributionField f0 = initial_field(s);
  const double rate = sys.fastest_rate(f0.values);

  double h0 = 0.0;
  if (cfg.h0) h0 = *cfg.h0;
  else if (rate > 0.0 && std::isfinite(s.epsilon)) h0 = s.epsilon / rate;
  const double dx = s.space.min_spacing();
  const std::string& integ = s.integrator;

  auto need_h0 = [&] {
    if (!(h0 > 0.0) || !std::isfinite(h0))
      throw ConfigError("projective integrators need a finite innermost step; set h0 or use a collisional model");
  };

  if (integ == "fe" || integ == "rk4") {
    double dt = cfg.dt.value_or(0.1 * dx);
    if (!cfg.dt && h0 > 0.0 && std::isfinite(h0)) dt = std::min(dt, h0);
    if (!(dt > 0.0)) throw ConfigError("time step must be positive");
    return {s, integ, IntegratorPlan::plain(dt, RkTableau::by_name(integ)), rate};
  }
  const RkTableau tab = RkTableau::by_name(integ == "pfe" || integ == "tpfe" ? "fe" : "rk4");
  if (integ == "pfe" || integ == "prk4") {
    need_h0();
    if (!cfg.M.empty()) {
      if (cfg.M.size() != 1) throw ConfigError("single-level projective runs take one M value");
      return {s, integ, IntegratorPlan::from_factors(h0, {s.K}, cfg.M, tab), rate};
    }
    PlannerInput in;
    in.epsilon = h0;
    in.fastest_rate = 1.0;
    in.dx = dx;
    in.cfl = s.cfl;
    in.K = s.K;
    return {s, integ, plan_two_cluster(in, tab), rate};
  }
  if (integ == "tpfe" || integ == "tprk4") {
    need_h0();
    if (!cfg.M.empty())
      return {s, integ, IntegratorPlan::from_factors(h0, std::vector<int>(cfg.M.size(), s.K), cfg.M, tab), rate};
    const int L = s.levels > 0 ? s.levels : 2;
    const std::vector<double> preferred = static_cast<int>(s.M.size()) == L ? s.M : std::vector<double>{};
    return {s, integ, plan_telescopic(h0, s.cfl * dx, s.K, L, tab, preferred), rate};
  }
  throw ConfigError("unknown integrator '" + integ + "'");
}

nlohmann::json plan_json(const IntegratorPlan& plan) {
  return {{"levels", plan.levels()},
          {"h", plan.steps()},
          {"K", plan.inner_counts()},
          {"M", plan.factors()},
          {"tableau", plan.tableau().name()},
          {"speedup", speedup(plan)}};
}

namespace {

nlohmann::json grid_json(const SpatialGrid& g) {
  nlohmann::json j;
  j["dims"] = g.dims();
  for (int d = 0; d < g.dims(); ++d) {
    j["counts"].push_back(g.count(d));
    j["lower"].push_back(g.lower(d));
    j["upper"].push_back(g.upper(d));
    j["boundary"].push_back(g.boundary(d) == Boundary::periodic ? "periodic" : "outflow");
  }
  return j;
}

nlohmann::json grid_json(const VelocityGrid& g) {
  nlohmann::json j;
  j["dims"] = g.dims();
  j["extent"] = g.extent();
  for (int d = 0; d < g.dims(); ++d) j["counts"].push_back(g.count(d));
  return j;
}

std::vector<double> snapshot_times(double t_end, int n) {
  if (t_end == 0.0) return {0.0};
  if (n == 1) return {t_end};
  std::vector<double> t(n);
  for (int s = 0; s < n; ++s) t[s] = s == n - 1 ? t_end : t_end * s / (n - 1);
  return t;
}

std::string snapshot_name(const std::string& scenario, int idx) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "_%03d.csv", idx);
  return scenario + buf;
}

}  // namespace

RunResult run(const RunConfig& cfg) { return run(resolve(cfg), cfg); }

RunResult run(const ResolvedRun& r, const RunConfig& cfg) {
  const Scenario& s = r.scenario;
  const auto wall0 = std::chrono::steady_clock::now();
  KineticSystem sys(s.space, s.velocity, WenoConfig{s.weno_k}, s.model, s.epsilon);
  DistributionField field = initial_field(s);

  namespace fs = std::filesystem;
  if (cfg.write_files) {
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + cfg.out + ": " + ec.message());
  }

  RunResult result{{}, {}, {}, field, false};
  nlohmann::json& m = result.manifest;
  m["scenario"] = s.name;
  m["preset"] = cfg.preset == Preset::desk ? "desk" : "paper";
  m["space"] = grid_json(s.space);
  m["velocity"] = grid_json(s.velocity);
  m["model"] = s.model.name();
  if (s.model.kind == CollisionModel::Kind::bgk_constant) m["nu"] = s.model.nu0;
  if (s.model.kind == CollisionModel::Kind::boltzmann) {
    m["n_theta"] = s.model.n_theta;
    m["b0"] = s.model.b0;
  }
  m["epsilon"] = std::isinf(s.epsilon) ? nlohmann::json("inf") : nlohmann::json(s.epsilon);
  m["weno"] = {{"k", s.weno_k}, {"delta", WenoConfig{}.delta}};
  m["integrator"] = r.integrator;
  m["fastest_rate"] = r.fastest_rate;
  m["plan"] = plan_json(r.plan);
  m["speedup"] = speedup(r.plan);
  m["t_end"] = s.t_end;

  auto emit = [&](const Eigen::MatrixXd& values, double t, const std::string& name) {
    result.snapshot_times.push_back(t);
    if (!cfg.write_files) return;
    DistributionField view(s.space, s.velocity, s.epsilon);
    view.values = values;
    const std::string path = (fs::path(cfg.out) / name).string();
    write_snapshot(path, t, s.name, s.space, field_moments(view));
    result.snapshot_files.push_back(name);
  };
  auto finish = [&](const std::string& status, const TelescopicIntegrator<Eigen::MatrixXd>& integ) {
    m["status"] = status;
    m["time_reached"] = integ.time();
    m["steps_per_level"] = integ.steps_per_level();
    m["rhs_evaluations"] = integ.rhs_evaluations();
    m["snapshots"] = result.snapshot_files;
    m["snapshot_times"] = result.snapshot_times;
    m["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    if (cfg.write_files) {
      std::ofstream os(fs::path(cfg.out) / "manifest.json");
      os << m.dump(2) << "\n";
      if (!os) throw std::runtime_error("cannot write manifest in " + cfg.out);
    }
  };

  TelescopicIntegrator<Eigen::MatrixXd> integ(
      r.plan, [&sys](const Eigen::MatrixXd& f, Eigen::MatrixXd& out) { sys.rhs(f, out); });
  Eigen::MatrixXd& y = field.values;
  Eigen::MatrixXd last_good = y;
  double last_time = 0.0;

  const std::vector<double> times = snapshot_times(s.t_end, s.snapshots);
  const double H = r.plan.outer_step();
  int idx = 0;
  // intermediate snapshots land on the first step boundary at or past the requested time so
  // the step grid is never broken; only t_end is reached with a shortened step
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double target = times[k];
    const bool last = k + 1 == times.size();
    try {
      while (integ.time() + H <= target + 1e-12 * H) {
        integ.step(y);
        last_good = y;
        last_time = integ.time();
      }
      const double rest = target - integ.time();
      if (rest > 1e-12 * H) {
        if (!last && integ.time() + H <= s.t_end + 1e-12 * H)
          integ.step(y);
        else
          integ.advance(y, rest);
      }
      last_good = y;
      last_time = integ.time();
    } catch (const StepRejected& e) {
      result.rejected = true;
      emit(last_good, last_time, s.name + "_last.csv");
      m["message"] = e.what();
      finish("rejected", integ);
      throw;
    }
    emit(y, last ? target : integ.time(), snapshot_name(s.name, static_cast<int>(k)));
  }
  finish("ok", integ);
  result.final_field = field;
  return result;
}

}  // namespace kinetic
