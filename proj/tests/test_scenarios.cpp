#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kinetic/errors.hpp"
#include "kinetic/integrators.hpp"
#include "kinetic/runner.hpp"
#include "kinetic/scenarios.hpp"
#include "kinetic/snapshot.hpp"
#include "kinetic/system.hpp"

using namespace kinetic;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("kinetic_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double total_mass(const DistributionField& f) { return f.values.sum(); }

}  // namespace

TEST_CASE("catalogue examples") {
  const auto all = catalogue();
  REQUIRE(all.size() == 5);
  const Scenario sod = find_scenario("sod_1d1d");
  CHECK(sod.initial(0.75, 0).rho == 0.125);
  CHECK(sod.initial(0.25, 0).rho == 1.0);
  CHECK(sod.velocity.size() == 80);
  CHECK(sod.space.spacing(0) == doctest::Approx(0.01));
  const Scenario sb = find_scenario("shock_bubble");
  CHECK(sb.initial(0.5, 0.0).rho == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(sb.initial(-1.5, 0.3).rho == doctest::Approx(16.0 / 7.0));
  CHECK(sb.space.count(0) == 200);
  CHECK(find_scenario("shock_bubble", Preset::desk).space.count(1) == 13);
  const Scenario ds = find_scenario("double_sod");
  CHECK(ds.initial(0.25, -0.25).rho == 0.1);
  CHECK(ds.initial(0.25, 0.25).rho == 1.0);
  const Scenario kh = find_scenario("kelvin_helmholtz");
  CHECK(kh.initial(0.1, 0.2).u(0) == 0.5);
  CHECK(kh.initial(0.1, -0.2).rho == 2.0);
  CHECK(kh.space.boundary(0) == Boundary::periodic);
  CHECK(kh.space.boundary(1) == Boundary::outflow);
  CHECK_THROWS_AS(find_scenario("blast_wave"), ConfigError);
  // the initial distribution is the Maxwellian of the initial moments
  const DistributionField f = initial_field(sb);
  const CoreMoments m = moments(f.velocity, f.slice(f.space.index(10, 3)));
  CHECK(m.rho == doctest::Approx(16.0 / 7.0).epsilon(1e-8));
}

TEST_CASE("snapshot format") {
  CHECK(snapshot_header(1, 1) == "x,rho,ux,T,qx,P,E,Ma");
  CHECK(snapshot_header(2, 2) == "x,y,rho,ux,uy,T,qx,qy,P,E,Ma");
  CHECK(snapshot_header(1, 2) == "x,rho,ux,uy,T,qx,qy,P,E,Ma");

  const Scenario s = find_scenario("double_sod", Preset::desk);
  const DistributionField f = initial_field(s);
  const fs::path dir = scratch_dir("snap");
  fs::create_directories(dir);
  write_snapshot((dir / "a.csv").string(), 0.0, s.name, s.space, field_moments(f));
  std::ifstream in(dir / "a.csv");
  std::string l1, l2;
  std::getline(in, l1);
  std::getline(in, l2);
  CHECK(l1 == "# t=0 scenario=double_sod");
  CHECK(l2 == "x,y,rho,ux,uy,T,qx,qy,P,E,Ma");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 32 * 32);
  CHECK_THROWS(write_snapshot((dir / "missing" / "b.csv").string(), 0.0, s.name, s.space, field_moments(f)));
  fs::remove_all(dir);
}

TEST_CASE("config parsing") {
  RunConfig c;
  apply_setting(c, "scenario", "sod_1d1d");
  apply_setting(c, "--integrator", "tprk4");
  apply_setting(c, "M", "14.24, 11.83");
  apply_setting(c, "epsilon", "1e-5");
  apply_setting(c, "t-end", "0.1");
  CHECK(c.integrator == "tprk4");
  CHECK(c.M == std::vector<double>{14.24, 11.83});
  CHECK(*c.t_end == 0.1);
  CHECK_THROWS_AS(apply_setting(c, "integrator", "rk9"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "bogus", "1"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "K", "2.5"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "epsilon", "small"), ConfigError);

  const fs::path dir = scratch_dir("cfg");
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "run.cfg");
    os << "# comment\nscenario = kelvin_helmholtz\npreset=desk\nk=3 # trailing\n";
  }
  RunConfig d;
  load_config_file(d, (dir / "run.cfg").string());
  CHECK(d.scenario == "kelvin_helmholtz");
  CHECK(d.preset == Preset::desk);
  CHECK(*d.weno_k == 3);
  fs::remove_all(dir);
}

TEST_CASE("plan resolution") {
  RunConfig c;
  c.scenario = "double_sod";
  c.M = {6.66, 4.80};
  c.h0 = 5e-5;
  const ResolvedRun r = resolve(c);
  CHECK(speedup(r.plan) == doctest::Approx(5.86).epsilon(1e-3));
  CHECK(r.plan.levels() == 2);

  RunConfig d;
  d.scenario = "double_sod";
  const ResolvedRun rd = resolve(d);
  CHECK(rd.plan.h(0) == doctest::Approx(5e-5).epsilon(1e-8));
  CHECK(rd.plan.outer_step() == doctest::Approx(0.3 / 64).epsilon(1e-10));
  CHECK(rd.plan.M(0) == 6.66);

  RunConfig e;
  e.scenario = "sod_1d1d";
  e.epsilon = 0.1;
  CHECK_THROWS_AS(resolve(e), InfeasiblePlan);
  e.integrator = "rk4";
  CHECK(resolve(e).plan.h(0) == doctest::Approx(1e-3));

  RunConfig f;
  f.scenario = "sod_1d1d";
  f.integrator = "prk4";
  f.K = 2;
  CHECK(resolve(f).plan.M(0) == doctest::Approx(397.0).epsilon(1e-9));
}

TEST_CASE("runs: zero end time and plain RK4") {
  const fs::path dir = scratch_dir("run0");
  RunConfig c;
  c.scenario = "double_sod";
  c.preset = Preset::desk;
  c.t_end = 0.0;
  c.out = dir.string();
  const RunResult r = run(c);
  CHECK(r.snapshot_files == std::vector<std::string>{"double_sod_000.csv"});
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(r.manifest["status"] == "ok");

  RunConfig k;
  k.scenario = "sod_1d1d";
  k.integrator = "rk4";
  k.epsilon = 0.1;
  k.dt = 0.001;
  k.out = (dir / "rk4").string();
  const RunResult rk = run(k);
  CHECK(rk.manifest["steps_per_level"][0] == 150);
  CHECK(rk.manifest["time_reached"].get<double>() == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(rk.snapshot_files.size() == 5);
  CHECK(rk.snapshot_times[1] == doctest::Approx(0.038).epsilon(1e-12));
  fs::remove_all(dir);
}

TEST_CASE("runs are deterministic") {
  const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
  RunConfig c;
  c.scenario = "sod_1d2v";
  c.model = "boltzmann";
  c.epsilon = 1e-2;
  c.integrator = "rk4";
  c.dt = 5e-4;
  c.t_end = 0.01;
  c.out = a.string();
  run(c);
  c.out = b.string();
  run(c);
  for (int i = 0; i < 5; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "sod_1d2v_%03d.csv", i);
    CHECK(slurp(a / name) == slurp(b / name));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("step rejection flushes the last accepted state") {
  const fs::path dir = scratch_dir("reject");
  RunConfig c;
  c.scenario = "sod_1d1d";
  c.integrator = "fe";
  c.epsilon = 1e-8;
  c.dt = 1e-3;  // amplification ~1e5 per step: overflow long before t_end
  c.out = dir.string();
  CHECK_THROWS_AS(run(c), StepRejected);
  CHECK(fs::exists(dir / "sod_1d1d_last.csv"));
  std::ifstream in(dir / "manifest.json");
  const auto m = nlohmann::json::parse(in);
  CHECK(m["status"] == "rejected");
  fs::remove_all(dir);
}

TEST_CASE("periodic Kelvin-Helmholtz variant conserves mass") {
  // 100 steps of the innermost integrator (forward Euler with h0) on a coarsened periodic grid
  Scenario s = find_scenario("kelvin_helmholtz");
  s.space = SpatialGrid(2, {-0.5, -0.5}, {0.5, 0.5}, {20, 20}, {Boundary::periodic, Boundary::periodic});
  const ResolvedRun r = resolve(s, RunConfig{});
  KineticSystem sys(s.space, s.velocity, WenoConfig{s.weno_k}, s.model, s.epsilon);
  DistributionField f = initial_field(s);
  const double m0 = total_mass(f);
  const auto rhs = [&sys](const Eigen::MatrixXd& x, Eigen::MatrixXd& o) { sys.rhs(x, o); };
  for (int i = 0; i < 100; ++i) f.values = forward_euler_step(rhs, f.values, r.plan.h(0));
  CHECK(std::abs(total_mass(f) - m0) <= 1e-10 * m0);
}

TEST_CASE("density front") {
  const SpatialGrid s = SpatialGrid::line(0, 1, 10, Boundary::outflow);
  Eigen::ArrayXd rho(10);
  rho << 2, 2, 2, 1.8, 1.2, 1, 1, 2.5, 1, 1;
  // crossing between cells 3 (x = 0.35) and 4 (x = 0.45)
  CHECK(density_front(s, rho) == doctest::Approx(0.35 + 0.3 / 0.6 * 0.1));
  CHECK(std::isnan(density_front(s, Eigen::ArrayXd::Ones(10))));
}
