#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vortexlab/harness.hpp"

using namespace vortexlab;

namespace {

Trajectory line_track(double t_end, int samples, Vec2 offset, double speed = 1.0) {
  Trajectory tr;
  for (int k = 0; k <= samples; ++k) {
    TrajectorySample s;
    s.time = t_end * k / samples;
    TrackPoint p;
    p.position = offset + Vec2{speed * s.time, 0.0};
    s.vortices.push_back(p);
    p.position = offset + Vec2{0.0, 1.0 - s.time};
    s.vortices.push_back(p);
    tr.samples.push_back(s);
  }
  return tr;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Scenario tiny(const std::string& out) {
  Scenario sc;
  sc.name = "tiny";
  sc.model = "gl";
  sc.vortices = {{{0.4, 0.0}, 1, 1}};
  sc.boundary_source = make_vortices({{{0.0, 0.0}, 1}});
  sc.epsilons = {0.125, 0.0625};
  sc.grid_sizes = {65, 129};
  sc.c_core = 2.0;
  sc.t_end = 0.005;
  sc.dt_factor = 0.25;
  sc.snapshot_stride = 10;
  sc.r_min = 0.1;
  sc.output = out;
  return sc;
}

}  // namespace

TEST_CASE("identical tracks are at distance zero") {
  const auto a = line_track(1.0, 10, {0.0, 0.0});
  const auto c = compare_tracks(a, a);
  CHECK(c.sup == 0.0);
  CHECK(c.l2_distance[0] == 0.0);
  CHECK(c.matching == std::vector<std::size_t>{0, 1});
}

TEST_CASE("constant offsets give the offset") {
  const auto a = line_track(1.0, 10, {0.0, 0.0});
  const auto b = line_track(0.7, 33, {0.003, -0.004});
  const auto c = compare_tracks(a, b);
  CHECK(c.sup == doctest::Approx(0.005).epsilon(1e-9));
  CHECK(c.t_end == doctest::Approx(0.7));
  CHECK(c.l2_distance[1] == doctest::Approx(0.005 * std::sqrt(0.7)).epsilon(1e-9));
}

TEST_CASE("linear drift is captured on the finer grid") {
  const auto a = line_track(1.0, 4, {0.0, 0.0});
  const auto b = line_track(1.0, 40, {0.0, 0.0}, 1.5);
  CHECK(compare_tracks(a, b).sup_distance[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("identity swaps are flagged") {
  const auto a = line_track(1.0, 10, {0.0, 0.0});
  CHECK(compare_tracks(a, a, 0.4).identity_swap_risk);
  CHECK_FALSE(compare_tracks(a, a, 0.01).identity_swap_risk);
  Trajectory one;
  one.samples.push_back(TrajectorySample{});
  CHECK_THROWS_AS(compare_tracks(a, one), ConfigError);
}

TEST_CASE("scenario JSON round-trips") {
  for (const auto& name : builtin_scenario_names()) {
    const auto sc = builtin_scenario(name);
    CHECK_NOTHROW(validate(sc));
    const auto back = scenario_from_json(to_json(sc));
    CHECK(to_json(back) == to_json(sc));
  }
  CHECK_THROWS_AS(builtin_scenario("nope"), ConfigError);
  auto j = to_json(builtin_scenario("gl-motion-law"));
  j["schema"] = 2;
  CHECK_THROWS_AS(scenario_from_json(j), ConfigError);
}

TEST_CASE("scenario invariants") {
  auto sc = builtin_scenario("gl-motion-law");
  sc.grid_sizes[2] = 257;
  CHECK_THROWS_AS(validate(sc), ConfigError);
  sc = builtin_scenario("gl-motion-law");
  std::swap(sc.epsilons[0], sc.epsilons[1]);
  std::swap(sc.grid_sizes[0], sc.grid_sizes[1]);
  CHECK_THROWS_AS(validate(sc), ConfigError);
  sc = builtin_scenario("gl-motion-law");
  sc.grid_sizes.pop_back();
  CHECK_THROWS_AS(validate(sc), ConfigError);
  sc = builtin_scenario("gl-motion-law");
  sc.bubble_radius = 1.0;
  CHECK_THROWS_AS(validate(sc), ConfigError);
}

TEST_CASE("small sweep persists deterministic outputs") {
  const auto dir = std::filesystem::temp_directory_path() / "vortexlab_harness_test";
  std::filesystem::remove_all(dir);
  const auto r1 = run_scenario(tiny((dir / "a").string()), 2);
  const auto r2 = run_scenario(tiny((dir / "b").string()), 1);
  REQUIRE(r1.runs.size() == 2);
  CHECK(r1.complete());
  for (const auto& r : r1.runs) {
    CHECK(r.ok);
    CHECK(std::isfinite(r.sup_distance));
    CHECK(r.sup_distance < 0.05);
    CHECK_FALSE(r.excess_energy.empty());
  }
  for (const char* f : {"eps_0/pde.csv", "eps_0/ode.csv", "eps_1/pde.csv", "eps_1/ode.csv"})
    CHECK(slurp((dir / "a" / f).string()) == slurp((dir / "b" / f).string()));
  CHECK(std::filesystem::exists(dir / "a" / "report.json"));
  CHECK(std::filesystem::exists(dir / "a" / "scenario.json"));
  CHECK(r1.runs[1].sup_distance == r2.runs[1].sup_distance);
}

TEST_CASE("per-epsilon failures are recorded") {
  auto sc = tiny("");
  sc.vortices = {{{0.9, 0.0}, 1, 1}};
  sc.r_min = 0.01;
  const auto r = run_scenario(sc);
  REQUIRE(r.runs.size() == 2);
  CHECK_FALSE(r.complete());
  CHECK_FALSE(r.monotone);
  CHECK(r.runs[0].error_kind == "config");
  CHECK_FALSE(r.runs[0].error.empty());
}
