#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vortexlab/errors.hpp"
#include "vortexlab/trajectory.hpp"

using namespace vortexlab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Trajectory sample_trajectory() {
  Trajectory tr;
  tr.model = "gl";
  for (int k = 0; k < 4; ++k) {
    TrajectorySample s;
    s.time = 0.1 * k;
    s.total_energy = 10.0 / (1.0 + k);
    s.dissipated = 0.1 * k;
    s.residuals = {1e-3 * k, kMissing, 2.0};
    if (k != 2) {
      TrackPoint p;
      p.position = {0.5 + 1.0 / 3.0 * k, -0.25};
      p.degree = -1;
      p.q = -0.5;
      p.j_mass = -M_PI;
      s.vortices.push_back(p);
      p.position = {0.1, 0.2};
      p.degree = 1;
      s.vortices.push_back(p);
    }
    tr.samples.push_back(s);
  }
  return tr;
}

}  // namespace

TEST_CASE("trajectory CSV round-trips") {
  const auto dir = std::filesystem::temp_directory_path() / "vortexlab_traj_test";
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  const auto tr = sample_trajectory();
  write_trajectory_csv(a, tr);
  const auto back = read_trajectory_csv(a);
  REQUIRE(back.samples.size() == 4);
  CHECK(back.samples[2].vortices.empty());
  CHECK(back.samples[1].vortices[0].position.x == tr.samples[1].vortices[0].position.x);
  CHECK(back.samples[1].vortices[0].degree == -1);
  CHECK(std::isnan(back.samples[3].residuals[1]));
  CHECK(std::isnan(back.samples[3].vortices[0].omega_mass));
  write_trajectory_csv(b, back);
  CHECK(slurp(a) == slurp(b));
  const std::string text = slurp(a);
  CHECK(text.rfind("time,vortex,x,y,degree,q,", 0) == 0);
  CHECK(text.find("nan") == std::string::npos);
}

TEST_CASE("malformed trajectory CSVs are rejected") {
  const auto dir = std::filesystem::temp_directory_path() / "vortexlab_traj_test";
  std::filesystem::create_directories(dir);
  const std::string p = (dir / "bad.csv").string();
  std::ofstream(p) << "time,x\n0,1\n";
  CHECK_THROWS_AS(read_trajectory_csv(p), ConfigError);
  CHECK_THROWS_AS(read_trajectory_csv((dir / "none.csv").string()), ConfigError);
}

TEST_CASE("matching keeps identities") {
  std::vector<TrackPoint> prev(2), cur(3);
  prev[0].position = {0.0, 0.0};
  prev[1].position = {1.0, 0.0};
  cur[0].position = {1.05, 0.0};
  cur[1].position = {5.0, 5.0};
  cur[2].position = {0.02, 0.01};
  const auto m = match_to_previous(prev, cur);
  REQUIRE(m.size() == 3);
  CHECK(m[0].position.x == 0.02);
  CHECK(m[1].position.x == 1.05);
  CHECK(m[2].position.x == 5.0);
}

TEST_CASE("stop reasons print as documented") {
  CHECK(to_string(StopReason::EndTime) == "end-time");
  CHECK(to_string(StopReason::Collision) == "collision");
  CHECK(to_string(StopReason::BoundaryEscape) == "boundary-escape");
  CHECK(to_string(StopReason::VortexLost) == "vortex-lost");
}
