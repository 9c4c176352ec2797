#include <doctest.h>

#include <cmath>

#include "vortexlab/errors.hpp"
#include "vortexlab/llg.hpp"
#include "vortexlab/seeding.hpp"

using namespace vortexlab;

namespace {

DirectorField small_vortex(double eps = 0.125) {
  auto g = make_grid(65, 65, DomainSpec::unit_disk(), BoundaryKind::Dirichlet);
  SeedOptions so;
  so.c_core = 2.0;
  so.boundary_source = make_vortices({{{0.0, 0.0}, 1}});
  return seed_vortex_field(g, make_vortices({{{0.3, 0.0}, 1}}), eps, {1}, so);
}

LLGConfig small_config() {
  LLGConfig c;
  c.epsilon = 0.125;
  c.alpha0 = 1.0;
  c.t_end = 0.02;
  c.dt = 0.25 / (32.0 * 32.0);
  c.snapshot_stride = 1;
  c.r_min = 0.1;
  return c;
}

}  // namespace

TEST_CASE("pointwise LL right-hand side") {
  const Vec3 m{0.6, 0.0, 0.8}, f{0.1, -0.7, 0.3};
  for (double a : {0.0, 0.5, 2.0}) {
    const Vec3 r = llg_rhs_point(m, f, a);
    CHECK(dot(r, m) == doctest::Approx(0.0).scale(1.0));
    const Vec3 expect = (1.0 / (1.0 + a * a)) * ((-1.0) * cross(m, f) - a * cross(m, cross(m, f)));
    CHECK(norm(r - expect) < 1e-15);
  }
}

TEST_CASE("uniform in-plane state is stationary") {
  auto g = make_grid(33, 33, DomainSpec::rectangle(0.0, 0.0, 1.0, 1.0), BoundaryKind::Neumann);
  DirectorField m(g, Vec3{0.0, 1.0, 0.0});
  const auto r = llg_rhs(m, 0.1, 0.3);
  for (const auto& v : r.values) CHECK(norm(v) == 0.0);
}

TEST_CASE("stable step bounds") {
  CHECK(llg_stable_dt(0.1, 1.0, 1.0) == doctest::Approx(0.2 * 0.0025));
  CHECK(llg_stable_dt(0.1, 0.01, 0.0) == doctest::Approx(0.2 * 1e-4));
  CHECK(llg_stable_dt(0.1, 0.01, 0.0, TimeScheme::Imex) == doctest::Approx(0.2 * 0.0025));
}

TEST_CASE("damped runs keep unit length and never raise the energy") {
  for (auto scheme : {TimeScheme::ExplicitRK4, TimeScheme::Imex}) {
    auto c = small_config();
    c.scheme = scheme;
    DirectorField fin;
    const auto tr = llg_run(c, small_vortex(), &fin);
    CHECK(tr.stop == StopReason::EndTime);
    CHECK(max_unit_deviation(fin) < 1e-12);
    for (std::size_t k = 1; k < tr.samples.size(); ++k)
      CHECK(tr.samples[k].total_energy <= tr.samples[k - 1].total_energy * (1.0 + 1e-6));
    REQUIRE(tr.samples.back().vortices.size() == 1);
    CHECK(tr.samples.back().vortices[0].q == 0.5);
  }
}

TEST_CASE("energy balance of the damped flow") {
  auto c = small_config();
  c.snapshot_stride = 40;
  const auto tr = llg_run(c, small_vortex());
  const auto& a = tr.samples.front();
  const auto& b = tr.samples.back();
  CHECK(b.total_energy + b.dissipated == doctest::Approx(a.total_energy).epsilon(1e-5));
}

TEST_CASE("undamped flow conserves energy") {
  auto c = small_config();
  c.alpha_override = 0.0;
  c.dt = 0.0;
  c.snapshot_stride = 200;
  const auto tr = llg_run(c, small_vortex());
  CHECK(tr.samples.back().total_energy == doctest::Approx(tr.samples.front().total_energy).epsilon(1e-6));
}

TEST_CASE("llg_run validates its input") {
  auto m = small_vortex();
  m[m.grid->idx(32, 32)] = Vec3{0.0, 0.0, 2.0};
  CHECK_THROWS_AS(llg_run(small_config(), m), ConfigError);
  auto c = small_config();
  c.epsilon = 0.7;
  CHECK_THROWS_AS(llg_run(c, small_vortex()), ConfigError);
}

namespace {

Trajectory synthetic(const std::vector<double>& omega_over_4pi, const std::vector<double>& x) {
  Trajectory tr;
  for (std::size_t k = 0; k < omega_over_4pi.size(); ++k) {
    TrajectorySample s;
    s.time = 0.01 * k;
    s.total_energy = 40.0 - (omega_over_4pi[k] > 0.0 ? 6.5 : 0.0);
    TrackPoint p;
    p.position = {x[k], 0.0};
    p.omega_mass = 4.0 * M_PI * omega_over_4pi[k];
    p.window = 0.2;
    s.vortices.push_back(p);
    tr.samples.push_back(s);
  }
  return tr;
}

}  // namespace

TEST_CASE("bubbling detector") {
  const auto ev = detect_bubbling(synthetic({-0.5, -0.49, -0.3, 0.45, 0.5, 0.5}, {0.3, 0.3, 0.3, 0.3, 0.31, 0.32}));
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].dq == 1);
  CHECK(ev[0].t0 == doctest::Approx(0.01));
  CHECK(ev[0].t1 == doctest::Approx(0.03));
  CHECK(ev[0].d_energy == doctest::Approx(-6.5));
  CHECK(ev[0].d_omega == doctest::Approx(4.0 * M_PI * 0.94));

  CHECK(detect_bubbling(synthetic({-0.5, -0.5, 0.5}, {0.3, 0.3, 0.8})).empty());
  CHECK(detect_bubbling(synthetic({-0.5, -0.4, -0.2, -0.3}, {0.3, 0.3, 0.3, 0.3})).empty());
  CHECK(detect_bubbling(synthetic({0.5, 0.5, 0.5}, {0.3, 0.3, 0.3})).empty());
  CHECK(detect_bubbling(synthetic({-0.5, 0.5, -0.5}, {0.3, 0.3, 0.3})).size() == 2);
}
