#include <doctest.h>

#include <cmath>

#include "vortexlab/errors.hpp"
#include "vortexlab/motion.hpp"

using namespace vortexlab;

TEST_CASE("GL dipole translates at speed 1/r") {
  for (double r : {1.0, 0.4}) {
    OdeState s;
    s.vortices = make_vortices({{{0.5 * r, 0.0}, 1}, {{-0.5 * r, 0.0}, -1}});
    s.kind = OdeKind::GL;
    s.model = RenormalizedEnergyModel::free_plane();
    const auto v = ode_rhs(s);
    for (const auto& x : v) {
      CHECK(x.x == doctest::Approx(0.0).scale(1.0));
      CHECK(std::abs(x.y) == doctest::Approx(1.0 / r).epsilon(1e-12));
    }
  }
}

TEST_CASE("LLG and GL right-hand sides coincide when 4q = 2d") {
  OdeState s;
  s.vortices = make_vortices({{{0.3, 0.1}, 1}, {{-0.2, 0.4}, -1}, {{0.1, -0.5}, 1}});
  s.alpha0 = 0.7;
  s.model = RenormalizedEnergyModel::free_plane();
  s.kind = OdeKind::GL;
  const auto gl = ode_rhs(s);
  s.kind = OdeKind::LLG;
  for (auto& e : s.vortices.entries) e.q = 0.5 * e.d;
  const auto llg = ode_rhs(s);
  for (std::size_t n = 0; n < gl.size(); ++n) {
    CHECK(gl[n].x == llg[n].x);
    CHECK(gl[n].y == llg[n].y);
  }
}

TEST_CASE("undamped LLG pair orbits at fixed distance") {
  OdeState s;
  s.vortices = make_vortices({{{0.4, 0.0}, 1}, {{-0.4, 0.0}, 1}});
  s.model = RenormalizedEnergyModel::free_plane();
  const auto tr = ode_integrate(s, 1.0, 1e-10);
  CHECK(tr.stop == StopReason::EndTime);
  const double W0 = tr.samples.front().W;
  for (const auto& x : tr.samples) {
    CHECK(std::abs(x.W - W0) <= 1e-8 * std::max(1.0, std::abs(W0)));
    CHECK(norm(x.vortices[0].position - x.vortices[1].position) == doctest::Approx(0.8).epsilon(1e-9));
  }
}

TEST_CASE("damped flow dissipates W at the predicted rate") {
  OdeState s;
  s.vortices = make_vortices({{{0.4, 0.0}, 1}, {{-0.4, 0.1}, 1}});
  s.alpha0 = 1.0;
  s.model = RenormalizedEnergyModel::free_plane();
  const auto tr = ode_integrate(s, 1.0, 1e-10);
  CHECK(energy_decay_check(tr) < 1e-5);
  CHECK(tr.samples.back().W < tr.samples.front().W);
}

TEST_CASE("disk vortex with centred boundary source") {
  OdeState s;
  s.vortices = make_vortices({{{0.5, 0.0}, 1}});
  s.alpha0 = 1.0;
  s.kind = OdeKind::GL;
  s.model = RenormalizedEnergyModel::unit_disk(BoundaryKind::Dirichlet, make_vortices({{{0.0, 0.0}, 1}}));
  const auto v = ode_rhs(s);
  CHECK(v[0].x == doctest::Approx(-4.0 / 15.0).epsilon(1e-9));
  CHECK(v[0].y == doctest::Approx(8.0 / 15.0).epsilon(1e-9));
}

TEST_CASE("collisions and degenerate coefficients") {
  OdeState s;
  s.vortices = make_vortices({{{0.05, 0.0}, 1}, {{-0.05, 0.0}, -1}});
  s.alpha0 = 1.0;
  s.model = RenormalizedEnergyModel::free_plane();
  s.r_min = 0.01;
  const auto tr = ode_integrate(s, 1.0, 1e-8);
  CHECK(tr.stop == StopReason::Collision);
  CHECK(tr.samples.back().time < 1.0);

  s.r_min = 1e-3;
  s.alpha0 = 0.0;
  s.vortices[0].q = 0.0;
  CHECK_THROWS_AS(ode_rhs(s), ConfigError);
  CHECK_THROWS_AS(ode_integrate(s, 1.0, 1e-8), ConfigError);
  CHECK_THROWS_AS(ode_rhs(OdeState{}), ConfigError);
}

TEST_CASE("q jumps take effect at their time") {
  OdeState s;
  s.vortices = make_vortices({{{0.4, 0.0}, 1}, {{-0.4, 0.0}, 1}});
  s.alpha0 = 0.5;
  s.model = RenormalizedEnergyModel::free_plane();
  OdeOptions o;
  o.jumps = {{0.3, 0, -0.5}};
  const auto tr = ode_integrate(s, 0.6, 1e-9, o);
  bool before = false, after = false;
  for (const auto& x : tr.samples) {
    if (x.time < 0.3 - 1e-12) before = before || x.vortices[0].q == 0.5;
    if (x.time > 0.3 + 1e-12) after = after || x.vortices[0].q == -0.5;
  }
  CHECK(before);
  CHECK(after);
  bool hit = false;
  for (const auto& x : tr.samples) hit = hit || std::abs(x.time - 0.3) < 1e-14;
  CHECK(hit);
}
