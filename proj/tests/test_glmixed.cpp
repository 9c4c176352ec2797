#include <doctest.h>

#include <cmath>

#include "vortexlab/errors.hpp"
#include "vortexlab/glmixed.hpp"
#include "vortexlab/seeding.hpp"

using namespace vortexlab;

namespace {

ComplexField small_vortex() {
  auto g = make_grid(65, 65, DomainSpec::unit_disk(), BoundaryKind::Dirichlet);
  SeedOptions so;
  so.c_core = 2.0;
  so.boundary_source = make_vortices({{{0.0, 0.0}, 1}});
  return seed_gl_field(g, make_vortices({{{0.4, 0.0}, 1}}), 0.125, so);
}

GLConfig small_config() {
  GLConfig c;
  c.epsilon = 0.125;
  c.alpha0 = 1.0;
  c.t_end = 0.05;
  c.dt = 0.25 / (32.0 * 32.0);
  c.snapshot_stride = 25;
  c.r_min = 0.1;
  return c;
}

ComplexField smooth_state(int n) {
  auto g = make_grid(n, n, DomainSpec::rectangle(0.0, 0.0, 1.0, 1.0), BoundaryKind::Neumann);
  ComplexField u(g);
  for (auto k : g->mask_nodes()) {
    const Vec2 p = g->position(k);
    u[k] = (0.9 + 0.1 * std::cos(M_PI * p.x)) * std::polar(1.0, 0.5 * std::cos(M_PI * p.y));
  }
  return u;
}

}  // namespace

TEST_CASE("the unit state is stationary") {
  auto g = make_grid(33, 33, DomainSpec::unit_disk(), BoundaryKind::Neumann);
  const auto r = gl_rhs(ComplexField(g, cplx(0.6, 0.8)), 0.1, 0.5);
  for (const auto& v : r.values) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("prefactor of the mixed flow") {
  auto u = smooth_state(33);
  const double a = 0.7;
  const auto full = gl_rhs(u, 0.2, a);
  const auto diss = gl_rhs(u, 0.2, a, false);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const cplx F = full[k] * (1.0 + a * a) / cplx(a, -1.0);
    CHECK(std::abs(diss[k] - a / (1.0 + a * a) * F) < 1e-9 * (1.0 + std::abs(F)));
  }
}

TEST_CASE("energy-dissipation equality") {
  for (auto scheme : {TimeScheme::ExplicitRK4, TimeScheme::Imex}) {
    auto c = small_config();
    c.scheme = scheme;
    const auto tr = gl_run(c, small_vortex());
    const auto& a = tr.samples.front();
    const auto& b = tr.samples.back();
    CHECK(b.dissipated > 0.0);
    const double tol = scheme == TimeScheme::ExplicitRK4 ? 1e-5 : 1e-3;
    CHECK(b.total_energy + b.dissipated == doctest::Approx(a.total_energy).epsilon(tol));
  }
}

TEST_CASE("Schroedinger flow conserves energy") {
  auto c = small_config();
  c.alpha_override = 0.0;
  c.dt = 0.0;
  c.snapshot_stride = 200;
  const auto tr = gl_run(c, small_vortex());
  CHECK(tr.samples.back().total_energy == doctest::Approx(tr.samples.front().total_energy).epsilon(1e-5));
}

TEST_CASE("dissipative-only mode needs damping") {
  auto c = small_config();
  c.conservative_term = false;
  c.alpha_override = 0.0;
  CHECK_THROWS_AS(gl_run(c, small_vortex()), ConfigError);
}

TEST_CASE("conservation residuals shrink under refinement") {
  std::array<double, 3> res[2];
  int level = 0;
  for (int n : {33, 65}) {
    const auto u0 = smooth_state(n);
    const double dt = 1e-6;
    const auto ut = gl_rhs(u0, 0.5, 0.4);
    ComplexField u1 = u0;
    for (std::size_t k = 0; k < u1.size(); ++k) u1[k] += dt * ut[k];
    ComplexField mid = u0;
    for (std::size_t k = 0; k < mid.size(); ++k) mid[k] += 0.5 * dt * ut[k];
    const auto ut_mid = gl_rhs(mid, 0.5, 0.4);
    res[level++] = conservation_residuals(u0, u1, dt, 0.5, 0.4, &ut_mid, 0.1);
  }
  for (int c = 0; c < 3; ++c) CHECK(res[0][c] / res[1][c] > 2.0);
}

TEST_CASE("samples carry tracked vortices and residuals") {
  const auto tr = gl_run(small_config(), small_vortex());
  REQUIRE(tr.samples.size() >= 3);
  const auto& s = tr.samples[1];
  REQUIRE(s.vortices.size() == 1);
  CHECK(s.vortices[0].degree == 1);
  CHECK(std::isnan(s.vortices[0].q_hat));
  CHECK(std::isfinite(s.residuals[0]));
  CHECK(std::isfinite(s.residuals[2]));
}
