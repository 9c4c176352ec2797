#include <doctest.h>

#include <cmath>

#include "vortexlab/diagnostics.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/seeding.hpp"

using namespace vortexlab;

namespace {

DirectorField smooth_director(int n) {
  auto g = make_grid(n, n, DomainSpec::rectangle(0.0, 0.0, 1.0, 1.0), BoundaryKind::Neumann);
  DirectorField m(g);
  for (auto k : g->mask_nodes()) {
    const Vec2 p = g->position(k);
    const double t = 1.0 + 0.5 * std::sin(2.0 * M_PI * p.x) * std::cos(M_PI * p.y);
    const double f = 2.0 * p.x * p.y + std::sin(M_PI * p.y);
    m[k] = Vec3{std::sin(t) * std::cos(f), std::sin(t) * std::sin(f), std::cos(t)};
  }
  return m;
}

}  // namespace

TEST_CASE("pointwise identities converge on a smooth director") {
  const auto [a1, b1] = identity_residuals(smooth_director(65));
  const auto [a2, b2] = identity_residuals(smooth_director(129));
  CHECK(a1 / a2 > 1.5);
  CHECK(b1 / b2 > 1.5);
  CHECK(a2 < 1e-2);
}

TEST_CASE("winding numbers of seeded GL fields are exact") {
  auto g = make_grid(129, 129, DomainSpec::unit_disk(), BoundaryKind::Dirichlet);
  auto v = make_vortices({{{-0.4, 0.0}, 1}, {{0.4, 0.1}, -1}});
  auto u = seed_gl_field(g, v, 0.03);
  CHECK(winding_number(u, {-0.4, 0.0}, 0.2) == 1);
  CHECK(winding_number(u, {0.4, 0.1}, 0.2) == -1);
  CHECK(winding_number(u, {0.0, 0.0}, 0.8) == 0);
  CHECK(winding_number(u, {0.0, 0.6}, 0.2) == 0);
}

TEST_CASE("locator finds seeded vortices with their degrees") {
  auto g = make_grid(129, 129, DomainSpec::unit_disk(), BoundaryKind::Dirichlet);
  auto v = make_vortices({{{-0.4, 0.0}, 1}, {{0.37, 0.12}, -1}});
  LocateOptions lo;
  lo.epsilon = 0.03;
  const auto r = read_vortices(seed_gl_field(g, v, 0.03), lo);
  REQUIRE(r.size() == 2);
  for (const auto& e : v) {
    bool found = false;
    for (const auto& x : r)
      if (norm(x.position - e.a) < 0.1 * g->h() && x.degree == e.d) found = true;
    CHECK(found);
  }
  for (const auto& x : r) CHECK(std::abs(x.jacobian_mass) == doctest::Approx(M_PI).epsilon(0.05));
}

TEST_CASE("micromagnetic seeds carry quantized masses") {
  auto g = make_grid(129, 129, DomainSpec::unit_disk(), BoundaryKind::Dirichlet);
  auto v = make_vortices({{{0.2, 0.0}, 1}});
  for (int p : {1, -1}) {
    auto m = seed_vortex_field(g, v, 0.04, {p});
    LocateOptions lo;
    lo.epsilon = 0.04;
    const auto r = read_vortices(m, lo);
    REQUIRE(r.size() == 1);
    CHECK(r[0].degree == 1);
    CHECK(r[0].q_hat == 0.5 * p);
    CHECK(r[0].vorticity_mass == doctest::Approx(2.0 * M_PI * p).epsilon(0.02));
  }
}

TEST_CASE("ball masses of smooth densities") {
  auto g = make_grid(129, 129, DomainSpec::unit_disk(), BoundaryKind::Dirichlet);
  ScalarField one(g, Centering::Node);
  for (auto& x : one.values) x = 1.0;
  CHECK(ball_mass(one, {0.1, 0.1}, 0.3) == doctest::Approx(M_PI * 0.09).epsilon(2e-3));
  CHECK_THROWS_AS(ball_mass(one, {0.8, 0.0}, 0.3), ConfigError);
}

TEST_CASE("energy of the constant state vanishes") {
  auto g = make_grid(33, 33, DomainSpec::unit_disk(), BoundaryKind::Neumann);
  CHECK(total_energy(ComplexField(g, cplx(1.0, 0.0)), 0.1) == doctest::Approx(0.0));
  CHECK(total_energy(DirectorField(g, Vec3{1.0, 0.0, 0.0}), 0.1) == doctest::Approx(0.0));
  const double e = total_energy(DirectorField(g, Vec3{0.0, 0.0, 1.0}), 0.1);
  CHECK(e == doctest::Approx(0.5 / 0.01 * M_PI).epsilon(0.05));
}
