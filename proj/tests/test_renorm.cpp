#include <doctest.h>

#include <cmath>

#include "vortexlab/errors.hpp"
#include "vortexlab/radial_profile.hpp"
#include "vortexlab/renorm.hpp"

using namespace vortexlab;

TEST_CASE("free-plane W is the Coulomb pair sum") {
  auto v = make_vortices({{{0.0, 0.0}, 1}, {{0.6, 0.8}, -1}, {{-1.0, 0.5}, 1}});
  double expect = 0.0;
  for (std::size_t m = 0; m < v.size(); ++m)
    for (std::size_t n = 0; n < v.size(); ++n)
      if (m != n) expect -= M_PI * v[m].d * v[n].d * std::log(norm(v[m].a - v[n].a));
  const auto fp = RenormalizedEnergyModel::free_plane();
  CHECK(renormalized_energy(v, fp) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(renormalized_energy(make_vortices({{{0.0, 0.0}, 1}, {{1.0, 0.0}, 1}}), fp) == doctest::Approx(0.0));
}

TEST_CASE("closed-form and finite-difference gradients agree") {
  auto v = make_vortices({{{0.1, -0.2}, 1}, {{0.7, 0.3}, -1}, {{-0.5, 0.4}, 1}});
  auto fp = RenormalizedEnergyModel::free_plane();
  const auto exact = grad_W(v, fp);
  const auto fd = grad_W_finite_difference(v, fp);
  for (std::size_t n = 0; n < v.size(); ++n) CHECK(norm(exact[n] - fd[n]) <= 1e-4 * norm(exact[n]));
}

TEST_CASE("unit disk with centred boundary source") {
  const auto src = make_vortices({{{0.0, 0.0}, 1}});
  auto model = RenormalizedEnergyModel::unit_disk(BoundaryKind::Dirichlet, src);
  model.resolution = 129;
  for (double a : {0.0, 0.3}) {
    auto v = make_vortices({{{a, 0.0}, 1}});
    CHECK(renormalized_energy(v, model) == doctest::Approx(-M_PI * std::log(1.0 - a * a)).epsilon(1e-3).scale(1.0));
    const auto g = grad_W_identity(v, model);
    CHECK(g[0].x == doctest::Approx(2.0 * M_PI * a / (1.0 - a * a)).epsilon(1e-9).scale(1.0));
    CHECK(g[0].y == doctest::Approx(0.0).scale(1.0));
  }
  auto v = make_vortices({{{0.3, 0.1}, 1}});
  const auto gi = grad_W_identity(v, model);
  const auto gf = grad_W_finite_difference(v, model);
  CHECK(norm(gi[0] - gf[0]) < 1e-2 * norm(gi[0]));
}

TEST_CASE("rectangle gradients by both routes") {
  auto v = make_vortices({{{0.4, 0.45}, 1}, {{0.62, 0.55}, -1}});
  for (auto bc : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
    auto model = RenormalizedEnergyModel::rectangle_domain(DomainSpec::rectangle(0.0, 0.0, 1.0, 1.0), bc);
    model.resolution = 129;
    const auto gi = grad_W_identity(v, model);
    const auto gf = grad_W_finite_difference(v, model);
    for (std::size_t n = 0; n < 2; ++n) CHECK(norm(gi[n] - gf[n]) < 2e-2 * norm(gi[n]));
  }
}

TEST_CASE("identity residual without the leading factor") {
  auto v = make_vortices({{{-0.5, 0.0}, 1}, {{0.5, 0.0}, 1}});
  TestFunction phi;
  phi.r0 = 0.1;
  phi.r1 = 0.4;
  phi.c = {0.0, 0.0};
  phi.b = {{0.0, 1.0}, {0.0, 0.3}};
  const auto r = renorm_identity_residual(phi, v, RenormalizedEnergyModel::free_plane());
  CHECK(r.residual_unit_coefficient < 1e-3 * std::abs(r.rhs));
  CHECK(r.lhs == doctest::Approx(M_PI * r.rhs).epsilon(1e-3));

  phi.hessian = {Sym2{1.0, 0.0, 0.0}, Sym2{}};
  CHECK_THROWS_AS(renorm_identity_residual(phi, v, RenormalizedEnergyModel::free_plane()), ConfigError);
}

TEST_CASE("radial minimisers") {
  const auto& gl = radial_minimizer(CoreModel::GinzburgLandau, 0.05, 4000);
  CHECK(gl(0.0) == doctest::Approx(0.0));
  CHECK(gl(1.0) == doctest::Approx(1.0));
  for (double r = 0.0; r < 0.99; r += 0.01) CHECK(gl(r + 0.01) >= gl(r));
  const double g1 = gamma_num(CoreModel::GinzburgLandau, 0.02);
  const double g2 = gamma_num(CoreModel::GinzburgLandau, 0.01);
  CHECK(std::abs(g1 - g2) < 0.02);
  const auto& mm = radial_minimizer(CoreModel::Micromagnetic, 0.05, 4000);
  CHECK(mm(1.0) == doctest::Approx(M_PI / 2));
}
