#include <doctest.h>

#include <cmath>

#include "vortexlab/errors.hpp"
#include "vortexlab/poisson.hpp"
#include "vortexlab/stencil.hpp"

using namespace vortexlab;

TEST_CASE("diagnostic stencils are exact on quadratics") {
  auto g = make_grid(33, 33, DomainSpec::unit_disk(), BoundaryKind::Neumann);
  NodeField<double> f(g);
  for (auto k : g->mask_nodes()) {
    const Vec2 p = g->position(k);
    f[k] = 1.0 + 2.0 * p.x - p.y + 3.0 * p.x * p.x + p.x * p.y - 2.0 * p.y * p.y;
  }
  const auto lap = laplacian(f);
  const auto grad = gradient(f);
  for (auto k : g->mask_nodes()) {
    const Vec2 p = g->position(k);
    const int i = static_cast<int>(k % g->nx()), j = static_cast<int>(k / g->nx());
    const bool x_ok = g->in_mask(i - 1, j) && g->in_mask(i + 1, j);
    const bool y_ok = g->in_mask(i, j - 1) && g->in_mask(i, j + 1);
    if (x_ok && y_ok) {
      CHECK(lap[k] == doctest::Approx(2.0).epsilon(1e-8));
      CHECK(grad[k].x == doctest::Approx(2.0 + 6.0 * p.x + p.y).epsilon(1e-9));
      CHECK(grad[k].y == doctest::Approx(-1.0 + p.x - 4.0 * p.y).epsilon(1e-9));
    }
  }
}

TEST_CASE("edge Laplacian annihilates linear fields and is symmetric") {
  auto g = make_grid(33, 33, DomainSpec::rectangle(0.0, 0.0, 1.0, 1.0), BoundaryKind::Neumann);
  EdgeLaplacian L(*g);
  std::vector<double> u(g->size()), out(g->size(), 0.0);
  for (auto k : g->mask_nodes()) u[k] = 0.3 + g->position(k).x;
  L.apply(u, out);
  for (int j = 1; j < g->ny() - 1; ++j)
    for (int i = 1; i < g->nx() - 1; ++i) CHECK(std::abs(out[g->idx(i, j)]) < 1e-9);

  std::vector<double> a(g->size()), b(g->size()), La(g->size(), 0.0), Lb(g->size(), 0.0);
  for (std::size_t k = 0; k < g->size(); ++k) {
    a[k] = std::sin(0.3 * k);
    b[k] = std::cos(0.7 * k);
  }
  L.apply(a, La);
  L.apply(b, Lb);
  double ab = 0.0, ba = 0.0;
  for (auto k : L.free_nodes()) {
    ab += g->node_weight(k) * La[k] * b[k];
    ba += g->node_weight(k) * Lb[k] * a[k];
  }
  CHECK(ab == doctest::Approx(ba).epsilon(1e-10));
}

TEST_CASE("edge Dirichlet energy of a linear phase") {
  auto g = make_grid(65, 65, DomainSpec::rectangle(0.0, 0.0, 1.0, 1.0), BoundaryKind::Neumann);
  ComplexField u(g);
  for (auto k : g->mask_nodes()) u[k] = std::polar(1.0, 2.0 * g->position(k).x);
  const double h = g->h();
  const double exact = 0.5 * std::norm(std::polar(1.0, 2.0 * h) - 1.0) / (h * h);
  CHECK(edge_dirichlet_energy(u) == doctest::Approx(exact).epsilon(1e-10));
  CHECK(edge_dirichlet_energy(u) == doctest::Approx(2.0).epsilon(1e-3));
}

namespace {

double solve_error(int n, bool disk) {
  auto g = disk ? make_grid(n, n, DomainSpec::unit_disk(), BoundaryKind::Dirichlet)
                : make_grid(n, n, DomainSpec::rectangle(0.0, 0.0, 1.0, 1.0), BoundaryKind::Dirichlet);
  auto exact = [](Vec2 p) { return std::sin(M_PI * p.x) * std::sinh(M_PI * p.y) / std::sinh(M_PI); };
  EdgeSystem sys(g);
  std::vector<double> phi(g->size(), 0.0);
  for (auto k : g->boundary_nodes()) {
    sys.fixed[k] = 1;
    phi[k] = exact(g->position(k));
  }
  const auto rep = solve_edge_system(sys, phi);
  CHECK(rep.relative_residual < 1e-8);
  double err = 0.0;
  for (auto k : g->mask_nodes()) err = std::max(err, std::abs(phi[k] - exact(g->position(k))));
  return err;
}

}  // namespace

TEST_CASE("Poisson solves converge at second order on harmonic data") {
  for (bool disk : {false, true}) {
    const double e1 = solve_error(33, disk), e2 = solve_error(65, disk);
    CHECK(e2 < 1e-3);
    CHECK(e1 / e2 > 3.0);
  }
}

TEST_CASE("fast path and conjugate gradients agree") {
  auto g = make_grid(33, 33, DomainSpec::rectangle(0.0, 0.0, 1.0, 1.0), BoundaryKind::Neumann);
  EdgeSystem sys(g);
  for (std::size_t k = 0; k < g->size(); ++k) {
    sys.gx[k] = std::sin(0.1 * k) * sys.wx[k];
    sys.gy[k] = std::cos(0.2 * k) * sys.wy[k];
  }
  std::vector<double> a(g->size(), 0.0), b(g->size(), 0.0);
  const auto ra = solve_edge_system(sys, a);
  SolverOptions cg;
  cg.allow_fft = false;
  cg.tol = 1e-12;
  const auto rb = solve_edge_system(sys, b, cg);
  CHECK(ra.used_fft);
  CHECK_FALSE(rb.used_fft);
  double diff = 0.0;
  for (std::size_t k = 0; k < g->size(); ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
  CHECK(diff < 1e-8);
}
