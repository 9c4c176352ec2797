#include "vortexlab/stencil.hpp"

namespace vortexlab {

double mixed_partial(const NodeField<double>& f, int i, int j) {
  const Grid2D& g = *f.grid;
  // d/dy of d/dx, with d/dx taken at the rows used by the y-stencil.
  auto dx_at = [&](int jj) { return partial(f, i, jj, 0); };
  const double h = g.h();
  const bool up = g.in_mask(i, j + 1);
  const bool dn = g.in_mask(i, j - 1);
  if (up && dn) return (dx_at(j + 1) - dx_at(j - 1)) / (2.0 * h);
  if (up) return (dx_at(j + 1) - dx_at(j)) / h;
  if (dn) return (dx_at(j) - dx_at(j - 1)) / h;
  return 0.0;
}

VectorField gradient(const NodeField<double>& f) {
  VectorField out(f.grid);
  const Grid2D& g = *f.grid;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.in_mask(i, j)) continue;
      out.at(i, j) = {partial(f, i, j, 0), partial(f, i, j, 1)};
    }
  }
  return out;
}

namespace {

NodeField<double> component(const VectorField& v, int c) {
  NodeField<double> out(v.grid);
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = c == 0 ? v[k].x : v[k].y;
  return out;
}

}  // namespace

NodeField<double> divergence(const VectorField& v) {
  const auto vx = component(v, 0);
  const auto vy = component(v, 1);
  NodeField<double> out(v.grid);
  const Grid2D& g = *v.grid;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (g.in_mask(i, j)) out.at(i, j) = partial(vx, i, j, 0) + partial(vy, i, j, 1);
    }
  }
  return out;
}

NodeField<double> curl(const VectorField& v) {
  const auto vx = component(v, 0);
  const auto vy = component(v, 1);
  NodeField<double> out(v.grid);
  const Grid2D& g = *v.grid;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (g.in_mask(i, j)) out.at(i, j) = partial(vy, i, j, 0) - partial(vx, i, j, 1);
    }
  }
  return out;
}

EdgeLaplacian::EdgeLaplacian(const Grid2D& g) : nx_(static_cast<std::size_t>(g.nx())) {
  const double h2 = g.h() * g.h();
  inv_h2_ = 1.0 / h2;
  for (int j = 0; j < g.ny(); ++j) {
    bool open = false;
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.idx(i, j);
      if (!g.is_free(k)) {
        open = false;
        continue;
      }
      free_.push_back(k);
      std::array<std::size_t, 4> nb{k, k, k, k};
      std::array<double, 4> c{0, 0, 0, 0};
      const double inv = 1.0 / (g.node_weight(k) * h2);
      const double w[4] = {g.edge_weight(i, j, true), g.edge_weight(i - 1, j, true), g.edge_weight(i, j, false),
                           g.edge_weight(i, j - 1, false)};
      const bool regular = g.node_weight(k) == 1.0 && w[0] == 1.0 && w[1] == 1.0 && w[2] == 1.0 && w[3] == 1.0;
      if (regular) {
        if (open) {
          runs_.back().end = k + 1;
        } else {
          runs_.push_back({k, k + 1});
          open = true;
        }
        continue;
      }
      open = false;
      if (w[0] > 0) { nb[0] = g.idx(i + 1, j); c[0] = w[0] * inv; }
      if (w[1] > 0) { nb[1] = g.idx(i - 1, j); c[1] = w[1] * inv; }
      if (w[2] > 0) { nb[2] = g.idx(i, j + 1); c[2] = w[2] * inv; }
      if (w[3] > 0) { nb[3] = g.idx(i, j - 1); c[3] = w[3] * inv; }
      irregular_.push_back(k);
      nb_.push_back(nb);
      coef_.push_back(c);
    }
  }
}

namespace {

template <class T, class Norm2>
double edge_energy(const NodeField<T>& u, Norm2 n2) {
  const Grid2D& g = *u.grid;
  const int nx = g.nx(), ny = g.ny();
  const bool rect = g.domain() == DomainKind::Rectangle;
  double e = 0.0;
  for (int j = 0; j < ny; ++j) {
    const double wx = rect && (j == 0 || j == ny - 1) ? 0.5 : 1.0;
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = g.idx(i, j);
      if (!g.in_mask(k)) continue;
      if (i + 1 < nx && g.in_mask(k + 1)) e += wx * n2(u[k + 1] - u[k]);
      if (j + 1 < ny && g.in_mask(k + nx)) e += (rect && (i == 0 || i == nx - 1) ? 0.5 : 1.0) * n2(u[k + nx] - u[k]);
    }
  }
  return 0.5 * e;
}

}  // namespace

double edge_dirichlet_energy(const ComplexField& u) {
  return edge_energy(u, [](cplx z) { return std::norm(z); });
}

double edge_dirichlet_energy(const DirectorField& m) {
  return edge_energy(m, [](const Vec3& v) { return dot(v, v); });
}

}  // namespace vortexlab
