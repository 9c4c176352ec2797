#include "vortexlab/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "vortexlab/diagnostics.hpp"
#include "vortexlab/errors.hpp"
#include "vortexlab/radial_profile.hpp"
#include "vortexlab/renorm.hpp"

namespace vortexlab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_seed(const Grid2D& g, const VortexSet& v, double eps, const SeedOptions& opts) {
  if (!(eps > 0.0 && eps <= 0.5)) throw ConfigError("epsilon must lie in (0, 1/2]");
  if (v.empty()) return;
  validate(v, g);
  if (!(rho(v, g) > 2.0 * opts.c_core * eps)) throw ConfigError("vortices unresolvable at this eps");
}

// Boundary value g at a boundary node (projected onto the circle on the disk).
cplx boundary_value(const Grid2D& g, std::size_t k, const VortexSet& src) {
  Vec2 x = g.position(k);
  if (g.domain() == DomainKind::UnitDisk) x = x / norm(x);
  return singular_factor(x, src);
}

double cap(double r, double width) {
  const double s = std::min(r / width, 1.0);
  return 0.25 * kPi * (1.0 - std::cos(kPi * s));
}

double smoothstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

DirectorField director_from_angle(const GridPtr& grid, const CanonicalMap& cm, const VortexSet& src,
                                   const std::function<double(Vec2)>& angle) {
  const Grid2D& g = *grid;
  DirectorField m(grid, Vec3{0.0, 0.0, 1.0});
  for (std::size_t k : g.mask_nodes()) {
    const double t = angle(g.position(k));
    const cplx w = cm.m[k];
    m[k] = {std::sin(t) * w.real(), std::sin(t) * w.imag(), std::cos(t)};
  }
  project_unit(m);
  if (g.bc() == BoundaryKind::Dirichlet) {
    for (std::size_t k : g.boundary_nodes()) {
      const cplx b = boundary_value(g, k, src);
      m[k] = {b.real(), b.imag(), 0.0};
    }
  }
  return m;
}

template <class Apply, class Energy>
double bisect_amplitude(double target, Apply apply, Energy energy) {
  if (!(target > 0.0)) throw ConfigError("target energy surplus must be positive");
  const double e0 = energy(0.0);
  double lo = 0.0, hi = 0.25;
  while (energy(hi) - e0 < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw NumericalError("perturbation cannot reach the target surplus");
  }
  for (int it = 0; it < 80 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (energy(mid) - e0 < target ? lo : hi) = mid;
  }
  const double a = 0.5 * (lo + hi);
  apply(a);
  return a;
}

std::vector<double> perturbation_shape(const Grid2D& g, int k) {
  std::vector<double> psi(g.size(), 0.0);
  const DomainSpec& s = g.spec();
  for (std::size_t n : g.mask_nodes()) {
    if (!g.is_free(n)) continue;
    const Vec2 x = g.position(n);
    double b;
    if (g.domain() == DomainKind::UnitDisk) {
      b = std::max(0.0, 1.0 - norm2(x));
    } else {
      const double xi = (x.x - s.x_min) / (s.x_max - s.x_min);
      const double eta = (x.y - s.y_min) / (s.y_max - s.y_min);
      b = 16.0 * xi * (1.0 - xi) * eta * (1.0 - eta);
    }
    psi[n] = b * std::cos(k * kPi * x.x) * std::cos(k * kPi * x.y);
  }
  return psi;
}

}  // namespace

VortexSet with_polarity(const VortexSet& v, const std::vector<int>& polarity) {
  if (polarity.size() != v.size()) throw ConfigError("one polarity per vortex required");
  VortexSet out = v;
  for (std::size_t n = 0; n < v.size(); ++n) {
    if (polarity[n] != 1 && polarity[n] != -1) throw ConfigError("polarity must be +1 or -1");
    out[n].q = 0.5 * polarity[n] * v[n].d;
  }
  return out;
}

DirectorField seed_vortex_field(const GridPtr& grid, const VortexSet& v, double eps, const std::vector<int>& polarity,
                                const SeedOptions& opts) {
  const Grid2D& g = *grid;
  check_seed(g, v, eps, opts);
  if (polarity.size() != v.size()) throw ConfigError("one polarity per vortex required");
  const VortexSet& src = opts.boundary_source.empty() ? v : opts.boundary_source;
  const CanonicalMap cm = canonical_map(grid, v, opts.boundary_source);
  const double width = 2.0 * opts.c_core * eps;
  return director_from_angle(grid, cm, src, [&](Vec2 x) {
    for (std::size_t n = 0; n < v.size(); ++n) {
      const double r = norm(x - v[n].a);
      if (r < width) {
        const double t = cap(r, width);
        return polarity[n] > 0 ? t : kPi - t;
      }
    }
    return 0.5 * kPi;
  });
}

ComplexField seed_gl_field(const GridPtr& grid, const VortexSet& v, double eps, const SeedOptions& opts) {
  const Grid2D& g = *grid;
  check_seed(g, v, eps, opts);
  const VortexSet& src = opts.boundary_source.empty() ? v : opts.boundary_source;
  const CanonicalMap cm = canonical_map(grid, v, opts.boundary_source);
  const RadialProfile* prof =
      opts.gl_profile == GLProfileKind::Minimizer ? &radial_minimizer(CoreModel::GinzburgLandau, eps) : nullptr;
  ComplexField u(grid);
  for (std::size_t k : g.mask_nodes()) {
    const Vec2 x = g.position(k);
    double f = 1.0;
    for (const auto& a : v) {
      const double r = norm(x - a.a);
      if (prof) {
        f *= (*prof)(r);
      } else {
        const double s = r / eps;
        f *= s / std::sqrt(s * s + 2.0);
      }
    }
    u[k] = f * cm.m[k];
  }
  if (g.bc() == BoundaryKind::Dirichlet) {
    for (std::size_t k : g.boundary_nodes()) u[k] = boundary_value(g, k, src);
  }
  return u;
}

DirectorField seed_bubbling_field(const GridPtr& grid, Vec2 a, int d, double eps, double bubble_radius,
                                  const SeedOptions& opts) {
  const Grid2D& g = *grid;
  const VortexSet v = make_vortices({{a, d}});
  check_seed(g, v, eps, opts);
  const double width = opts.c_core * eps;
  if (!(bubble_radius > 0.0) || !(rho(v, g) > bubble_radius + width)) {
    throw ConfigError("bubble does not fit inside the vortex neighbourhood");
  }
  const VortexSet& src = opts.boundary_source.empty() ? v : opts.boundary_source;
  const CanonicalMap cm = canonical_map(grid, v, opts.boundary_source);
  return director_from_angle(grid, cm, src, [&](Vec2 x) {
    const double r = norm(x - a);
    if (r < bubble_radius) return -kPi * (1.0 - smoothstep(r / bubble_radius));
    return 0.5 * kPi * smoothstep((r - bubble_radius) / width);
  });
}

double inject_excess_energy(ComplexField& u, double eps, const PerturbationSpec& spec) {
  const std::vector<double> psi = perturbation_shape(*u.grid, spec.wavenumber);
  const ComplexField base = u;
  auto make = [&](double A) {
    ComplexField w = base;
    for (std::size_t k = 0; k < w.size(); ++k) w[k] *= std::polar(1.0, A * psi[k]);
    return w;
  };
  return bisect_amplitude(
      spec.target_surplus, [&](double A) { u = make(A); }, [&](double A) { return total_energy(make(A), eps); });
}

double inject_excess_energy(DirectorField& m, double eps, const PerturbationSpec& spec) {
  const std::vector<double> psi = perturbation_shape(*m.grid, spec.wavenumber);
  const DirectorField base = m;
  auto make = [&](double A) {
    DirectorField w = base;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double c = std::cos(A * psi[k]), s = std::sin(A * psi[k]);
      const Vec3 b = base[k];
      w[k] = {c * b[0] - s * b[1], s * b[0] + c * b[1], b[2]};
    }
    return w;
  };
  return bisect_amplitude(
      spec.target_surplus, [&](double A) { m = make(A); }, [&](double A) { return total_energy(make(A), eps); });
}

}  // namespace vortexlab
