#include "vortexlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "vortexlab/errors.hpp"
#include "vortexlab/radial_profile.hpp"
#include "vortexlab/stencil.hpp"

namespace vortexlab {

namespace {

constexpr double kPi = std::numbers::pi;

cplx interpolate_complex(const ComplexField& u, Vec2 p) {
  const Grid2D& g = *u.grid;
  const double fx = (p.x - g.origin().x) / g.h();
  const double fy = (p.y - g.origin().y) / g.h();
  const int i = std::clamp(static_cast<int>(std::floor(fx)), 0, g.nx() - 2);
  const int j = std::clamp(static_cast<int>(std::floor(fy)), 0, g.ny() - 2);
  const double tx = std::clamp(fx - i, 0.0, 1.0);
  const double ty = std::clamp(fy - j, 0.0, 1.0);
  const double w[4] = {(1 - tx) * (1 - ty), tx * (1 - ty), (1 - tx) * ty, tx * ty};
  const int di[4] = {0, 1, 0, 1};
  const int dj[4] = {0, 0, 1, 1};
  cplx acc = 0.0;
  double ws = 0.0;
  for (int c = 0; c < 4; ++c) {
    if (!g.in_mask(i + di[c], j + dj[c])) continue;
    acc += w[c] * u.at(i + di[c], j + dj[c]);
    ws += w[c];
  }
  return ws > 0 ? acc / ws : cplx{};
}

double solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 2.0 * std::atan2(dot(a, cross(b, c)), 1.0 + dot(a, b) + dot(b, c) + dot(c, a));
}

double round_half_odd(double x) { return std::round(x - 0.5) + 0.5; }
double round_half(double x) { return 0.5 * std::round(2.0 * x); }

double default_min_sep(const Grid2D& g, double eps) { return std::max(8.0 * g.h(), 6.0 * eps); }

// Least-squares quadratic through a 3x3 block (row-major, offsets -1..1);
// returns the stationary point of a concave fit.
bool quadratic_peak(const double* f, Vec2& offset) {
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, s0 = 0;
  for (int j = -1; j <= 1; ++j) {
    for (int i = -1; i <= 1; ++i) {
      const double v = f[(j + 1) * 3 + i + 1];
      s0 += v;
      sx += i * v;
      sy += j * v;
      sxx += i * i * v;
      syy += j * j * v;
      sxy += i * j * v;
    }
  }
  // Orthogonal design: x, y, xy decouple; x^2 and y^2 couple only through the mean.
  const double c1 = sx / 6.0, c2 = sy / 6.0, c4 = sxy / 4.0;
  const double mean = s0 / 9.0;
  const double c3 = (sxx - 6.0 * mean) / 2.0;
  const double c5 = (syy - 6.0 * mean) / 2.0;
  const double a = 2.0 * c3, b = c4, d = 2.0 * c5;
  const double det = a * d - b * b;
  if (!(a < 0.0 && det > 0.0)) return false;
  offset = {(-c1 * d + c2 * b) / det, (-c2 * a + c1 * b) / det};
  return true;
}


int plaquette_winding(const cplx* c) {
  double w = 0.0;
  for (int q = 0; q < 4; ++q) w += std::arg(c[(q + 1) % 4] / c[q]);
  return static_cast<int>(std::lround(w / (2.0 * kPi)));
}

// Zero of the bilinear interpolant in the plaquette closest to `near` (within
// `radius`) whose corner phases wind `winding` times.
bool plaquette_zero(const ComplexField& u, Vec2 near, double radius, int winding, Vec2& zero) {
  const Grid2D& g = *u.grid;
  const double h = g.h();
  const int i0 = std::max(0, static_cast<int>((near.x - radius - g.origin().x) / h) - 1);
  const int i1 = std::min(g.nx() - 2, static_cast<int>((near.x + radius - g.origin().x) / h) + 1);
  const int j0 = std::max(0, static_cast<int>((near.y - radius - g.origin().y) / h) - 1);
  const int j1 = std::min(g.ny() - 2, static_cast<int>((near.y + radius - g.origin().y) / h) + 1);
  double best = radius;
  bool found = false;
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      if (!g.in_mask(i, j) || !g.in_mask(i + 1, j) || !g.in_mask(i, j + 1) || !g.in_mask(i + 1, j + 1)) continue;
      const cplx a = u.at(i, j), b = u.at(i + 1, j), d = u.at(i, j + 1), e = u.at(i + 1, j + 1);
      if (a == 0.0 || b == 0.0 || d == 0.0 || e == 0.0) continue;
      const cplx ring[4] = {a, b, e, d};
      if (plaquette_winding(ring) != winding) continue;
      double s = 0.5, t = 0.5;
      bool ok = false;
      for (int it = 0; it < 30; ++it) {
        const cplx f = a * (1 - s) * (1 - t) + b * s * (1 - t) + d * (1 - s) * t + e * s * t;
        const cplx fs = (b - a) * (1 - t) + (e - d) * t;
        const cplx ft = (d - a) * (1 - s) + (e - b) * s;
        const double det = fs.real() * ft.imag() - fs.imag() * ft.real();
        if (det == 0.0) break;
        const double ds = (f.real() * ft.imag() - f.imag() * ft.real()) / det;
        const double dt = (fs.real() * f.imag() - fs.imag() * f.real()) / det;
        s -= ds;
        t -= dt;
        if (std::abs(ds) + std::abs(dt) < 1e-13) {
          ok = true;
          break;
        }
      }
      if (!ok || s < -0.05 || s > 1.05 || t < -0.05 || t > 1.05) continue;
      const Vec2 p = g.position(i, j) + h * Vec2{s, t};
      const double dist = norm(p - near);
      if (dist <= best) {
        best = dist;
        zero = p;
        found = true;
      }
    }
  }
  return found;
}

// Quadratic fit of log|J| through the extremal plaquette near pos and its neighbours.
void quadratic_refine(const ScalarField& J, double sign, Vec2& pos) {
  const Grid2D& g = *J.grid;
  const double h = g.h();
  const int w = J.width(), ht = J.height();
  int bi = -1, bj = -1;
  double best = 0.0;
  const int ic = static_cast<int>((pos.x - g.origin().x) / h - 0.5);
  const int jc = static_cast<int>((pos.y - g.origin().y) / h - 0.5);
  for (int j = jc - 2; j <= jc + 2; ++j) {
    for (int i = ic - 2; i <= ic + 2; ++i) {
      if (i < 1 || j < 1 || i >= w - 1 || j >= ht - 1 || !J.active(i, j)) continue;
      const double val = sign * J.values[J.idx(i, j)];
      if (val > best) {
        best = val;
        bi = i;
        bj = j;
      }
    }
  }
  if (bi < 0) return;
  double vals[9];
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      const double val = J.active(bi + di, bj + dj) ? sign * J.values[J.idx(bi + di, bj + dj)] : 0.0;
      if (!(val > 0.0)) return;
      vals[(dj + 1) * 3 + di + 1] = std::log(val);
    }
  }
  Vec2 offset;
  if (!quadratic_peak(vals, offset) || norm2(offset) > 1.0) return;
  const Vec2 peak = J.position(bi, bj) + h * offset;
  if (norm(peak - pos) <= 2.0 * h) pos = peak;
}

}  // namespace

ScalarField energy_density(const DirectorField& m, double eps) {
  if (!(eps > 0.0)) throw ConfigError("epsilon must be positive");
  const Grid2D& g = *m.grid;
  ScalarField e(m.grid, Centering::Node);
  const double c = 0.5 / (eps * eps);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.in_mask(i, j)) continue;
      const Vec3 a = partial(m, i, j, 0);
      const Vec3 b = partial(m, i, j, 1);
      const double m3 = m.at(i, j)[2];
      e.values[g.idx(i, j)] = 0.5 * (dot(a, a) + dot(b, b)) + c * m3 * m3;
    }
  }
  return e;
}

ScalarField energy_density(const ComplexField& u, double eps) {
  if (!(eps > 0.0)) throw ConfigError("epsilon must be positive");
  const Grid2D& g = *u.grid;
  ScalarField e(u.grid, Centering::Node);
  const double c = 0.25 / (eps * eps);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.in_mask(i, j)) continue;
      const cplx a = partial(u, i, j, 0);
      const cplx b = partial(u, i, j, 1);
      const double w = 1.0 - std::norm(u.at(i, j));
      e.values[g.idx(i, j)] = 0.5 * (std::norm(a) + std::norm(b)) + c * w * w;
    }
  }
  return e;
}

double integrate(const ScalarField& s) {
  if (s.centering != Centering::Node) throw ConfigError("integrate expects a node-centred field");
  const Grid2D& g = *s.grid;
  double acc = 0.0;
  for (std::size_t k : g.mask_nodes()) acc += g.node_weight(k) * s.values[k];
  return acc * g.h() * g.h();
}

double total_energy(const DirectorField& m, double eps) {
  const Grid2D& g = *m.grid;
  double pot = 0.0;
  for (std::size_t k : g.mask_nodes()) pot += g.node_weight(k) * m[k][2] * m[k][2];
  return edge_dirichlet_energy(m) + pot * g.h() * g.h() * 0.5 / (eps * eps);
}

double total_energy(const ComplexField& u, double eps) {
  const Grid2D& g = *u.grid;
  double pot = 0.0;
  for (std::size_t k : g.mask_nodes()) {
    const double w = 1.0 - std::norm(u[k]);
    pot += g.node_weight(k) * w * w;
  }
  return edge_dirichlet_energy(u) + pot * g.h() * g.h() * 0.25 / (eps * eps);
}

ScalarField vorticity(const DirectorField& m) {
  const Grid2D& g = *m.grid;
  ScalarField w(m.grid, Centering::Node);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.in_mask(i, j)) continue;
      w.values[g.idx(i, j)] = dot(m.at(i, j), cross(partial(m, i, j, 0), partial(m, i, j, 1)));
    }
  }
  return w;
}

ScalarField lattice_vorticity(const DirectorField& m) {
  ScalarField w(m.grid, Centering::Cell);
  const double inv = 1.0 / (m.grid->h() * m.grid->h());
  for (int j = 0; j < w.height(); ++j) {
    for (int i = 0; i < w.width(); ++i) {
      if (!w.active(i, j)) continue;
      const Vec3& a = m.at(i, j);
      const Vec3& b = m.at(i + 1, j);
      const Vec3& c = m.at(i + 1, j + 1);
      const Vec3& d = m.at(i, j + 1);
      w.values[w.idx(i, j)] = (solid_angle(a, b, c) + solid_angle(a, c, d)) * inv;
    }
  }
  return w;
}

ScalarField planar_jacobian(const ComplexField& u) {
  ScalarField J(u.grid, Centering::Cell);
  const double inv = 0.5 / (u.grid->h() * u.grid->h());
  auto edge = [](cplx a, cplx b) { return std::abs(a) * std::abs(b) * std::arg(b * std::conj(a)); };
  for (int j = 0; j < J.height(); ++j) {
    for (int i = 0; i < J.width(); ++i) {
      if (!J.active(i, j)) continue;
      const cplx a = u.at(i, j), b = u.at(i + 1, j), c = u.at(i + 1, j + 1), d = u.at(i, j + 1);
      J.values[J.idx(i, j)] = (edge(a, b) + edge(b, c) + edge(c, d) + edge(d, a)) * inv;
    }
  }
  return J;
}

ScalarField planar_jacobian(const DirectorField& m) { return planar_jacobian(planar_part(m)); }

ScalarField pointwise_jacobian(const ComplexField& u) {
  const Grid2D& g = *u.grid;
  ScalarField J(u.grid, Centering::Node);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.in_mask(i, j)) continue;
      J.values[g.idx(i, j)] = (std::conj(partial(u, i, j, 0)) * partial(u, i, j, 1)).imag();
    }
  }
  return J;
}

VectorField supercurrent(const ComplexField& u) {
  const Grid2D& g = *u.grid;
  VectorField jf(u.grid);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.in_mask(i, j)) continue;
      const cplx c = std::conj(u.at(i, j));
      jf.at(i, j) = {(c * partial(u, i, j, 0)).imag(), (c * partial(u, i, j, 1)).imag()};
    }
  }
  return jf;
}

VectorField supercurrent(const DirectorField& m) { return supercurrent(planar_part(m)); }

std::pair<double, double> identity_residuals(const DirectorField& m) {
  const Grid2D& g = *m.grid;
  NodeField<double> fx(m.grid), fy(m.grid);
  std::vector<Vec3> d1(g.size()), d2(g.size());
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.in_mask(i, j)) continue;
      const std::size_t k = g.idx(i, j);
      d1[k] = partial(m, i, j, 0);
      d2[k] = partial(m, i, j, 1);
      const Vec3& v = m[k];
      fx[k] = v[1] * v[2] * d1[k][0] - v[0] * v[2] * d1[k][1];
      fy[k] = v[1] * v[2] * d2[k][0] - v[0] * v[2] * d2[k][1];
    }
  }
  double r1 = 0.0, r2 = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!g.in_mask(i, j)) continue;
      const std::size_t k = g.idx(i, j);
      const Vec3& v = m[k];
      const double J = d1[k][0] * d2[k][1] - d1[k][1] * d2[k][0];
      const double w = dot(v, cross(d1[k], d2[k]));
      const double cf = partial(fy, i, j, 0) - partial(fx, i, j, 1);
      r1 += g.node_weight(k) * std::abs(J - v[2] * w);
      r2 += g.node_weight(k) * std::abs(w - 3.0 * v[2] * J - cf);
    }
  }
  const double h2 = g.h() * g.h();
  return {r1 * h2, r2 * h2};
}

int winding_number(const ComplexField& u, Vec2 center, double radius) {
  const double h = u.grid->h();
  const int n = std::max(64, static_cast<int>(std::ceil(16.0 * kPi * radius / h)));
  double total = 0.0;
  cplx prev = interpolate_complex(u, center + Vec2{radius, 0.0});
  const cplx first = prev;
  for (int k = 1; k <= n; ++k) {
    const double t = 2.0 * kPi * k / n;
    const cplx cur = k == n ? first : interpolate_complex(u, center + radius * Vec2{std::cos(t), std::sin(t)});
    total += std::arg(cur * std::conj(prev));
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

double ball_mass(const ScalarField& s, Vec2 center, double r) {
  const Grid2D& g = *s.grid;
  if (!(r > 0.0) || g.distance_to_boundary(center) < r) throw ConfigError("ball not contained in the domain");
  const double h = g.h();
  const double diag = h / std::sqrt(2.0);
  const int sub = 8;
  double acc = 0.0;
  for (int j = 0; j < s.height(); ++j) {
    for (int i = 0; i < s.width(); ++i) {
      const Vec2 p = s.position(i, j);
      const double d = norm(p - center);
      if (d >= r + diag || !s.active(i, j)) continue;
      double frac = 1.0;
      if (d > r - diag) {
        int in = 0;
        for (int b = 0; b < sub; ++b) {
          for (int a = 0; a < sub; ++a) {
            const Vec2 q = p + Vec2{((a + 0.5) / sub - 0.5) * h, ((b + 0.5) / sub - 0.5) * h};
            if (norm2(q - center) <= r * r) ++in;
          }
        }
        frac = static_cast<double>(in) / (sub * sub);
      }
      acc += frac * s.values[s.idx(i, j)];
    }
  }
  return acc * h * h;
}

std::vector<VortexReading> locate_vortices(const ScalarField& J, const ComplexField& u, const LocateOptions& opts) {
  if (J.centering != Centering::Cell) throw ConfigError("locate_vortices expects the plaquette Jacobian");
  const Grid2D& g = *J.grid;
  const double h = g.h();
  const double min_sep = opts.min_sep > 0.0 ? opts.min_sep : default_min_sep(g, opts.epsilon);
  if (min_sep < 4.0 * h * (1.0 - 1e-12)) throw ConfigError("min_sep must be at least 4h");
  if (!(opts.threshold > 0.0 && opts.threshold < kPi)) throw ConfigError("threshold must lie in (0, pi)");

  const int w = J.width(), ht = J.height();
  double jmax = 0.0;
  for (double x : J.values) jmax = std::max(jmax, std::abs(x));
  std::vector<VortexReading> out;
  if (!(jmax > 0.0)) return out;
  // A collapsing bubble can spike far above the core scale 1/eps^2.
  const double cut = 0.05 * (opts.epsilon > 0.0 ? std::min(jmax, 1.0 / (opts.epsilon * opts.epsilon)) : jmax);

  struct Cluster {
    double mass{0.0};
    double wsum{0.0};
    Vec2 centroid;
    bool merged{false};
  };
  std::vector<Cluster> clusters;
  std::vector<int> label(J.values.size(), -1);
  std::vector<std::size_t> stack;
  for (int j = 0; j < ht; ++j) {
    for (int i = 0; i < w; ++i) {
      const std::size_t k0 = J.idx(i, j);
      if (label[k0] >= 0 || std::abs(J.values[k0]) < cut || !J.active(i, j)) continue;
      const bool pos = J.values[k0] > 0;
      Cluster c;
      Vec2 acc;
      label[k0] = static_cast<int>(clusters.size());
      stack.assign(1, k0);
      while (!stack.empty()) {
        const std::size_t k = stack.back();
        stack.pop_back();
        const int ci = static_cast<int>(k % w), cj = static_cast<int>(k / w);
        const double val = J.values[k];
        c.mass += val;
        c.wsum += std::abs(val);
        acc += std::abs(val) * J.position(ci, cj);
        const int ni[4] = {ci + 1, ci - 1, ci, ci};
        const int nj[4] = {cj, cj, cj + 1, cj - 1};
        for (int q = 0; q < 4; ++q) {
          if (ni[q] < 0 || nj[q] < 0 || ni[q] >= w || nj[q] >= ht) continue;
          const std::size_t kn = J.idx(ni[q], nj[q]);
          const double vn = J.values[kn];
          if (label[kn] >= 0 || std::abs(vn) < cut || (vn > 0) != pos || !J.active(ni[q], nj[q])) continue;
          label[kn] = label[k0];
          stack.push_back(kn);
        }
      }
      c.mass *= h * h;
      c.centroid = acc / c.wsum;
      clusters.push_back(c);
    }
  }

  // Merge clusters whose centroids lie within min_sep of each other.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < clusters.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        if (norm(clusters[a].centroid - clusters[b].centroid) >= min_sep) continue;
        Cluster& x = clusters[a];
        const Cluster& y = clusters[b];
        x.centroid = (x.wsum * x.centroid + y.wsum * y.centroid) / (x.wsum + y.wsum);
        x.wsum += y.wsum;
        x.mass += y.mass;
        x.merged = true;
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b));
        changed = true;
        break;
      }
    }
  }

  for (const Cluster& c : clusters) {
    if (std::abs(c.mass) < opts.threshold) continue;
    const double sign = c.mass > 0 ? 1.0 : -1.0;
    // Windowed |J| centroid.
    Vec2 pos = c.centroid;
    const double win = 0.5 * min_sep;
    for (int it = 0; it < 4; ++it) {
      Vec2 acc;
      double ws = 0.0;
      const int i0 = std::max(0, static_cast<int>((pos.x - win - g.origin().x) / h) - 1);
      const int i1 = std::min(w - 1, static_cast<int>((pos.x + win - g.origin().x) / h) + 1);
      const int j0 = std::max(0, static_cast<int>((pos.y - win - g.origin().y) / h) - 1);
      const int j1 = std::min(ht - 1, static_cast<int>((pos.y + win - g.origin().y) / h) + 1);
      for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
          const Vec2 p = J.position(i, j);
          if (norm(p - pos) > win || !J.active(i, j)) continue;
          const double val = std::abs(J.values[J.idx(i, j)]);
          acc += val * p;
          ws += val;
        }
      }
      if (ws > 0) pos = acc / ws;
    }
    // Sub-grid refinement: zero of the bilinear interpolant of u in the
    // nearest plaquette winding with the cluster's sign, else a quadratic fit.
    if (!c.merged) {
      Vec2 zero;
      if (plaquette_zero(u, pos, 4.0 * h, static_cast<int>(sign), zero)) {
        pos = zero;
      } else {
        quadratic_refine(J, sign, pos);
      }
    }
    VortexReading r;
    r.position = pos;
    r.merged = c.merged;
    out.push_back(r);
  }

  for (std::size_t n = 0; n < out.size(); ++n) {
    double rw = opts.window_radius > 0.0 ? opts.window_radius : min_sep;
    rw = std::min(rw, 0.95 * g.distance_to_boundary(out[n].position) - h);
    for (std::size_t m = 0; m < out.size(); ++m) {
      if (m != n) rw = std::min(rw, 0.45 * norm(out[n].position - out[m].position));
    }
    rw = std::max(rw, 2.0 * h);
    out[n].window_radius = rw;
    if (g.distance_to_boundary(out[n].position) >= rw) {
      out[n].jacobian_mass = ball_mass(J, out[n].position, rw);
      out[n].degree = winding_number(u, out[n].position, rw);
    }
  }
  return out;
}

std::vector<VortexReading> read_vortices(const ComplexField& u, const LocateOptions& opts) {
  return locate_vortices(planar_jacobian(u), u, opts);
}

std::vector<VortexReading> read_vortices(const DirectorField& m, const LocateOptions& opts) {
  const ComplexField u = planar_part(m);
  auto out = locate_vortices(planar_jacobian(u), u, opts);
  const ScalarField w = lattice_vorticity(m);
  for (auto& r : out) {
    if (m.grid->distance_to_boundary(r.position) < r.window_radius) continue;
    r.vorticity_mass = ball_mass(w, r.position, r.window_radius);
    r.q_hat = round_half_odd(r.vorticity_mass / (4.0 * kPi));
    r.q_hat_shifted = round_half((r.vorticity_mass - 2.0 * kPi * r.degree) / (4.0 * kPi));
  }
  return out;
}

VortexSet to_vortex_set(const std::vector<VortexReading>& readings) {
  VortexSet v;
  for (const auto& r : readings) {
    const double q = r.vorticity_mass != 0.0 ? r.q_hat : 0.5 * r.degree;
    v.entries.push_back({r.position, r.degree, q});
  }
  return v;
}

RenormalizedEnergyModel model_for(const Grid2D& grid, const VortexSet& boundary_source) {
  if (grid.domain() == DomainKind::UnitDisk) return RenormalizedEnergyModel::unit_disk(grid.bc(), boundary_source);
  return RenormalizedEnergyModel::rectangle_domain(grid.spec(), grid.bc(), boundary_source);
}

namespace {

double excess(double energy, double eps, const VortexSet& v, const Grid2D& g, const RenormalizedEnergyModel& model,
              CoreModel core) {
  if (v.empty() || !(rho(v, g) > 2.0 * eps)) throw ConfigError("vortices unresolved at this epsilon");
  const double N = static_cast<double>(v.size());
  return energy - N * (kPi * std::log(1.0 / eps) + gamma_num(core, eps)) - renormalized_energy(v, model);
}

}  // namespace

double excess_energy(const ComplexField& u, double eps, const VortexSet& v, const RenormalizedEnergyModel& model) {
  return excess(total_energy(u, eps), eps, v, *u.grid, model, CoreModel::GinzburgLandau);
}

double excess_energy(const DirectorField& m, double eps, const VortexSet& v, const RenormalizedEnergyModel& model) {
  return excess(total_energy(m, eps), eps, v, *m.grid, model, CoreModel::Micromagnetic);
}

}  // namespace vortexlab
