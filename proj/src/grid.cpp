#include "vortexlab/grid.hpp"

#include <algorithm>
#include <cmath>

#include "vortexlab/errors.hpp"

namespace vortexlab {

std::string to_string(DomainKind kind) {
  return kind == DomainKind::Rectangle ? "rectangle" : "disk";
}

std::string to_string(BoundaryKind kind) {
  return kind == BoundaryKind::Dirichlet ? "dirichlet" : "neumann";
}

DomainKind domain_from_string(const std::string& s) {
  if (s == "rectangle" || s == "rect") return DomainKind::Rectangle;
  if (s == "disk" || s == "unit-disk") return DomainKind::UnitDisk;
  throw ConfigError("unknown domain '" + s + "'");
}

BoundaryKind boundary_from_string(const std::string& s) {
  if (s == "dirichlet") return BoundaryKind::Dirichlet;
  if (s == "neumann") return BoundaryKind::Neumann;
  throw ConfigError("unknown boundary condition '" + s + "'");
}

Grid2D::Grid2D(int nx, int ny, const DomainSpec& spec, BoundaryKind bc)
    : nx_(nx), ny_(ny), spec_(spec), bc_(bc) {
  if (nx < 16 || ny < 16) throw ConfigError("grid too coarse");
  if (spec.kind == DomainKind::UnitDisk) {
    if (nx != ny) throw ConfigError("disk grid requires nx == ny");
    spec_ = DomainSpec::unit_disk();
  }
  if (!(spec_.x_max > spec_.x_min) || !(spec_.y_max > spec_.y_min)) {
    throw ConfigError("empty domain extent");
  }
  h_ = (spec_.x_max - spec_.x_min) / (nx - 1);
  const double hy = (spec_.y_max - spec_.y_min) / (ny - 1);
  if (std::abs(hy - h_) > 1e-9 * h_) throw ConfigError("non-uniform spacing: x and y extents disagree");
  origin_ = {spec_.x_min, spec_.y_min};

  const std::size_t n = size();
  mask_.assign(n, 0);
  boundary_.assign(n, 0);
  weight_.assign(n, 0.0);
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const Vec2 p = position(i, j);
      const bool inside = spec_.kind == DomainKind::Rectangle || norm2(p) <= 1.0 + 1e-12;
      mask_[idx(i, j)] = inside ? 1 : 0;
    }
  }
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const std::size_t k = idx(i, j);
      if (!mask_[k]) continue;
      mask_nodes_.push_back(k);
      const bool edge = !in_mask(i - 1, j) || !in_mask(i + 1, j) || !in_mask(i, j - 1) || !in_mask(i, j + 1);
      if (edge) {
        boundary_[k] = 1;
        boundary_nodes_.push_back(k);
      }
      if (spec_.kind == DomainKind::Rectangle) {
        const double wx = (i == 0 || i == nx_ - 1) ? 0.5 : 1.0;
        const double wy = (j == 0 || j == ny_ - 1) ? 0.5 : 1.0;
        weight_[k] = wx * wy;
      } else {
        weight_[k] = 1.0;
      }
    }
  }
}

double Grid2D::edge_weight(int i, int j, bool horizontal) const {
  const int i2 = horizontal ? i + 1 : i;
  const int j2 = horizontal ? j : j + 1;
  if (!in_mask(i, j) || !in_mask(i2, j2)) return 0.0;
  if (spec_.kind == DomainKind::Rectangle) {
    if (horizontal && (j == 0 || j == ny_ - 1)) return 0.5;
    if (!horizontal && (i == 0 || i == nx_ - 1)) return 0.5;
  }
  return 1.0;
}

bool Grid2D::contains(Vec2 p) const {
  if (spec_.kind == DomainKind::UnitDisk) return norm2(p) <= 1.0;
  return p.x >= spec_.x_min && p.x <= spec_.x_max && p.y >= spec_.y_min && p.y <= spec_.y_max;
}

double Grid2D::distance_to_boundary(Vec2 p) const {
  if (spec_.kind == DomainKind::UnitDisk) return 1.0 - norm(p);
  return std::min({p.x - spec_.x_min, spec_.x_max - p.x, p.y - spec_.y_min, spec_.y_max - p.y});
}

Vec2 Grid2D::outward_normal(Vec2 p) const {
  if (spec_.kind == DomainKind::UnitDisk) {
    const double r = norm(p);
    return r > 0 ? p / r : Vec2{1.0, 0.0};
  }
  const double d[4] = {p.x - spec_.x_min, spec_.x_max - p.x, p.y - spec_.y_min, spec_.y_max - p.y};
  const Vec2 n[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  return n[std::min_element(d, d + 4) - d];
}

Vec2 Grid2D::center() const {
  return {0.5 * (spec_.x_min + spec_.x_max), 0.5 * (spec_.y_min + spec_.y_max)};
}

GridPtr make_grid(int nx, int ny, const DomainSpec& spec, BoundaryKind bc) {
  return std::make_shared<const Grid2D>(nx, ny, spec, bc);
}

}  // namespace vortexlab
