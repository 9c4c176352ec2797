#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vortexlab/vec.hpp"

namespace vortexlab {

enum class DomainKind { Rectangle, UnitDisk };
enum class BoundaryKind { Dirichlet, Neumann };

std::string to_string(DomainKind kind);
std::string to_string(BoundaryKind kind);
DomainKind domain_from_string(const std::string& s);
BoundaryKind boundary_from_string(const std::string& s);

/// Physical extent of the computational box. For the unit disk the box is
/// [-1, 1]^2 and only nodes with |x| <= 1 belong to the domain.
struct DomainSpec {
  DomainKind kind{DomainKind::Rectangle};
  double x_min{0.0};
  double y_min{0.0};
  double x_max{1.0};
  double y_max{1.0};

  static DomainSpec rectangle(double x0, double y0, double x1, double y1) {
    return {DomainKind::Rectangle, x0, y0, x1, y1};
  }
  static DomainSpec unit_disk() { return {DomainKind::UnitDisk, -1.0, -1.0, 1.0, 1.0}; }
};

/// Uniform tensor lattice with an embedded domain mask.
///
/// Nodes are stored row-major with x varying fastest: `idx(i, j) = j * nx + i`.
/// A node is a boundary node when it lies in the mask and at least one of its
/// four lattice neighbours does not (or it sits on the outer box edge).
class Grid2D {
 public:
  Grid2D(int nx, int ny, const DomainSpec& spec, BoundaryKind bc);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  double h() const { return h_; }
  Vec2 origin() const { return origin_; }
  DomainKind domain() const { return spec_.kind; }
  const DomainSpec& spec() const { return spec_; }
  BoundaryKind bc() const { return bc_; }

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
  Vec2 position(int i, int j) const { return {origin_.x + i * h_, origin_.y + j * h_}; }
  Vec2 position(std::size_t k) const {
    return position(static_cast<int>(k % nx_), static_cast<int>(k / nx_));
  }

  bool in_mask(int i, int j) const {
    return i >= 0 && j >= 0 && i < nx_ && j < ny_ && mask_[idx(i, j)] != 0;
  }
  bool in_mask(std::size_t k) const { return mask_[k] != 0; }
  bool is_boundary(std::size_t k) const { return boundary_[k] != 0; }
  /// Node evolves under the dynamics (in mask, and not a Dirichlet boundary node).
  bool is_free(std::size_t k) const {
    return mask_[k] != 0 && (bc_ == BoundaryKind::Neumann || boundary_[k] == 0);
  }

  const std::vector<std::size_t>& mask_nodes() const { return mask_nodes_; }
  const std::vector<std::size_t>& boundary_nodes() const { return boundary_nodes_; }

  /// Quadrature weight of a node in units of h^2: trapezoidal on the
  /// rectangle (1/2 on sides, 1/4 at corners), 1 for masked disk nodes.
  double node_weight(std::size_t k) const { return weight_[k]; }

  /// Weight of the lattice edge from (i, j) to (i+1, j) (`horizontal`) or
  /// (i, j+1). Zero when either end leaves the mask; 1/2 for rectangle
  /// edges running along the box boundary.
  double edge_weight(int i, int j, bool horizontal) const;

  /// Membership of a point in the continuous domain (closed).
  bool contains(Vec2 p) const;
  /// Euclidean distance from an interior point to the continuous boundary.
  double distance_to_boundary(Vec2 p) const;
  /// Outward unit normal at the boundary point nearest to p.
  Vec2 outward_normal(Vec2 p) const;
  /// Geometric centre of the domain (used to order boundary nodes).
  Vec2 center() const;

 private:
  int nx_;
  int ny_;
  double h_;
  Vec2 origin_;
  DomainSpec spec_;
  BoundaryKind bc_;
  std::vector<std::uint8_t> mask_;
  std::vector<std::uint8_t> boundary_;
  std::vector<double> weight_;
  std::vector<std::size_t> mask_nodes_;
  std::vector<std::size_t> boundary_nodes_;
};

using GridPtr = std::shared_ptr<const Grid2D>;

/// Builds the lattice. Rejects nx or ny below 16 ("grid too coarse"), a disk
/// with nx != ny, and rectangles whose extents do not share one spacing.
GridPtr make_grid(int nx, int ny, const DomainSpec& spec, BoundaryKind bc);

}  // namespace vortexlab
