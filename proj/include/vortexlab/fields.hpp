#pragma once

#include <complex>
#include <vector>

#include "vortexlab/grid.hpp"
#include "vortexlab/vec.hpp"

namespace vortexlab {

using cplx = std::complex<double>;

/// Per-node values on a shared lattice. Nodes outside the mask hold
/// value-initialised entries and are ignored by every operation.
template <class T>
struct NodeField {
  GridPtr grid;
  std::vector<T> values;

  NodeField() = default;
  explicit NodeField(GridPtr g, T fill = T{}) : grid(std::move(g)), values(grid->size(), fill) {}

  T& operator[](std::size_t k) { return values[k]; }
  const T& operator[](std::size_t k) const { return values[k]; }
  T& at(int i, int j) { return values[grid->idx(i, j)]; }
  const T& at(int i, int j) const { return values[grid->idx(i, j)]; }
  std::size_t size() const { return values.size(); }
};

/// S^2-valued magnetization (LLG state).
using DirectorField = NodeField<Vec3>;
/// C-valued order parameter (GL state, canonical harmonic map).
using ComplexField = NodeField<cplx>;
using VectorField = NodeField<Vec2>;

struct Sym2 {
  double xx{0.0};
  double xy{0.0};
  double yy{0.0};
};
using TensorField = NodeField<Sym2>;

/// Where scalar samples live: on lattice nodes, or at plaquette centres
/// (cell (i, j) spans nodes (i..i+1, j..j+1) and has index j*(nx-1)+i).
enum class Centering { Node, Cell };

struct ScalarField {
  GridPtr grid;
  Centering centering{Centering::Node};
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(GridPtr g, Centering c) : grid(std::move(g)), centering(c) {
    values.assign(c == Centering::Node ? grid->size()
                                       : static_cast<std::size_t>(grid->nx() - 1) * (grid->ny() - 1),
                  0.0);
  }

  int width() const { return centering == Centering::Node ? grid->nx() : grid->nx() - 1; }
  int height() const { return centering == Centering::Node ? grid->ny() : grid->ny() - 1; }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * width() + i; }
  Vec2 position(int i, int j) const {
    const double off = centering == Centering::Node ? 0.0 : 0.5;
    return grid->position(0, 0) + Vec2{(i + off) * grid->h(), (j + off) * grid->h()};
  }
  /// Sample belongs to the domain: a masked node, or a cell whose four corners are masked.
  bool active(int i, int j) const;
};

/// Normalises every masked node. Throws ConfigError("degenerate director")
/// when a node has |m| < 1e-8.
void project_unit(DirectorField& m);

/// Largest | |m| - 1 | over masked nodes.
double max_unit_deviation(const DirectorField& m);

/// m1 + i m2.
ComplexField planar_part(const DirectorField& m);

}  // namespace vortexlab
