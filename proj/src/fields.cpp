#include "vortexlab/fields.hpp"

#include <algorithm>
#include <cmath>

#include "vortexlab/errors.hpp"

namespace vortexlab {

bool ScalarField::active(int i, int j) const {
  if (centering == Centering::Node) return grid->in_mask(i, j);
  return grid->in_mask(i, j) && grid->in_mask(i + 1, j) && grid->in_mask(i, j + 1) && grid->in_mask(i + 1, j + 1);
}

void project_unit(DirectorField& m) {
  for (std::size_t k : m.grid->mask_nodes()) {
    const double n = norm(m[k]);
    if (!(n >= 1e-8)) throw ConfigError("degenerate director");
    m[k] = (1.0 / n) * m[k];
  }
}

double max_unit_deviation(const DirectorField& m) {
  double dev = 0.0;
  for (std::size_t k : m.grid->mask_nodes()) dev = std::max(dev, std::abs(norm(m[k]) - 1.0));
  return dev;
}

ComplexField planar_part(const DirectorField& m) {
  ComplexField u(m.grid);
  for (std::size_t k : m.grid->mask_nodes()) u[k] = {m[k][0], m[k][1]};
  return u;
}

}  // namespace vortexlab
