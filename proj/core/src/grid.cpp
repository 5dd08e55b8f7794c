#include "pwfd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pwfd/errors.hpp"

namespace pwfd {

void GridSpec::validate() const {
  if (nx < 1 || nz < 1) {
    throw DomainError("grid needs at least one node per direction, got " + std::to_string(nx) +
                      "x" + std::to_string(nz));
  }
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("grid spacing h must be positive");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("aspect ratio gamma must be positive");
  if (!std::isfinite(x0) || !std::isfinite(z0)) throw DomainError("grid origin must be finite");
}

NodeIndex nearest_node(const GridSpec& grid, double x, double z) {
  const int m = static_cast<int>(std::lround((x - grid.x0) / grid.dx()));
  const int n = static_cast<int>(std::lround((z - grid.z0) / grid.dz()));
  return {std::clamp(m, 0, grid.nx - 1), std::clamp(n, 0, grid.nz - 1)};
}

}  // namespace pwfd
