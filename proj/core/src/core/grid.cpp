#include "geoprandtl/core/grid.hpp"

#include <cmath>
#include <string>

#include "geoprandtl/core/error.hpp"

namespace geoprandtl {

void VerticalGrid::validate() const {
    if (!(ymax > 0.0) || !std::isfinite(ymax)) throw ConfigError("grid: Ymax must be positive");
    if (ny < 16) throw ConfigError("grid: Ny must be >= 16 (got " + std::to_string(ny) + ")");
}

void Grid::validate() const {
    if (nx < 8 || (nx & (nx - 1)) != 0)
        throw ConfigError("grid: Nx must be a power of two >= 8 (got " + std::to_string(nx) + ")");
    if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("grid: L must be positive");
    vertical.validate();
}

}  // namespace geoprandtl
