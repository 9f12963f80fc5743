#include "sqgd/grid.hpp"

#include <stdexcept>
#include <string>

namespace sqgd {

Grid::Grid(int n) : n_(n), dx_(kLength / n) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("grid resolution must be even and >= 8, got " + std::to_string(n));
  }
}

}  // namespace sqgd
