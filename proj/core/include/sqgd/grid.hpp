#pragma once

#include <cstddef>
#include <numbers>

namespace sqgd {

/// Uniform n x n discretization of the 2*pi-periodic square torus.
///
/// Point (i, j) sits at x = (i*dx, j*dx); i runs along x1, j along x2.
class Grid {
 public:
  static constexpr double kLength = 2.0 * std::numbers::pi;

  /// Throws std::invalid_argument unless n >= 8 and n is even.
  explicit Grid(int n);

  int n() const { return n_; }
  double length() const { return kLength; }
  double dx() const { return dx_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
  double coord(int index) const { return index * dx_; }

  /// Signed wavenumber stored at FFT index `index` along a full axis.
  int wavenumber(int index) const { return index <= n_ / 2 ? index : index - n_; }
  /// Number of stored coefficients along the half (real-to-complex) axis.
  int half_n() const { return n_ / 2 + 1; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
  double dx_;
};

}  // namespace sqgd
