#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "sqgd/grid.hpp"

namespace sqgd {

using Complex = std::complex<double>;

/// Real scalar field sampled on a Grid, row-major: values[i*n + j] = f(i*dx, j*dx).
class ScalarField {
 public:
  explicit ScalarField(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}
  ScalarField(Grid grid, std::vector<double> values);

  template <class F>
  static ScalarField from_function(Grid grid, F&& f) {
    ScalarField out(grid);
    const int n = grid.n();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        out(i, j) = f(grid.coord(i), grid.coord(j));
      }
    }
    return out;
  }

  static ScalarField constant(Grid grid, double c) {
    return ScalarField(grid, std::vector<double>(grid.size(), c));
  }

  const Grid& grid() const { return grid_; }
  int n() const { return grid_.n(); }

  double& operator()(int i, int j) { return values_[index(i, j)]; }
  double operator()(int i, int j) const { return values_[index(i, j)]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  ScalarField& operator*=(double s);
  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * grid_.n() + j; }

  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator*(double s, ScalarField f);
ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);

/// Largest absolute entry.
double max_abs(const ScalarField& f);
/// Largest absolute pointwise difference; grids must match.
double max_abs_diff(const ScalarField& a, const ScalarField& b);
double mean(const ScalarField& f);
/// Rectangle-rule integral over one period cell.
double integrate(const ScalarField& f);

struct VectorField {
  ScalarField u1;
  ScalarField u2;
};

/// Half-plane Fourier coefficients of a real field.
///
/// Stored n x (n/2 + 1): row i carries k1 = grid.wavenumber(i), column j carries k2 = j.
/// Normalized so that f(x) = sum_k c_k exp(i k.x); cos(x) has c_(+-1,0) = 1/2.
class Spectrum {
 public:
  explicit Spectrum(Grid grid)
      : grid_(grid), coeffs_(static_cast<std::size_t>(grid.n()) * grid.half_n()) {}

  const Grid& grid() const { return grid_; }
  int rows() const { return grid_.n(); }
  int cols() const { return grid_.half_n(); }

  Complex& operator()(int i, int j) { return coeffs_[static_cast<std::size_t>(i) * cols() + j]; }
  const Complex& operator()(int i, int j) const {
    return coeffs_[static_cast<std::size_t>(i) * cols() + j];
  }

  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

}  // namespace sqgd
