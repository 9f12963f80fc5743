#pragma once

#include <memory>
#include <vector>

#include "sqgd/field.hpp"
#include "sqgd/grid.hpp"

namespace sqgd {

// Sign conventions used throughout:
//   Riesz transform R_j has Fourier multiplier  i*k_j/|k|   (R_j = d_j Lambda^{-1}),
//   Lambda = (-Laplacian)^{1/2} has multiplier |k|,
//   velocity u = (-R_2 theta, R_1 theta).
// Every multiplier maps k = 0 to 0 and zeroes the Nyquist row and column.

/// FFT workspace and the spatial operators of the solver.
///
/// Holds FFTW plans and scratch buffers, so an instance must not be shared between
/// threads. Concurrent runs each construct their own.
class Spectral {
 public:
  explicit Spectral(Grid grid);
  ~Spectral();
  Spectral(Spectral&&) noexcept;
  Spectral& operator=(Spectral&&) noexcept;
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  const Grid& grid() const { return grid_; }

  Spectrum forward(const ScalarField& f);
  ScalarField inverse(const Spectrum& s);

  /// Full n x n complex DFT of a real field, normalized like Spectrum.
  /// Entry [i*n + j] holds k = (wavenumber(i), wavenumber(j)). Conjugate symmetry is not
  /// imposed, so sums over it measure how well the transform respects reality.
  std::vector<Complex> full_transform(const ScalarField& f);

  /// True for modes that survive the 2/3-rule truncation: 3*max(|k1|,|k2|) < n.
  bool retained(int k1, int k2) const;
  void dealias(Spectrum& s) const;

  Spectrum riesz(const Spectrum& s, int axis) const;
  Spectrum half_laplacian(const Spectrum& s) const;
  Spectrum derivative(const Spectrum& s, int axis) const;

  /// Dealiased sign * (u . grad theta) given theta in spectral space.
  Spectrum advect(const Spectrum& theta_hat, double sign = 1.0);

  ScalarField riesz_transform(const ScalarField& f, int axis);
  ScalarField half_laplacian(const ScalarField& f);
  VectorField velocity(const ScalarField& theta);
  VectorField gradient(const ScalarField& f);
  ScalarField advect(const ScalarField& theta, double sign = 1.0);
  ScalarField divergence(const VectorField& v);

 private:
  struct Plans;

  Grid grid_;
  std::unique_ptr<Plans> plans_;
};

// One-shot conveniences that build a temporary workspace.
ScalarField riesz_transform(const ScalarField& f, int axis);
ScalarField half_laplacian(const ScalarField& f);
VectorField velocity(const ScalarField& theta);
VectorField gradient(const ScalarField& f);
ScalarField advect(const ScalarField& theta);

}  // namespace sqgd
