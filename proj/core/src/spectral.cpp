#include "sqgd/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

namespace sqgd {

namespace {

// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_axis(int axis) {
  if (axis != 1 && axis != 2) {
    throw std::invalid_argument("axis must be 1 or 2, got " + std::to_string(axis));
  }
}

void check_grid(const Grid& expected, const Grid& got) {
  if (!(expected == got)) throw std::invalid_argument("field grid does not match workspace grid");
}

template <class T>
struct FftwDeleter {
  void operator()(T* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter<T>>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

}  // namespace

struct Spectral::Plans {
  explicit Plans(const Grid& grid)
      : n(grid.n()),
        real_count(grid.size()),
        half_count(static_cast<std::size_t>(grid.n()) * grid.half_n()),
        real(fftw_buffer<double>(real_count)),
        half(fftw_buffer<fftw_complex>(half_count)),
        full_in(fftw_buffer<fftw_complex>(real_count)),
        full_out(fftw_buffer<fftw_complex>(real_count)) {
    std::lock_guard lock(planner_mutex());
    r2c = fftw_plan_dft_r2c_2d(n, n, real.get(), half.get(), FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_2d(n, n, half.get(), real.get(), FFTW_ESTIMATE);
    c2c = fftw_plan_dft_2d(n, n, full_in.get(), full_out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    if (r2c == nullptr || c2r == nullptr || c2c == nullptr) {
      throw std::runtime_error("FFTW planning failed");
    }
  }

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
    fftw_destroy_plan(c2c);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;

  int n;
  std::size_t real_count;
  std::size_t half_count;
  FftwBuffer<double> real;
  FftwBuffer<fftw_complex> half;
  FftwBuffer<fftw_complex> full_in;
  FftwBuffer<fftw_complex> full_out;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  fftw_plan c2c = nullptr;
};

Spectral::Spectral(Grid grid) : grid_(grid), plans_(std::make_unique<Plans>(grid)) {}
Spectral::~Spectral() = default;
Spectral::Spectral(Spectral&&) noexcept = default;
Spectral& Spectral::operator=(Spectral&&) noexcept = default;

Spectrum Spectral::forward(const ScalarField& f) {
  check_grid(grid_, f.grid());
  auto values = f.values();
  std::copy(values.begin(), values.end(), plans_->real.get());
  fftw_execute(plans_->r2c);

  Spectrum out(grid_);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  auto coeffs = out.coeffs();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    coeffs[k] = Complex(plans_->half[k][0], plans_->half[k][1]) * scale;
  }
  return out;
}

ScalarField Spectral::inverse(const Spectrum& s) {
  check_grid(grid_, s.grid());
  auto coeffs = s.coeffs();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    plans_->half[k][0] = coeffs[k].real();
    plans_->half[k][1] = coeffs[k].imag();
  }
  fftw_execute(plans_->c2r);

  ScalarField out(grid_);
  auto values = out.values();
  std::copy(plans_->real.get(), plans_->real.get() + values.size(), values.begin());
  return out;
}

std::vector<Complex> Spectral::full_transform(const ScalarField& f) {
  check_grid(grid_, f.grid());
  auto values = f.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    plans_->full_in[k][0] = values[k];
    plans_->full_in[k][1] = 0.0;
  }
  fftw_execute(plans_->c2c);

  std::vector<Complex> out(values.size());
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = Complex(plans_->full_out[k][0], plans_->full_out[k][1]) * scale;
  }
  return out;
}

bool Spectral::retained(int k1, int k2) const {
  return 3 * std::max(std::abs(k1), std::abs(k2)) < grid_.n();
}

void Spectral::dealias(Spectrum& s) const {
  for (int i = 0; i < s.rows(); ++i) {
    const int k1 = grid_.wavenumber(i);
    for (int j = 0; j < s.cols(); ++j) {
      if (!retained(k1, j)) s(i, j) = 0.0;
    }
  }
}

namespace {

// Applies a multiplier m(k1, k2) to every mode except k = 0 and the Nyquist row/column.
template <class Multiplier>
Spectrum apply_multiplier(const Spectrum& s, Multiplier&& m) {
  const Grid& g = s.grid();
  const int nyquist = g.n() / 2;
  Spectrum out(g);
  for (int i = 0; i < s.rows(); ++i) {
    const int k1 = g.wavenumber(i);
    for (int j = 0; j < s.cols(); ++j) {
      if (i == nyquist || j == nyquist || (k1 == 0 && j == 0)) continue;
      out(i, j) = m(k1, j) * s(i, j);
    }
  }
  return out;
}

double norm_k(int k1, int k2) { return std::sqrt(static_cast<double>(k1 * k1 + k2 * k2)); }

}  // namespace

Spectrum Spectral::riesz(const Spectrum& s, int axis) const {
  check_axis(axis);
  return apply_multiplier(s, [axis](int k1, int k2) {
    const double kj = axis == 1 ? k1 : k2;
    return Complex(0.0, kj / norm_k(k1, k2));
  });
}

Spectrum Spectral::half_laplacian(const Spectrum& s) const {
  return apply_multiplier(s, [](int k1, int k2) { return Complex(norm_k(k1, k2), 0.0); });
}

Spectrum Spectral::derivative(const Spectrum& s, int axis) const {
  check_axis(axis);
  return apply_multiplier(s, [axis](int k1, int k2) {
    return Complex(0.0, axis == 1 ? static_cast<double>(k1) : static_cast<double>(k2));
  });
}

Spectrum Spectral::advect(const Spectrum& theta_hat, double sign) {
  check_grid(grid_, theta_hat.grid());
  Spectrum th = theta_hat;
  dealias(th);

  // u1 = -R2 theta, u2 = R1 theta, g = grad theta; all from the truncated spectrum.
  const ScalarField u1 = inverse(riesz(th, 2));
  const ScalarField u2 = inverse(riesz(th, 1));
  const ScalarField g1 = inverse(derivative(th, 1));
  const ScalarField g2 = inverse(derivative(th, 2));

  ScalarField product(grid_);
  auto p = product.values();
  auto a1 = u1.values();
  auto a2 = u2.values();
  auto b1 = g1.values();
  auto b2 = g2.values();
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = sign * (-a1[k] * b1[k] + a2[k] * b2[k]);
  }

  Spectrum out = forward(product);
  dealias(out);
  return out;
}

ScalarField Spectral::riesz_transform(const ScalarField& f, int axis) {
  check_axis(axis);
  return inverse(riesz(forward(f), axis));
}

ScalarField Spectral::half_laplacian(const ScalarField& f) {
  return inverse(half_laplacian(forward(f)));
}

VectorField Spectral::velocity(const ScalarField& theta) {
  const Spectrum th = forward(theta);
  ScalarField u1 = inverse(riesz(th, 2));
  u1 *= -1.0;
  return {std::move(u1), inverse(riesz(th, 1))};
}

VectorField Spectral::gradient(const ScalarField& f) {
  const Spectrum s = forward(f);
  return {inverse(derivative(s, 1)), inverse(derivative(s, 2))};
}

ScalarField Spectral::advect(const ScalarField& theta, double sign) {
  return inverse(advect(forward(theta), sign));
}

ScalarField Spectral::divergence(const VectorField& v) {
  Spectrum d = derivative(forward(v.u1), 1);
  const Spectrum d2 = derivative(forward(v.u2), 2);
  auto a = d.coeffs();
  auto b = d2.coeffs();
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return inverse(d);
}

ScalarField riesz_transform(const ScalarField& f, int axis) {
  return Spectral(f.grid()).riesz_transform(f, axis);
}
ScalarField half_laplacian(const ScalarField& f) { return Spectral(f.grid()).half_laplacian(f); }
VectorField velocity(const ScalarField& theta) { return Spectral(theta.grid()).velocity(theta); }
VectorField gradient(const ScalarField& f) { return Spectral(f.grid()).gradient(f); }
ScalarField advect(const ScalarField& theta) { return Spectral(theta.grid()).advect(theta); }

}  // namespace sqgd
