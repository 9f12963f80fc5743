#include "sqgd/initial.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sqgd/snapshot.hpp"
#include "sqgd/spectral.hpp"

namespace sqgd {

namespace {

ScalarField random_smooth(const InitSpec& spec, const Grid& grid) {
  const int n = grid.n();
  if (spec.k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (3 * spec.k_max > n) {
    throw std::invalid_argument("k_max exceeds n/3 and would sit in the dealiased band");
  }
  if (!(spec.target_linf > 0.0)) throw std::invalid_argument("target_linf must be positive");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  Spectrum s(grid);
  const int kmax = spec.k_max;
  for (int k1 = -kmax; k1 <= kmax; ++k1) {
    for (int k2 = 0; k2 <= kmax; ++k2) {
      // One draw per conjugate pair, from the half plane k2 > 0 or (k2 == 0, k1 > 0).
      if (k2 == 0 && k1 <= 0) continue;
      const int k_sq = k1 * k1 + k2 * k2;
      if (k_sq > kmax * kmax) continue;
      const double amp = std::pow(std::sqrt(static_cast<double>(k_sq)), -spec.slope);
      const Complex c = std::polar(amp, phase(rng));
      s((k1 + n) % n, k2) = c;
      if (k2 == 0) s((n - k1) % n, 0) = std::conj(c);
    }
  }

  ScalarField theta = Spectral(grid).inverse(s);
  theta *= spec.target_linf / max_abs(theta);
  return theta;
}

ScalarField gaussian_bump(const InitSpec& spec, const Grid& grid) {
  if (!(spec.width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  constexpr double pi = std::numbers::pi;
  const double inv = 1.0 / (2.0 * spec.width * spec.width);
  return ScalarField::from_function(grid, [inv](double x, double y) {
    double v = 0.0;
    for (int m1 = -2; m1 <= 2; ++m1) {
      for (int m2 = -2; m2 <= 2; ++m2) {
        const double dx = x - pi - 2.0 * pi * m1;
        const double dy = y - pi - 2.0 * pi * m2;
        v += std::exp(-(dx * dx + dy * dy) * inv);
      }
    }
    return v;
  });
}

}  // namespace

ScalarField generate_initial(const InitSpec& spec, const Grid& grid) {
  switch (spec.kind) {
    case InitKind::random_smooth:
      return random_smooth(spec, grid);
    case InitKind::single_mode:
      return ScalarField::from_function(grid, [](double x, double) { return std::sin(x); });
    case InitKind::two_mode:
      return ScalarField::from_function(
          grid, [](double x, double y) { return std::sin(x) + std::cos(2.0 * y); });
    case InitKind::gaussian_bump:
      return gaussian_bump(spec, grid);
    case InitKind::snapshot: {
      Snapshot snap = read_snapshot(spec.snapshot_path);
      if (!(snap.field.grid() == grid)) {
        throw std::invalid_argument("snapshot resolution does not match the configured n");
      }
      return std::move(snap.field);
    }
  }
  throw std::invalid_argument("unknown initial condition");
}

InitKind parse_init_kind(const std::string& name) {
  if (name == "random_smooth") return InitKind::random_smooth;
  if (name == "single_mode") return InitKind::single_mode;
  if (name == "two_mode") return InitKind::two_mode;
  if (name == "gaussian_bump") return InitKind::gaussian_bump;
  if (name == "snapshot") return InitKind::snapshot;
  throw std::invalid_argument("unknown init kind '" + name + "'");
}

std::string to_string(InitKind kind) {
  switch (kind) {
    case InitKind::random_smooth: return "random_smooth";
    case InitKind::single_mode: return "single_mode";
    case InitKind::two_mode: return "two_mode";
    case InitKind::gaussian_bump: return "gaussian_bump";
    case InitKind::snapshot: return "snapshot";
  }
  return "unknown";
}

}  // namespace sqgd
