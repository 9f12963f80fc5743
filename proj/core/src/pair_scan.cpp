#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "sqgd/certify.hpp"

namespace sqgd {

namespace {

int wrapped(int d, int n) {
  d = ((d % n) + n) % n;
  return std::min(d, n - d);
}

double displacement_distance(const Grid& grid, int a, int b) {
  const int n = grid.n();
  const double da = wrapped(a, n);
  const double db = wrapped(b, n);
  return grid.dx() * std::sqrt(da * da + db * db);
}

}  // namespace

double torus_distance(const Grid& grid, GridPoint a, GridPoint b) {
  return displacement_distance(grid, a.i - b.i, a.j - b.j);
}

PairScan::PairScan(const ScalarField& theta, const ScanOptions& options)
    : grid_(theta.grid()), mode_(options.mode) {
  const int n = grid_.n();
  if (mode_ == ScanMode::automatic) {
    mode_ = n <= kMaxExhaustiveN ? ScanMode::exhaustive : ScanMode::sampled;
  }
  if (mode_ == ScanMode::exhaustive && n > kMaxExhaustiveN) {
    throw std::invalid_argument("exhaustive pair scan refused for n = " + std::to_string(n) +
                                " > " + std::to_string(kMaxExhaustiveN) + "; use sampled mode");
  }

  entries_.resize(grid_.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      entries_[static_cast<std::size_t>(a) * n + b].distance = displacement_distance(grid_, a, b);
    }
  }

  if (mode_ == ScanMode::exhaustive) {
    scan_exhaustive(theta);
  } else {
    scan_sampled(theta, options);
  }

  max_increment_ = 0.0;
  for (const Entry& e : entries_) max_increment_ = std::max(max_increment_, e.max_increment);
}

void PairScan::scan_exhaustive(const ScalarField& theta) {
  const int n = grid_.n();
  auto values = theta.values();
  auto at = [&](int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; };

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const std::size_t idx = static_cast<std::size_t>(a) * n + b;
      if (idx == 0) continue;  // a point paired with itself

      // Displacement -(a, b) visits the same unordered pairs with y and z exchanged.
      const std::size_t mirror = static_cast<std::size_t>((n - a) % n) * n + (n - b) % n;
      if (mirror < idx) {
        Entry& e = entries_[idx];
        const Entry& m = entries_[mirror];
        e.max_increment = m.max_increment;
        e.y = m.y;
        e.z = m.z;
        continue;
      }

      double best = -1.0;
      double best_signed = 0.0;
      GridPoint best_z;
      for (int zi = 0; zi < n; ++zi) {
        const int yi = (zi + a) % n;
        for (int zj = 0; zj < n; ++zj) {
          const int yj = zj + b < n ? zj + b : zj + b - n;
          const double diff = at(yi, yj) - at(zi, zj);
          if (std::abs(diff) > best) {
            best = std::abs(diff);
            best_signed = diff;
            best_z = {zi, zj};
          }
        }
      }
      Entry& e = entries_[idx];
      e.max_increment = best;
      const GridPoint y{(best_z.i + a) % n, (best_z.j + b) % n};
      if (best_signed >= 0.0) {
        e.y = y;
        e.z = best_z;
      } else {
        e.y = best_z;
        e.z = y;
      }
    }
  }
}

void PairScan::scan_sampled(const ScalarField& theta, const ScanOptions& options) {
  const int n = grid_.n();
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> coord(0, n - 1);

  for (std::size_t s = 0; s < options.samples; ++s) {
    const GridPoint p{coord(rng), coord(rng)};
    const GridPoint q{coord(rng), coord(rng)};
    if (p == q) continue;
    const double diff = theta(p.i, p.j) - theta(q.i, q.j);
    const int a = ((p.i - q.i) % n + n) % n;
    const int b = ((p.j - q.j) % n + n) % n;
    Entry& e = entries_[static_cast<std::size_t>(a) * n + b];
    if (std::abs(diff) > e.max_increment) {
      e.max_increment = std::abs(diff);
      e.y = diff >= 0.0 ? p : q;
      e.z = diff >= 0.0 ? q : p;
    }
  }
}

}  // namespace sqgd
