#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sqgd/field.hpp"
#include "sqgd/modulus.hpp"

namespace sqgd {

enum class ScanMode {
  automatic,   // exhaustive up to kMaxExhaustiveN, sampled above
  exhaustive,  // every unordered grid-point pair, O(n^4)
  sampled,     // seeded uniform random pairs
};

inline constexpr int kMaxExhaustiveN = 96;

struct ScanOptions {
  ScanMode mode = ScanMode::automatic;
  std::size_t samples = 2'000'000;
  std::uint64_t seed = 0;
};

struct GridPoint {
  int i = 0;
  int j = 0;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

/// A grid-point pair oriented so that theta(y) >= theta(z).
struct Witness {
  GridPoint y;
  GridPoint z;
  double xi = 0.0;         // torus distance |y - z| (minimal image)
  double increment = 0.0;  // theta(y) - theta(z)
  double slack = 0.0;      // omega_B(xi) - increment at the B it was evaluated for
};

/// Pair increments of a field reduced per displacement vector.
///
/// omega_B(|y - z|) depends on a pair only through the displacement y - z, so the largest
/// |theta(y) - theta(z)| per displacement decides the modulus check for every B at once.
class PairScan {
 public:
  struct Entry {
    double distance = 0.0;
    double max_increment = -1.0;  // < 0 when no pair with this displacement was visited
    GridPoint y;
    GridPoint z;
  };

  /// Throws std::invalid_argument for exhaustive mode above kMaxExhaustiveN.
  PairScan(const ScalarField& theta, const ScanOptions& options = {});

  const Grid& grid() const { return grid_; }
  std::span<const Entry> entries() const { return entries_; }
  double max_increment() const { return max_increment_; }
  ScanMode mode() const { return mode_; }

 private:
  void scan_exhaustive(const ScalarField& theta);
  void scan_sampled(const ScalarField& theta, const ScanOptions& options);

  Grid grid_;
  ScanMode mode_;
  std::vector<Entry> entries_;
  double max_increment_ = 0.0;
};

/// Torus distance between grid points (wrapped coordinate differences).
double torus_distance(const Grid& grid, GridPoint a, GridPoint b);

struct ModulusCheck {
  bool ok = true;
  Witness worst;  // the pair minimizing omega_B(d) - |dtheta|
};

/// ok iff |theta(y) - theta(z)| <= omega_B(d(y, z)) + 1e-12 over the scanned pairs.
ModulusCheck check_modulus(const PairScan& scan, double B, const ModulusParams& p);
ModulusCheck check_modulus(const ScalarField& theta, double B, const ModulusParams& p,
                           const ScanOptions& options = {});

struct ModulusCertificate {
  double b_min = 0.0;  // +infinity when no finite B certifies the field
  Witness witness;
  double slack = 0.0;
};

/// Smallest B for which the field obeys omega_B, by bisection on check_modulus.
ModulusCertificate minimal_B(const PairScan& scan, const ModulusParams& p);
ModulusCertificate minimal_B(const ScalarField& theta, const ModulusParams& p,
                             const ScanOptions& options = {});

/// A / omega'(omega^{-1}(2D)): the B beyond which the breakthrough inequality turns negative.
double breakthrough_B(double A, double D, const ModulusParams& p);

struct AuditReport {
  double B = 0.0;
  double A = 0.0;
  Witness witness;
  double xi = 0.0;
  double lhs_breakthrough = 0.0;  // max over pairs of theta(y) - theta(z) - omega_B(|y - z|)
  double omega_B_prime = 0.0;     // B * omega'(B xi)
  double big_omega_B = 0.0;       // Omega(B xi)
  double rhs_almfin = 0.0;        // -omega_B'(xi) Omega_B(xi) + A Omega_B(xi)
  double disp_increment = 0.0;    // |A u2(y) - A u2(z)|
  double disp_bound = 0.0;        // A Omega_B(xi)
  double disp_ratio = 0.0;
  double flow_increment = 0.0;    // |u.grad theta(y) - u.grad theta(z)|
  double flow_bound = 0.0;        // omega_B'(xi) Omega_B(xi)
  double flow_ratio = 0.0;
  double pair_rate = 0.0;         // d/dt (theta(y) - theta(z)) from the full right-hand side
};

/// Numerical report on the breakthrough pair at modulus omega_B. Ratios are measured
/// increments over their bounds (0 when the bound vanishes); nothing here asserts.
AuditReport audit_breakthrough(const ScalarField& theta, double B, double A,
                               const ModulusParams& p, const ScanOptions& options = {},
                               double advection_sign = 1.0);

/// Largest dispersive ratio over a corpus with c_omega = 1, each field audited at its own
/// b_min. Using the result as c_omega makes every corpus ratio <= 1.
double calibrate_c_omega(std::span<const ScalarField> corpus, const ModulusParams& p,
                         const ScanOptions& options = {});

}  // namespace sqgd
