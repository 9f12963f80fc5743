#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sqgd/certify.hpp"
#include "sqgd/spectral.hpp"

namespace sqgd {

namespace {

constexpr double kCheckTolerance = 1e-12;
constexpr double kBisectionRelTol = 1e-10;
constexpr double kLargestTrialB = 1e300;

}  // namespace

ModulusCheck check_modulus(const PairScan& scan, double B, const ModulusParams& p) {
  if (!(B >= 0.0)) throw std::invalid_argument("B must be non-negative");
  ModulusCheck result;
  double worst_slack = std::numeric_limits<double>::infinity();
  for (const PairScan::Entry& e : scan.entries()) {
    if (e.max_increment < 0.0) continue;
    const double bound = omega_B(e.distance, B, p);
    const double slack = bound - e.max_increment;
    if (e.max_increment > bound + kCheckTolerance) result.ok = false;
    if (slack < worst_slack) {
      worst_slack = slack;
      result.worst = {e.y, e.z, e.distance, e.max_increment, slack};
    }
  }
  return result;
}

ModulusCheck check_modulus(const ScalarField& theta, double B, const ModulusParams& p,
                           const ScanOptions& options) {
  return check_modulus(PairScan(theta, options), B, p);
}

ModulusCertificate minimal_B(const PairScan& scan, const ModulusParams& p) {
  auto certificate = [&](double B) {
    const ModulusCheck c = check_modulus(scan, B, p);
    return ModulusCertificate{B, c.worst, c.worst.slack};
  };

  if (scan.max_increment() == 0.0) return certificate(0.0);

  double lo = 0.0;
  double hi = 1.0;
  while (!check_modulus(scan, hi, p).ok) {
    lo = hi;
    hi *= 2.0;
    if (hi > kLargestTrialB) {
      ModulusCertificate none = certificate(lo);
      none.b_min = std::numeric_limits<double>::infinity();
      return none;
    }
  }
  while (hi - lo > kBisectionRelTol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (check_modulus(scan, mid, p).ok) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return certificate(hi);
}

ModulusCertificate minimal_B(const ScalarField& theta, const ModulusParams& p,
                             const ScanOptions& options) {
  return minimal_B(PairScan(theta, options), p);
}

double breakthrough_B(double A, double D, const ModulusParams& p) {
  if (!(A >= 0.0)) throw std::invalid_argument("A must be non-negative");
  if (!(D > 0.0)) throw std::invalid_argument("D must be positive");
  if (A == 0.0) return 0.0;
  return A / omega_prime(omega_inverse(2.0 * D, p), p);
}

AuditReport audit_breakthrough(const ScalarField& theta, double B, double A,
                               const ModulusParams& p, const ScanOptions& options,
                               double advection_sign) {
  if (!(B >= 0.0)) throw std::invalid_argument("B must be non-negative");
  const ModulusCheck check = check_modulus(PairScan(theta, options), B, p);

  AuditReport r;
  r.B = B;
  r.A = A;
  r.witness = check.worst;
  r.xi = check.worst.xi;
  r.lhs_breakthrough = -check.worst.slack;
  r.omega_B_prime = B == 0.0 ? 0.0 : B * omega_prime(B * r.xi, p);
  r.big_omega_B = big_omega(B * r.xi, p);
  r.rhs_almfin = -r.omega_B_prime * r.big_omega_B + A * r.big_omega_B;

  Spectral spectral(theta.grid());
  const VectorField u = spectral.velocity(theta);
  const ScalarField flow = spectral.advect(theta, advection_sign);
  const ScalarField lambda = spectral.half_laplacian(theta);

  const GridPoint y = r.witness.y;
  const GridPoint z = r.witness.z;
  auto ratio = [](double measured, double bound) { return bound > 0.0 ? measured / bound : 0.0; };

  r.disp_increment = std::abs(A * (u.u2(y.i, y.j) - u.u2(z.i, z.j)));
  r.disp_bound = A * r.big_omega_B;
  r.disp_ratio = ratio(r.disp_increment, r.disp_bound);

  r.flow_increment = std::abs(flow(y.i, y.j) - flow(z.i, z.j));
  r.flow_bound = r.omega_B_prime * r.big_omega_B;
  r.flow_ratio = ratio(r.flow_increment, r.flow_bound);

  auto rate = [&](GridPoint q) {
    return flow(q.i, q.j) - lambda(q.i, q.j) + A * u.u2(q.i, q.j);
  };
  r.pair_rate = rate(y) - rate(z);
  return r;
}

double calibrate_c_omega(std::span<const ScalarField> corpus, const ModulusParams& p,
                         const ScanOptions& options) {
  ModulusParams unit = p;
  unit.c_omega = 1.0;
  double worst = 0.0;
  for (const ScalarField& theta : corpus) {
    const ModulusCertificate cert = minimal_B(theta, unit, options);
    if (!std::isfinite(cert.b_min) || cert.b_min == 0.0) continue;
    worst = std::max(worst, audit_breakthrough(theta, cert.b_min, 1.0, unit, options).disp_ratio);
  }
  return worst;
}

}  // namespace sqgd
