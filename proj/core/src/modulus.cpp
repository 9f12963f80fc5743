#include "sqgd/modulus.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sqgd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_non_negative(double v, const char* what) {
  if (!(v >= 0.0)) throw std::invalid_argument(std::string(what) + " must be non-negative");
}

double omega_at_delta(const ModulusParams& p) { return p.delta - std::pow(p.delta, 1.5); }

// omega on the logarithmic branch, parameterized by s = log(xi/delta) >= 0 so that
// arguments far beyond the double range stay representable.
double omega_log_branch(double s, const ModulusParams& p) {
  return omega_at_delta(p) + p.gamma * std::log1p(0.25 * s);
}

}  // namespace

void ModulusParams::validate() const {
  if (!(gamma > 0.0 && gamma < delta)) throw std::invalid_argument("need 0 < gamma < delta");
  if (!(delta <= 0.4)) throw std::invalid_argument("need delta <= 0.4");
  if (!(c_omega > 0.0)) throw std::invalid_argument("need c_omega > 0");
  if (!(1.0 - 1.5 * std::sqrt(delta) > gamma / (4.0 * delta))) {
    throw std::invalid_argument("omega' must jump down at delta: need 1 - 1.5 sqrt(delta) > gamma/(4 delta)");
  }
}

double omega(double xi, const ModulusParams& p) {
  require_non_negative(xi, "omega argument");
  if (xi <= p.delta) return xi - xi * std::sqrt(xi);
  return omega_log_branch(std::log(xi) - std::log(p.delta), p);
}

double omega_prime(double xi, const ModulusParams& p) {
  require_non_negative(xi, "omega' argument");
  if (xi <= p.delta) return 1.0 - 1.5 * std::sqrt(xi);
  return p.gamma / (xi * (4.0 + std::log(xi) - std::log(p.delta)));
}

double omega_inverse(double v, const ModulusParams& p) {
  require_non_negative(v, "omega_inverse argument");
  if (v == 0.0) return 0.0;

  double lo = 0.0;
  double hi = p.delta;
  if (v > omega_at_delta(p)) {
    if (v > omega(std::numeric_limits<double>::max(), p)) return kInf;
    lo = p.delta;
    hi = 2.0 * p.delta;
    while (omega(hi, p) < v) {
      lo = hi;
      hi = std::isinf(2.0 * hi) ? std::numeric_limits<double>::max() : 2.0 * hi;
    }
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (omega(mid, p) < v) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double omega_B(double xi, double B, const ModulusParams& p) {
  require_non_negative(B, "B");
  if (B == 0.0) return 0.0;
  const double scaled = B * xi;
  if (std::isinf(scaled) && std::isfinite(B) && std::isfinite(xi)) {
    return omega_log_branch(std::log(B) + std::log(xi) - std::log(p.delta), p);
  }
  return omega(scaled, p);
}

double big_omega(double xi, const ModulusParams& p) {
  using boost::math::quadrature::exp_sinh;
  using boost::math::quadrature::gauss_kronrod;

  require_non_negative(xi, "Omega argument");
  if (xi == 0.0) return 0.0;
  if (std::isinf(xi)) return kInf;

  constexpr unsigned kMaxDepth = 20;

  // I1 = int_0^xi omega(eta)/eta: closed form up to delta, then in s = log(eta/delta).
  const double head = std::min(xi, p.delta);
  double i1 = head - (2.0 / 3.0) * head * std::sqrt(head);
  if (xi > p.delta) {
    auto f = [&p](double s) { return omega_log_branch(s, p); };
    i1 += gauss_kronrod<double, 31>::integrate(f, 0.0, std::log(xi / p.delta), kMaxDepth, 1e-12);
  }

  // I2 = xi * int_xi^inf omega(eta)/eta^2 = int_0^1 omega(xi/t) dt; with t = e^{-u}
  // this is int_0^inf omega(xi e^u) e^{-u} du, whose only kink sits at xi e^u = delta.
  const double log_ratio = std::log(xi / p.delta);
  double i2 = 0.0;
  double tail_start = 0.0;
  if (log_ratio < 0.0) {
    tail_start = -log_ratio;
    auto poly = [xi](double u) {
      const double eta = xi * std::exp(u);
      return (eta - eta * std::sqrt(eta)) * std::exp(-u);
    };
    i2 += gauss_kronrod<double, 31>::integrate(poly, 0.0, tail_start, kMaxDepth, 1e-12);
  }
  auto tail = [&p, log_ratio](double u) {
    return omega_log_branch(log_ratio + u, p) * std::exp(-u);
  };
  exp_sinh<double> half_line;
  i2 += half_line.integrate(tail, tail_start, kInf, 1e-12);

  return p.c_omega * (i1 + i2);
}

}  // namespace sqgd
