#pragma once

namespace sqgd {

/// Constants of the modulus family
///
///   omega(xi)  = xi - xi^{3/2}                          for 0 <= xi <= delta,
///   omega'(xi) = gamma / (xi * (4 + log(xi / delta)))   for xi >= delta,
///
/// and the constant C in front of the velocity modulus Omega.
struct ModulusParams {
  double gamma = 0.01;
  double delta = 0.02;
  double c_omega = 1.0;

  /// Requires 0 < gamma < delta <= 0.4, c_omega > 0, and a genuine concave kink at delta
  /// (left derivative 1 - 1.5*sqrt(delta) above the right one gamma/(4*delta)).
  void validate() const;
};

/// omega(xi). Past delta uses the closed-form antiderivative
/// omega(delta) + gamma*log((4 + log(xi/delta))/4).
double omega(double xi, const ModulusParams& p);

/// omega'(xi); at xi == delta returns the left derivative 1 - 1.5*sqrt(delta).
double omega_prime(double xi, const ModulusParams& p);

/// Unique xi with omega(xi) == v, by bisection to relative tolerance 1e-12.
/// Returns +infinity when v lies beyond omega of the largest finite double.
double omega_inverse(double v, const ModulusParams& p);

/// omega_B(xi) = omega(B*xi).
double omega_B(double xi, double B, const ModulusParams& p);

/// Velocity modulus for B = 1:
///   Omega(xi) = C * ( int_0^xi omega(eta)/eta d eta + xi * int_xi^inf omega(eta)/eta^2 d eta ).
/// Omega_B(xi) is obtained as big_omega(B*xi).
double big_omega(double xi, const ModulusParams& p);

}  // namespace sqgd
