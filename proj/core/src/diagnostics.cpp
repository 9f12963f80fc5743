#include "sqgd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqgd {

Norms norms(const ScalarField& theta, Spectral& spectral) {
  Norms out;
  const double dx = theta.grid().dx();
  double sum_sq = 0.0;
  for (double v : theta.values()) sum_sq += v * v;
  out.l2 = std::sqrt(sum_sq * dx * dx);
  out.linf = max_abs(theta);
  out.mean = mean(theta);

  const VectorField g = spectral.gradient(theta);
  auto g1 = g.u1.values();
  auto g2 = g.u2.values();
  double grad_sq = 0.0;
  for (std::size_t k = 0; k < g1.size(); ++k) {
    grad_sq = std::max(grad_sq, g1[k] * g1[k] + g2[k] * g2[k]);
  }
  out.max_grad = std::sqrt(grad_sq);
  return out;
}

Norms norms(const ScalarField& theta) {
  Spectral spectral(theta.grid());
  return norms(theta, spectral);
}

EnergyBudget energy_budget(const ScalarField& theta, double A, Spectral& spectral,
                           double advection_sign) {
  const Grid& g = theta.grid();
  EnergyBudget out;

  const ScalarField flow = spectral.advect(theta, advection_sign);
  double flux = 0.0;
  auto tv = theta.values();
  auto fv = flow.values();
  for (std::size_t k = 0; k < tv.size(); ++k) flux += tv[k] * fv[k];
  out.nonlinear_flux = flux * g.dx() * g.dx();

  // Parseval weight: int f^2 = (2 pi)^2 sum |c_k|^2. Nyquist modes are excluded, as in
  // every multiplier of the solver.
  const double cell_area = g.length() * g.length();
  const std::vector<Complex> c = spectral.full_transform(theta);
  const int n = g.n();
  const int nyquist = n / 2;
  double dispersive = 0.0;
  double dissipation = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == nyquist) continue;
    const int k1 = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      if (j == nyquist) continue;
      const int k2 = g.wavenumber(j);
      if (k1 == 0 && k2 == 0) continue;
      const double mag = std::sqrt(static_cast<double>(k1 * k1 + k2 * k2));
      const double power = std::norm(c[static_cast<std::size_t>(i) * n + j]);
      dispersive += (k1 / mag) * power;
      dissipation -= mag * power;
    }
  }
  out.dispersive_flux = A * cell_area * dispersive;
  out.dissipation = cell_area * dissipation;
  return out;
}

EnergyBudget energy_budget(const ScalarField& theta, double A) {
  Spectral spectral(theta.grid());
  return energy_budget(theta, A, spectral);
}

ChebyshevCheck chebyshev_check(const ScalarField& theta, double M, double l2_initial) {
  if (!(M > 0.0)) throw std::invalid_argument("Chebyshev level M must be positive");
  const double dx = theta.grid().dx();
  const double half = 0.5 * M;
  const auto count = std::count_if(theta.values().begin(), theta.values().end(),
                                   [half](double v) { return std::abs(v) >= half; });
  ChebyshevCheck out;
  out.measure = static_cast<double>(count) * dx * dx;
  out.bound = 4.0 * l2_initial * l2_initial / (M * M);
  out.ok = out.measure <= out.bound + 4.0 * std::numbers::pi * dx;
  return out;
}

DiagnosticsRecord sample(const SolverState& state, const SampleConfig& config, std::int64_t index,
                         Spectral& spectral) {
  DiagnosticsRecord r;
  r.t = state.t;
  const Norms nm = norms(state.theta, spectral);
  r.l2 = nm.l2;
  r.linf = nm.linf;
  r.max_grad = nm.max_grad;
  r.mean = nm.mean;
  const EnergyBudget eb = energy_budget(state.theta, state.A, spectral, config.advection_sign);
  r.nonlinear_flux = eb.nonlinear_flux;
  r.dispersive_flux = eb.dispersive_flux;
  r.dissipation = eb.dissipation;

  if (config.certify_every > 0 && index % config.certify_every == 0) {
    const ModulusCertificate cert = minimal_B(state.theta, config.modulus, config.scan);
    r.b_min = cert.b_min;
    r.certificate = cert;
    if (config.audit && std::isfinite(cert.b_min)) {
      r.audit = audit_breakthrough(state.theta, cert.b_min, state.A, config.modulus, config.scan,
                                   config.advection_sign);
    }
  }
  return r;
}

}  // namespace sqgd
