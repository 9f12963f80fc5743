#pragma once

#include <cstdint>
#include <optional>

#include "sqgd/certify.hpp"
#include "sqgd/field.hpp"
#include "sqgd/integrator.hpp"
#include "sqgd/modulus.hpp"
#include "sqgd/spectral.hpp"

namespace sqgd {

struct Norms {
  double l2 = 0.0;        // sqrt(sum theta^2 dx^2) over one period cell
  double linf = 0.0;      // max |theta| on the grid
  double max_grad = 0.0;  // max |grad theta| on the grid (spectral gradient)
  double mean = 0.0;
};

Norms norms(const ScalarField& theta, Spectral& spectral);
Norms norms(const ScalarField& theta);

/// Terms of d/dt (1/2 ||theta||^2):
///   nonlinear_flux  = int theta * (sign u.grad theta)     (vanishes by incompressibility)
///   dispersive_flux = A sum_k k1/|k| |theta_k|^2          (vanishes for real theta)
///   dissipation     = -sum_k |k| |theta_k|^2
/// with theta_k normalized so that sum_k |theta_k|^2 = ||theta||^2. Sums run over the full
/// n x n spectrum without assuming conjugate symmetry.
struct EnergyBudget {
  double nonlinear_flux = 0.0;
  double dispersive_flux = 0.0;
  double dissipation = 0.0;
};

EnergyBudget energy_budget(const ScalarField& theta, double A, Spectral& spectral,
                           double advection_sign = 1.0);
EnergyBudget energy_budget(const ScalarField& theta, double A);

/// Level-set measure m{|theta| >= M/2} against 4 ||theta_0||^2 / M^2.
struct ChebyshevCheck {
  double measure = 0.0;
  double bound = 0.0;
  bool ok = true;  // measure <= bound + 4 pi dx
};

ChebyshevCheck chebyshev_check(const ScalarField& theta, double M, double l2_initial);

struct DiagnosticsRecord {
  double t = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double max_grad = 0.0;
  double mean = 0.0;
  double nonlinear_flux = 0.0;
  double dispersive_flux = 0.0;
  double dissipation = 0.0;
  std::optional<double> b_min;
  std::optional<ModulusCertificate> certificate;
  std::optional<AuditReport> audit;
};

struct SampleConfig {
  int certify_every = 0;  // in samples; 0 disables certification
  bool audit = false;     // also audit at b_min on certified samples
  ModulusParams modulus;
  ScanOptions scan;
  double advection_sign = 1.0;
};

/// Assembles the record for the `index`-th sample of a run.
DiagnosticsRecord sample(const SolverState& state, const SampleConfig& config, std::int64_t index,
                         Spectral& spectral);

}  // namespace sqgd
