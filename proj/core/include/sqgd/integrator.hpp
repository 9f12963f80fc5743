#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "sqgd/field.hpp"
#include "sqgd/spectral.hpp"

namespace sqgd {

struct SolverState {
  ScalarField theta;
  double t = 0.0;
  double A = 0.0;  // dispersion amplitude
  std::int64_t step_count = 0;
};

enum class StepMode { fixed, cfl };

struct StepControl {
  StepMode mode = StepMode::cfl;
  double dt_fixed = 1e-3;
  double cfl_number = 0.5;
  double dt_max = 1e-2;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Raised when the solution stops being finite or grows past the blow-up guard.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double t, std::int64_t step_count)
      : std::runtime_error(what), t_(t), step_count_(step_count) {}
  double t() const { return t_; }
  std::int64_t step_count() const { return step_count_; }

 private:
  double t_;
  std::int64_t step_count_;
};

/// L(k) = -|k| + i*A*k1/|k|, the symbol of -Lambda + A*R_1; L(0) = 0.
Complex linear_symbol(int k1, int k2, double A);

/// phi_1(z) = (e^z - 1)/z and phi_2(z) = (e^z - 1 - z)/z^2, Taylor series below |z| = 1e-4.
Complex phi1(Complex z);
Complex phi2(Complex z);

double cfl_dt(const VectorField& u, const Grid& grid, const StepControl& ctrl);

struct RunHooks {
  /// Sampling interval in time units; <= 0 samples only the initial and final states.
  double sample_every = 0.0;
  std::function<void(const SolverState&)> on_sample;
};

/// Second-order exponential time differencing (ETDRK2, Cox-Matthews form) for
///   theta_t = sign * u.grad(theta) - Lambda theta + A R_1 theta.
/// The linear part is integrated exactly in Fourier space, the advection explicitly.
class Integrator {
 public:
  explicit Integrator(Grid grid, double advection_sign = 1.0);

  const Grid& grid() const { return spectral_.grid(); }
  double advection_sign() const { return sign_; }
  Spectral& spectral() { return spectral_; }

  /// Explicit part of theta_t: the dealiased advection term.
  ScalarField nonlinear_rhs(const ScalarField& theta);

  SolverState step(const SolverState& state, double dt);

  /// Steps until t_end; samples land exactly on multiples of hooks.sample_every and on t_end.
  SolverState run(const SolverState& state0, const StepControl& ctrl, double t_end,
                  const RunHooks& hooks = {});

  /// Multiple of the initial max|theta| beyond which run() declares blow-up.
  static constexpr double kBlowUpFactor = 1e6;

 private:
  struct Coefficients {
    double dt = -1.0;
    double A = 0.0;
    std::vector<Complex> expl;
    std::vector<Complex> phi1;
    std::vector<Complex> phi2;
  };

  const Coefficients& coefficients(double dt, double A);
  double choose_dt(const SolverState& state, const StepControl& ctrl);

  Spectral spectral_;
  double sign_;
  Coefficients cache_;
};

}  // namespace sqgd
