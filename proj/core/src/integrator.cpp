#include "sqgd/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sqgd {

void StepControl::validate() const {
  if (mode == StepMode::fixed && !(dt_fixed > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }
  if (mode == StepMode::cfl && !(cfl_number > 0.0 && cfl_number <= 1.0)) {
    throw std::invalid_argument("cfl number must lie in (0, 1]");
  }
  if (!(dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");
}

Complex linear_symbol(int k1, int k2, double A) {
  if (k1 == 0 && k2 == 0) return {0.0, 0.0};
  const double mag = std::sqrt(static_cast<double>(k1 * k1 + k2 * k2));
  return {-mag, A * k1 / mag};
}

namespace {

constexpr double kSeriesThreshold = 1e-4;

// e^z - 1 without cancellation in the real part.
Complex expm1_complex(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace

Complex phi1(Complex z) {
  if (std::abs(z) < kSeriesThreshold) {
    return 1.0 + z * (1.0 / 2.0 + z * (1.0 / 6.0 + z * (1.0 / 24.0)));
  }
  return expm1_complex(z) / z;
}

Complex phi2(Complex z) {
  if (std::abs(z) < kSeriesThreshold) {
    return 1.0 / 2.0 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0)));
  }
  return (expm1_complex(z) - z) / (z * z);
}

double cfl_dt(const VectorField& u, const Grid& grid, const StepControl& ctrl) {
  constexpr double kQuiescent = 1e-12;
  const double umax = std::max({max_abs(u.u1), max_abs(u.u2), kQuiescent});
  return std::min(ctrl.dt_max, ctrl.cfl_number * grid.dx() / umax);
}

Integrator::Integrator(Grid grid, double advection_sign)
    : spectral_(grid), sign_(advection_sign) {
  if (advection_sign != 1.0 && advection_sign != -1.0) {
    throw std::invalid_argument("advection_sign must be +1 or -1");
  }
}

ScalarField Integrator::nonlinear_rhs(const ScalarField& theta) {
  return spectral_.advect(theta, sign_);
}

const Integrator::Coefficients& Integrator::coefficients(double dt, double A) {
  if (cache_.dt == dt && cache_.A == A) return cache_;

  const Grid& g = grid();
  const std::size_t count = static_cast<std::size_t>(g.n()) * g.half_n();
  cache_.expl.assign(count, 0.0);
  cache_.phi1.assign(count, 0.0);
  cache_.phi2.assign(count, 0.0);
  const int nyquist = g.n() / 2;
  for (int i = 0; i < g.n(); ++i) {
    const int k1 = g.wavenumber(i);
    for (int j = 0; j < g.half_n(); ++j) {
      // Nyquist coefficients are projected out: a dispersive phase cannot keep them real.
      if (i == nyquist || j == nyquist) continue;
      const std::size_t idx = static_cast<std::size_t>(i) * g.half_n() + j;
      const Complex z = linear_symbol(k1, j, A) * dt;
      cache_.expl[idx] = std::exp(z);
      cache_.phi1[idx] = dt * phi1(z);
      cache_.phi2[idx] = dt * phi2(z);
    }
  }
  cache_.dt = dt;
  cache_.A = A;
  return cache_;
}

SolverState Integrator::step(const SolverState& state, double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("time step must be non-negative");
  if (dt == 0.0) return state;

  const Coefficients& c = coefficients(dt, state.A);
  const Spectrum theta_hat = spectral_.forward(state.theta);
  const Spectrum n0 = spectral_.advect(theta_hat, sign_);

  Spectrum a(grid());
  {
    auto av = a.coeffs();
    auto tv = theta_hat.coeffs();
    auto nv = n0.coeffs();
    for (std::size_t k = 0; k < av.size(); ++k) av[k] = c.expl[k] * tv[k] + c.phi1[k] * nv[k];
  }
  const Spectrum na = spectral_.advect(a, sign_);

  Spectrum next = a;
  {
    auto xv = next.coeffs();
    auto nav = na.coeffs();
    auto n0v = n0.coeffs();
    for (std::size_t k = 0; k < xv.size(); ++k) xv[k] += c.phi2[k] * (nav[k] - n0v[k]);
  }

  SolverState out{spectral_.inverse(next), state.t + dt, state.A, state.step_count + 1};
  for (double v : out.theta.values()) {
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "non-finite solution at t=" << out.t << " after step " << out.step_count;
      throw BlowUpError(msg.str(), out.t, out.step_count);
    }
  }
  return out;
}

double Integrator::choose_dt(const SolverState& state, const StepControl& ctrl) {
  if (ctrl.mode == StepMode::fixed) return std::min(ctrl.dt_fixed, ctrl.dt_max);
  return cfl_dt(spectral_.velocity(state.theta), grid(), ctrl);
}

SolverState Integrator::run(const SolverState& state0, const StepControl& ctrl, double t_end,
                            const RunHooks& hooks) {
  ctrl.validate();
  if (!(t_end >= state0.t)) throw std::invalid_argument("t_end precedes the initial time");

  const double t0 = state0.t;
  const double interval = hooks.sample_every;
  const double guard = kBlowUpFactor * max_abs(state0.theta);

  std::int64_t sample_index = 1;
  auto sample_time = [&](std::int64_t k) {
    if (!(interval > 0.0)) return t_end;
    const double ts = t0 + static_cast<double>(k) * interval;
    return ts > t_end - 1e-9 * interval ? t_end : ts;
  };
  auto emit = [&](const SolverState& s) {
    if (hooks.on_sample) hooks.on_sample(s);
  };

  SolverState state = state0;
  emit(state);
  if (t_end == t0) return state;

  double next_sample = sample_time(sample_index);
  while (state.t < t_end) {
    const double target = next_sample;
    const double remaining = target - state.t;
    double dt = choose_dt(state, ctrl);
    const bool lands = dt >= remaining * (1.0 - 1e-9);
    if (lands) dt = remaining;

    state = step(state, dt);
    if (lands) state.t = target;

    if (guard > 0.0 && max_abs(state.theta) > guard) {
      std::ostringstream msg;
      msg << "max|theta| exceeded " << kBlowUpFactor << "x its initial value at t=" << state.t
          << " after step " << state.step_count;
      throw BlowUpError(msg.str(), state.t, state.step_count);
    }

    if (lands) {
      emit(state);
      next_sample = sample_time(++sample_index);
    }
  }
  return state;
}

}  // namespace sqgd
