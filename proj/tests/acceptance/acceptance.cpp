// Runs every acceptance criterion at its stated tolerance and prints one PASS/FAIL line each.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sqgd/commands.hpp"
#include "sqgd/csv.hpp"
#include "sqgd/diagnostics.hpp"
#include "sqgd/initial.hpp"

using namespace sqgd;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

ScalarField fn(const Grid& g, std::function<double(double, double)> f) { return ScalarField::from_function(g, f); }

// --- 1 ---------------------------------------------------------------------------------------

Verdict operator_oracles() {
  double worst = 0.0;
  auto track = [&](double err) { worst = std::max(worst, err); };
  for (int n : {16, 64}) {
    const Grid g(n);
    Spectral s(g);
    const auto cosx = fn(g, [](double x, double) { return std::cos(x); });
    const auto sinx = fn(g, [](double x, double) { return std::sin(x); });
    const auto siny = fn(g, [](double, double y) { return std::sin(y); });
    const auto cos2y = fn(g, [](double, double y) { return std::cos(2 * y); });
    const auto wave = fn(g, [](double x, double y) { return std::cos(3 * x + 4 * y); });
    const auto c = ScalarField::constant(g, 2.5);

    track(max_abs_diff(s.riesz_transform(cosx, 1), -1.0 * sinx));
    track(max_abs_diff(s.riesz_transform(siny, 2), fn(g, [](double, double y) { return std::cos(y); })));
    track(max_abs(s.riesz_transform(c, 1)));
    track(max_abs(s.riesz_transform(c, 2)));

    track(max_abs_diff(s.half_laplacian(cosx), cosx));
    track(max_abs_diff(s.half_laplacian(wave), 5.0 * wave));
    track(max_abs(s.half_laplacian(c)));

    const VectorField a = s.velocity(siny);
    track(max_abs_diff(a.u1, fn(g, [](double, double y) { return -std::cos(y); })));
    track(max_abs(a.u2));
    const VectorField b = s.velocity(sinx);
    track(max_abs(b.u1));
    track(max_abs_diff(b.u2, cosx));

    const VectorField gs = s.gradient(sinx);
    track(max_abs_diff(gs.u1, cosx));
    track(max_abs(gs.u2));
    const VectorField gc = s.gradient(cos2y);
    track(max_abs(gc.u1));
    track(max_abs_diff(gc.u2, fn(g, [](double, double y) { return -2 * std::sin(2 * y); })));

    track(max_abs(s.advect(c)));
    track(max_abs(s.advect(sinx)));
    track(max_abs(s.advect(fn(g, [](double x, double y) { return std::cos(2 * x - 3 * y); }))));
  }
  return {worst <= 1e-12, "max abs error " + sci(worst) + " (tol 1e-12), n in {16, 64}"};
}

// --- 2 ---------------------------------------------------------------------------------------

Verdict advection_oracle() {
  const Grid g(32);
  Spectral s(g);
  double worst = 0.0;
  std::string counts;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const int count = 2 + static_cast<int>(seed % 4);
    const auto modes = oracle::random_modes(seed, count, 6);
    worst = std::max(worst, max_abs_diff(s.advect(oracle::evaluate(modes, g)), oracle::advect_by_convolution(modes, g)));
    counts += (counts.empty() ? "" : ",") + std::to_string(count);
  }
  return {worst <= 1e-11, "max abs error " + sci(worst) + " (tol 1e-11), mode counts " + counts};
}

// --- 3 ---------------------------------------------------------------------------------------

Verdict linear_and_order() {
  double lin = 0.0;
  {
    const Grid g(64);
    Integrator integ(g);
    for (double A : {0.0, 1.0, 5.0}) {
      const SolverState out = integ.run({fn(g, [](double x, double) { return std::cos(x); }), 0.0, A, 0}, StepControl{}, 1.0);
      const auto exact = fn(g, [A](double x, double) { return std::exp(-1.0) * std::cos(x + A); });
      lin = std::max(lin, max_abs_diff(out.theta, exact));
    }
  }

  const Grid g(128);
  Integrator integ(g);
  InitSpec spec;
  spec.seed = 1;
  const SolverState s0{generate_initial(spec, g), 0.0, 1.0, 0};
  std::vector<ScalarField> sol;
  for (double dt : {4e-3, 2e-3, 1e-3, 5e-4}) {
    StepControl c;
    c.mode = StepMode::fixed;
    c.dt_fixed = dt;
    c.dt_max = 1.0;
    sol.push_back(integ.run(s0, c, 0.2).theta);
  }
  const double e1 = max_abs_diff(sol[0], sol[1]);
  const double e2 = max_abs_diff(sol[1], sol[2]);
  const double e3 = max_abs_diff(sol[2], sol[3]);
  const double p1 = std::log2(e1 / e2);
  const double p2 = std::log2(e2 / e3);
  const bool order_ok = p1 >= 1.7 && p1 <= 2.3 && p2 >= 1.7 && p2 <= 2.3;
  return {lin <= 1e-10 && order_ok, "linear error " + sci(lin) + " (tol 1e-10), self-convergence exponents " +
                                        sci(p1) + ", " + sci(p2) + " (range [1.7, 2.3]) at n = 128"};
}

// --- 4, 5, 6, 10 -----------------------------------------------------------------------------

RunConfig long_run_config(double A, std::uint64_t seed, const fs::path& dir) {
  RunConfig c;
  c.n = 256;
  c.t_end = 5.0;
  c.A = A;
  c.step.mode = StepMode::cfl;
  c.step.cfl_number = 0.5;
  c.step.dt_max = 0.01;
  c.init.seed = seed;
  c.init.k_max = 8;
  c.init.target_linf = 1.0;
  c.sample_every = 0.02;
  c.snapshot_every = 50;
  c.output_dir = dir.string();
  return c;
}

struct LongRunStats {
  double A = 0.0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double l2_growth = 0.0;      // max relative increase between samples
  double dispersive = 0.0;     // max |dispersive_flux| / l2^2
  int chebyshev_failures = 0;
  double linf_rise = 0.0;      // max (linf_{k+1} - linf_k) / linf_0
  double linf_ratio = 0.0;     // max linf / linf_0
  std::vector<std::string> rows;
};

LongRunStats long_run(double A, std::uint64_t seed) {
  const RunConfig cfg = long_run_config(A, seed, "unused");
  const Grid g(cfg.n);
  Integrator integ(g, cfg.advection_sign);
  LongRunStats st;
  st.A = A;
  st.seed = seed;
  double l2_0 = 0.0;
  double linf_0 = 0.0;
  DiagnosticsRecord prev;
  std::int64_t index = 0;
  RunHooks hooks{cfg.sample_every, [&](const SolverState& s) {
                   const DiagnosticsRecord r = sample(s, {}, index, integ.spectral());
                   if (index == 0) {
                     l2_0 = r.l2;
                     linf_0 = r.linf;
                   } else {
                     st.l2_growth = std::max(st.l2_growth, (r.l2 - prev.l2) / prev.l2);
                     st.linf_rise = std::max(st.linf_rise, (r.linf - prev.linf) / linf_0);
                   }
                   st.dispersive = std::max(st.dispersive, std::abs(r.dispersive_flux) / (r.l2 * r.l2));
                   st.linf_ratio = std::max(st.linf_ratio, r.linf / linf_0);
                   for (double m : {0.5, 1.0, 2.0}) {
                     if (!chebyshev_check(s.theta, m * linf_0, l2_0).ok) ++st.chebyshev_failures;
                   }
                   st.rows.push_back(csv::diagnostics_row(r));
                   prev = r;
                   ++index;
                 }};
  integ.run({generate_initial(cfg.init, g), 0.0, A, 0}, cfg.step, cfg.t_end, hooks);
  st.samples = static_cast<std::size_t>(index);
  return st;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string run_label(double A, std::uint64_t seed) {
  return "A" + csv::format_double(A) + "_seed" + std::to_string(seed);
}

// --- 8, 9 ------------------------------------------------------------------------------------

struct CertStats {
  int certified = 0;
  int nonfinite = 0;
  int boundary_failures = 0;
  double grad_ratio = 0.0;    // max max_grad / (b_min (1 + 10 dx))
  double growth_ratio = 0.0;  // max b_min / max(b_min(0), 2 B*)
  double disp_ratio = 0.0;
  double b_first = 0.0;
  double b_last = 0.0;
};

CertStats certified_run(double A, std::uint64_t seed, const ModulusParams& p) {
  const Grid g(48);
  Integrator integ(g);
  InitSpec spec;
  spec.seed = seed;
  spec.k_max = 8;
  spec.target_linf = 0.01;
  SampleConfig cfg;
  cfg.certify_every = 1;
  cfg.audit = true;
  cfg.modulus = p;
  StepControl ctrl;
  ctrl.dt_max = 0.01;

  CertStats st;
  double D = 0.0;
  std::int64_t index = 0;
  RunHooks hooks{0.05, [&](const SolverState& s) {
                   const DiagnosticsRecord r = sample(s, cfg, index++, integ.spectral());
                   D = std::max(D, r.linf);
                   const double b = *r.b_min;
                   ++st.certified;
                   if (!std::isfinite(b)) {
                     ++st.nonfinite;
                     return;
                   }
                   if (st.certified == 1) st.b_first = b;
                   st.b_last = b;
                   const PairScan scan(s.theta);
                   if (check_modulus(scan, b * (1.0 - 1e-3), p).ok || !check_modulus(scan, b * (1.0 + 1e-3), p).ok) {
                     ++st.boundary_failures;
                   }
                   st.grad_ratio = std::max(st.grad_ratio, r.max_grad / (b * (1.0 + 10.0 * g.dx())));
                   const double bound = std::max(st.b_first, 2.0 * breakthrough_B(A, D, p));
                   st.growth_ratio = std::max(st.growth_ratio, b / bound);
                   if (r.audit) st.disp_ratio = std::max(st.disp_ratio, r.audit->disp_ratio);
                 }};
  integ.run({generate_initial(spec, g), 0.0, A, 0}, ctrl, 2.0, hooks);
  return st;
}

// --- 7 ---------------------------------------------------------------------------------------

Verdict modulus_machinery() {
  const ModulusParams p;
  const double d = p.delta;
  const double g = p.gamma;
  double branch = 0.0;
  auto track = [&](double err) { branch = std::max(branch, err); };
  track(std::abs(omega(d, p) - (d - std::pow(d, 1.5))));
  track(std::abs(omega(d * std::exp(4.0), p) - (d - std::pow(d, 1.5) + g * std::log(2.0))));
  track(std::abs(omega(0.0, p)));
  track(std::abs(omega_prime(0.0, p) - 1.0));
  track(std::abs(omega_prime(d, p) - (1.0 - 1.5 * std::sqrt(d))));
  track(std::abs(omega_prime(d * std::exp(1.0), p) - g / (5.0 * d * std::exp(1.0))));
  for (double xi : {d / 2, d, 10 * d}) track(std::abs(omega_inverse(omega(xi, p), p) - xi));

  double quad = 0.0;
  for (double xi : {d / 2, d, 10 * d}) quad = std::max(quad, std::abs(big_omega(xi, p) - oracle::big_omega_simpson(xi, p)));

  double scaling = 0.0;
  const std::pair<double, double> pairs[] = {{2.0, d}, {5.0, d / 3}, {1.0, d / 2}, {10.0, 0.01}, {0.5, 0.3}, {3.0, 1.0}};
  for (auto [B, xi] : pairs) {
    scaling = std::max(scaling, std::abs(big_omega(B * xi, p) - oracle::big_omega_B_direct(xi, B, p)));
  }
  return {branch <= 1e-10 && quad <= 1e-7 && scaling <= 1e-8,
          "branch/round-trip error " + sci(branch) + " (tol 1e-10), big_omega vs quadrature " + sci(quad) +
              " (tol 1e-7), scaling identity over 6 pairs " + sci(scaling) + " (tol 1e-8)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks for the sqgd solver"};
  std::string workdir = "acceptance_runs";
  app.add_option("--workdir", workdir, "scratch directory for run output")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  const fs::path root(workdir);
  fs::create_directories(root);

  std::vector<std::pair<int, Verdict>> results;
  auto timed = [&](int id, const std::string& name, auto&& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.c_str(), secs);
    std::fflush(stdout);
    results.push_back({id, v});
  };

  timed(1, "operator oracles", operator_oracles);
  timed(2, "dealiased advection vs convolution", advection_oracle);
  timed(3, "linear exactness and ETDRK2 order", linear_and_order);

  std::vector<LongRunStats> runs;
  const auto long_start = std::chrono::steady_clock::now();
  timed(4, "L2 non-increasing", [&] {
    for (double A : {0.0, 1.0, 5.0}) {
      for (std::uint64_t seed : {1, 2}) runs.push_back(long_run(A, seed));
    }
    double growth = 0.0;
    double disp = 0.0;
    std::size_t samples = 0;
    for (const auto& r : runs) {
      growth = std::max(growth, r.l2_growth);
      disp = std::max(disp, r.dispersive);
      samples += r.samples;
    }
    return Verdict{growth <= 1e-8 && disp <= 1e-12,
                   std::to_string(runs.size()) + " runs, " + std::to_string(samples) + " samples, max relative l2 increase " +
                       sci(growth) + " (tol 1e-8), max |dispersive_flux|/l2^2 " + sci(disp) + " (tol 1e-12)"};
  });
  const double long_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - long_start).count();

  timed(5, "Chebyshev level-set bound", [&] {
    int failures = 0;
    std::size_t checks = 0;
    for (const auto& r : runs) {
      failures += r.chebyshev_failures;
      checks += 3 * r.samples;
    }
    return Verdict{!runs.empty() && failures == 0,
                   std::to_string(checks) + " checks for M in {0.5, 1, 2} linf(0), " + std::to_string(failures) + " failures"};
  });

  timed(6, "maximum principle (A = 0) and boundedness (A = 5)", [&] {
    double rise = 0.0;
    double ratio = 0.0;
    int counted = 0;
    for (const auto& r : runs) {
      if (r.A == 0.0) {
        rise = std::max(rise, r.linf_rise);
        ++counted;
      }
      if (r.A == 5.0) {
        ratio = std::max(ratio, r.linf_ratio);
        ++counted;
      }
    }
    return Verdict{counted == 4 && rise <= 1e-6 && ratio <= 3.0,
                   "A = 0 max linf rise " + sci(rise) + " x linf(0) (tol 1e-6), A = 5 max linf/linf(0) " + sci(ratio) +
                       " (bound 3)"};
  });

  timed(7, "modulus machinery", modulus_machinery);

  std::vector<std::pair<std::string, CertStats>> certs;
  double c_omega = 0.0;
  timed(8, "certificate coherence", [&] {
    std::vector<ScalarField> corpus;
    for (std::uint64_t seed = 1; seed <= 64; ++seed) {
      InitSpec spec;
      spec.seed = seed;
      spec.k_max = 8;
      spec.target_linf = 0.01;
      corpus.push_back(generate_initial(spec, Grid(48)));
    }
    c_omega = calibrate_c_omega(corpus, ModulusParams{});
    ModulusParams p;
    p.c_omega = c_omega;
    for (double A : {0.0, 2.0}) {
      for (std::uint64_t seed : {1, 2}) certs.push_back({run_label(A, seed), certified_run(A, seed, p)});
    }
    int certified = 0;
    int nonfinite = 0;
    int boundary = 0;
    double grad = 0.0;
    for (const auto& [label, s] : certs) {
      certified += s.certified;
      nonfinite += s.nonfinite;
      boundary += s.boundary_failures;
      grad = std::max(grad, s.grad_ratio);
    }
    return Verdict{nonfinite == 0 && boundary == 0 && grad <= 1.0 && certified > 0,
                   std::to_string(certs.size()) + " runs, " + std::to_string(certified) + " certified samples, " +
                       std::to_string(nonfinite) + " non-finite b_min, " + std::to_string(boundary) +
                       " boundary failures at b_min(1 -/+ 1e-3), max max_grad/(b_min(1+10dx)) " + sci(grad)};
  });

  timed(9, "modulus preservation proxy", [&] {
    double worst = 0.0;
    double disp = 0.0;
    std::string per_run;
    for (const auto& [label, s] : certs) {
      worst = std::max(worst, s.growth_ratio);
      disp = std::max(disp, s.disp_ratio);
      per_run += " " + label + ":" + sci(s.growth_ratio);
    }
    return Verdict{!certs.empty() && worst <= 1.0,
                   "max b_min/max(b_min(0), 2 B*) " + sci(worst) + " (bound 1);" + per_run + "; calibrated c_omega " +
                       sci(c_omega) + ", max audited dispersive ratio " + sci(disp)};
  });

  timed(10, "reproducibility", [&] {
    int mismatched = 0;
    int compared = 0;
    int csv_vs_library = 0;
    for (const auto& r : runs) {
      const fs::path base = root / "repro" / run_label(r.A, r.seed);
      fs::remove_all(base);
      std::vector<RunOutcome> outcomes;
      for (const char* rep : {"a", "b"}) {
        outcomes.push_back(execute_run(long_run_config(r.A, r.seed, base / rep)));
        if (outcomes.back().exit_code != exit_code::ok) ++mismatched;
      }
      for (const auto& entry : fs::directory_iterator(base / "a")) {
        const std::string name = entry.path().filename().string();
        if (name == "config.ini") continue;
        ++compared;
        if (!fs::exists(base / "b" / name) || slurp(entry.path()) != slurp(base / "b" / name)) ++mismatched;
      }
      // the CLI's CSV is the data criteria 4-6 were judged on
      std::string expected = std::string(csv::kDiagnosticsHeader) + "\n";
      for (const auto& row : r.rows) expected += row + "\n";
      if (slurp(base / "a" / "diagnostics.csv") != expected) ++csv_vs_library;
      fs::remove_all(base);
    }
    return Verdict{!runs.empty() && mismatched == 0 && csv_vs_library == 0,
                   std::to_string(compared) + " files compared across " + std::to_string(runs.size()) + " config pairs, " +
                       std::to_string(mismatched) + " mismatches, " + std::to_string(csv_vs_library) +
                       " CSVs differing from the in-process diagnostics"};
  });

  std::printf("criterion 4-6 long runs took %.1f s\n", long_secs);
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.second.pass; });
  std::printf("%zu criteria, %ld failed\n", results.size(), static_cast<long>(failed));
  return failed == 0 ? 0 : 1;
}
