#include "sqgd/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "sqgd/csv.hpp"
#include "sqgd/snapshot.hpp"

namespace sqgd {

namespace fs = std::filesystem;

namespace {

struct L2GrowthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string snapshot_name(std::int64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snap_%06lld.bin", static_cast<long long>(index));
  return buf;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

SampleConfig sample_config(const RunConfig& c) {
  SampleConfig s;
  s.certify_every = c.certify_every;
  s.audit = c.audit;
  s.modulus = c.modulus;
  s.scan = c.scan;
  s.advection_sign = c.advection_sign;
  return s;
}

}  // namespace

RunOutcome execute_run(const RunConfig& config) {
  config.validate();
  const Grid grid(config.n);
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "config.ini", std::ios::trunc);
    cfg << to_config_text(config);
  }

  SolverState state{generate_initial(config.init, grid), 0.0, config.A, 0};
  Integrator integrator(grid, config.advection_sign);
  Spectral& spectral = integrator.spectral();
  const SampleConfig diag = sample_config(config);

  std::ofstream csv_out(dir / "diagnostics.csv", std::ios::trunc);
  csv_out << csv::kDiagnosticsHeader << '\n';

  RunOutcome outcome;
  std::int64_t index = 0;
  RunHooks hooks;
  hooks.sample_every = config.sample_every;
  hooks.on_sample = [&](const SolverState& s) {
    DiagnosticsRecord rec = sample(s, diag, index, spectral);
    csv_out << csv::diagnostics_row(rec) << '\n';
    if (config.snapshot_every > 0 && index % config.snapshot_every == 0) {
      write_snapshot(dir / snapshot_name(index), s.theta, s.t, s.A);
    }
    const bool grew = !outcome.records.empty() &&
                      rec.l2 > outcome.records.back().l2 * (1.0 + kL2Slack);
    outcome.records.push_back(std::move(rec));
    ++index;
    if (grew) {
      std::ostringstream msg;
      msg << "L2 norm increased between samples at t=" << csv::format_double(s.t) << " ("
          << csv::format_double(outcome.records[outcome.records.size() - 2].l2) << " -> "
          << csv::format_double(outcome.records.back().l2) << ")";
      throw L2GrowthError(msg.str());
    }
  };

  try {
    const SolverState final_state = integrator.run(state, config.step, config.t_end, hooks);
    write_snapshot(dir / "final.bin", final_state.theta, final_state.t, final_state.A);
  } catch (const BlowUpError& e) {
    outcome.exit_code = exit_code::blow_up;
    outcome.message = std::string("blow-up: ") + e.what();
  } catch (const L2GrowthError& e) {
    outcome.exit_code = exit_code::l2_growth;
    outcome.message = e.what();
  }
  return outcome;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunOutcome outcome;
  try {
    outcome = execute_run(config);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::failure;
  }
  if (outcome.exit_code != exit_code::ok) {
    err << "error: " << outcome.message << '\n';
    return outcome.exit_code;
  }
  out << "wrote " << outcome.records.size() << " samples to " << config.output_dir << '\n';
  return exit_code::ok;
}

int cmd_sweep(const RunConfig& base, std::vector<double> amplitudes, std::ostream& out,
              std::ostream& err, int threads) {
  std::sort(amplitudes.begin(), amplitudes.end());
  const fs::path root(base.output_dir);
  try {
    base.validate();
    fs::create_directories(root);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }

  if (threads <= 0) {
    const char* env = std::getenv("SQGD_THREADS");
    threads = env != nullptr ? std::atoi(env) : 0;
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }

  std::vector<SweepRow> rows(amplitudes.size());
  std::vector<std::string> messages(amplitudes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < amplitudes.size(); k = next++) {
      RunConfig cfg = base;
      cfg.A = amplitudes[k];
      cfg.output_dir = (root / ("A_" + shortest(amplitudes[k]))).string();
      SweepRow& row = rows[k];
      row.A = amplitudes[k];
      try {
        const RunOutcome outcome = execute_run(cfg);
        row.exit_code = outcome.exit_code;
        messages[k] = outcome.message;
        for (const DiagnosticsRecord& r : outcome.records) {
          row.max_linf = std::max(row.max_linf, r.linf);
          if (r.b_min) row.max_bmin = std::max(row.max_bmin.value_or(0.0), *r.b_min);
        }
        if (!outcome.records.empty()) row.final_l2 = outcome.records.back().l2;
      } catch (const std::exception& e) {
        row.exit_code = exit_code::failure;
        messages[k] = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(threads), amplitudes.size());
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  }

  std::ofstream summary(root / "summary.csv", std::ios::trunc);
  summary << "A,max_linf,max_bmin,final_l2\n";
  int status = exit_code::ok;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const SweepRow& r = rows[k];
    summary << csv::format_double(r.A) << ',' << csv::format_double(r.max_linf) << ','
            << (r.max_bmin ? csv::format_double(*r.max_bmin) : std::string()) << ','
            << csv::format_double(r.final_l2) << '\n';
    if (r.exit_code != exit_code::ok) {
      err << "A=" << csv::format_double(r.A) << ": " << messages[k] << '\n';
      status = std::max(status, r.exit_code);
    }
  }
  out << "sweep of " << rows.size() << " runs written to " << root.string() << '\n';
  return status;
}

namespace {

template <class Body>
int with_snapshot(const fs::path& path, std::ostream& err, Body&& body) {
  try {
    return body(read_snapshot(path));
  } catch (const SnapshotError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
}

}  // namespace

int cmd_certify(const fs::path& snapshot, const ModulusParams& params, const ScanOptions& scan,
                std::ostream& out, std::ostream& err) {
  return with_snapshot(snapshot, err, [&](const Snapshot& snap) {
    params.validate();
    const ModulusCertificate cert = minimal_B(snap.field, params, scan);
    out << csv::certificate_header() << '\n' << csv::certificate_row(cert, snap.field.grid()) << '\n';
    return exit_code::ok;
  });
}

int cmd_audit(const fs::path& snapshot, double B, double A, const ModulusParams& params,
              const ScanOptions& scan, std::ostream& out, std::ostream& err) {
  if (!(B >= 0.0)) {
    err << "error: B must be non-negative\n";
    return exit_code::usage;
  }
  return with_snapshot(snapshot, err, [&](const Snapshot& snap) {
    params.validate();
    const AuditReport report = audit_breakthrough(snap.field, B, A, params, scan);
    out << csv::audit_header() << '\n' << csv::audit_row(report) << '\n';
    return exit_code::ok;
  });
}

namespace {

// String-typed views of the enum-valued keys, converted after parsing.
struct EnumKeys {
  std::string step_mode = "cfl";
  std::string init = "random_smooth";
  std::string scan_mode = "auto";
};

void add_modulus_options(CLI::App& app, ModulusParams& m) {
  app.add_option("--gamma", m.gamma, "modulus constant gamma (0 < gamma < delta)")->capture_default_str();
  app.add_option("--delta", m.delta, "modulus breakpoint delta (<= 0.4)")->capture_default_str();
  app.add_option("--c_omega", m.c_omega, "constant C of the velocity modulus")->capture_default_str();
}

void add_scan_options(CLI::App& app, ScanOptions& s, EnumKeys& keys) {
  app.add_option("--scan_mode", keys.scan_mode, "pair scan: auto | exhaustive | sampled")->capture_default_str();
  app.add_option("--scan_samples", s.samples, "pairs drawn in sampled mode")->capture_default_str();
  app.add_option("--scan_seed", s.seed, "seed of the sampled pair scan")->capture_default_str();
}

void add_run_options(CLI::App& app, RunConfig& c, EnumKeys& keys, std::string& config_path) {
  app.add_option("--config", config_path, "flat key=value configuration file (flags override it)");
  app.add_option("--n", c.n, "grid points per axis")->capture_default_str();
  app.add_option("--t_end", c.t_end, "final time")->capture_default_str();
  app.add_option("--A", c.A, "dispersion amplitude")->capture_default_str();
  app.add_option("--advection_sign", c.advection_sign, "+1 (as written) or -1")->capture_default_str();
  app.add_option("--step_mode", keys.step_mode, "fixed | cfl")->capture_default_str();
  app.add_option("--dt", c.step.dt_fixed, "time step in fixed mode")->capture_default_str();
  app.add_option("--cfl", c.step.cfl_number, "CFL number in (0, 1]")->capture_default_str();
  app.add_option("--dt_max", c.step.dt_max, "upper bound on the time step")->capture_default_str();
  add_modulus_options(app, c.modulus);
  app.add_option("--init", keys.init,
                 "random_smooth | single_mode | two_mode | gaussian_bump | snapshot")->capture_default_str();
  app.add_option("--seed", c.init.seed, "random_smooth seed")->capture_default_str();
  app.add_option("--slope", c.init.slope, "random_smooth spectral slope s")->capture_default_str();
  app.add_option("--k_max", c.init.k_max, "random_smooth largest wavenumber (<= n/3)")->capture_default_str();
  app.add_option("--target_linf", c.init.target_linf, "random_smooth max|theta|")->capture_default_str();
  app.add_option("--width", c.init.width, "gaussian_bump width")->capture_default_str();
  app.add_option("--snapshot", c.init.snapshot_path, "initial snapshot for init=snapshot");
  app.add_option("--sample_every", c.sample_every, "diagnostics interval in time units")->capture_default_str();
  app.add_option("--certify_every", c.certify_every, "certify b_min every k-th sample (0 = never)")->capture_default_str();
  app.add_option("--audit", c.audit, "audit the breakthrough pair on certified samples")->capture_default_str();
  app.add_option("--snapshot_every", c.snapshot_every, "write a snapshot every k-th sample (0 = final only)")->capture_default_str();
  add_scan_options(app, c.scan, keys);
  app.add_option("--output_dir", c.output_dir, "output directory")->capture_default_str();
}

// CLI11 reads config files only for the top-level app, so subcommands load theirs here.
// Keys given as flags win; unknown keys are rejected.
void apply_config_file(CLI::App& app, const std::string& path) {
  if (path.empty()) return;
  if (!fs::exists(path)) throw std::invalid_argument("cannot read config file '" + path + "'");
  const CLI::ConfigINI parser;
  for (const CLI::ConfigItem& item : parser.from_file(path)) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty()) {
      throw std::invalid_argument("config file '" + path + "': sections are not supported");
    }
    CLI::Option* opt = app.get_option_no_throw("--" + item.name);
    if (opt == nullptr || item.name == "config") {
      throw std::invalid_argument("config file '" + path + "': unknown key '" + item.name + "'");
    }
    if (opt->count() > 0) continue;
    for (const std::string& v : item.inputs) opt->add_result(v);
    opt->run_callback();
  }
}

void apply_enum_keys(RunConfig& c, const EnumKeys& keys) {
  c.step.mode = parse_step_mode(keys.step_mode);
  c.init.kind = parse_init_kind(keys.init);
  c.scan.mode = parse_scan_mode(keys.scan_mode);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dispersive critical SQG solver with modulus-of-continuity certificates", "sqgd"};
  app.require_subcommand(1);

  RunConfig run_cfg;
  EnumKeys run_keys;
  std::string run_config_path;
  CLI::App* run = app.add_subcommand("run", "integrate one configuration");
  add_run_options(*run, run_cfg, run_keys, run_config_path);

  RunConfig sweep_cfg;
  EnumKeys sweep_keys;
  std::string sweep_config_path;
  std::vector<double> amplitudes;
  int threads = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "run one configuration for several A");
  add_run_options(*sweep, sweep_cfg, sweep_keys, sweep_config_path);
  sweep->add_option("--A_list", amplitudes, "comma-separated dispersion amplitudes")->delimiter(',');
  sweep->add_option("--threads", threads, "concurrent runs (default: SQGD_THREADS or all cores)");

  std::string certify_path;
  ModulusParams certify_params;
  ScanOptions certify_scan;
  EnumKeys certify_keys;
  CLI::App* certify = app.add_subcommand("certify", "minimal modulus parameter B of a snapshot");
  certify->add_option("--snapshot", certify_path, "snapshot file")->required();
  add_modulus_options(*certify, certify_params);
  add_scan_options(*certify, certify_scan, certify_keys);

  std::string audit_path;
  ModulusParams audit_params;
  ScanOptions audit_scan;
  EnumKeys audit_keys;
  double audit_B = 0.0;
  double audit_A = 0.0;
  CLI::App* audit = app.add_subcommand("audit", "breakthrough-pair audit of a snapshot");
  audit->add_option("--snapshot", audit_path, "snapshot file")->required();
  audit->add_option("--B", audit_B, "modulus parameter B")->required();
  audit->add_option("--A", audit_A, "dispersion amplitude")->capture_default_str();
  add_modulus_options(*audit, audit_params);
  add_scan_options(*audit, audit_scan, audit_keys);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  try {
    if (run->parsed()) {
      apply_config_file(*run, run_config_path);
      apply_enum_keys(run_cfg, run_keys);
      return cmd_run(run_cfg, out, err);
    }
    if (sweep->parsed()) {
      apply_config_file(*sweep, sweep_config_path);
      apply_enum_keys(sweep_cfg, sweep_keys);
      return cmd_sweep(sweep_cfg, amplitudes, out, err, threads);
    }
    if (certify->parsed()) {
      certify_scan.mode = parse_scan_mode(certify_keys.scan_mode);
      return cmd_certify(certify_path, certify_params, certify_scan, out, err);
    }
    if (audit->parsed()) {
      audit_scan.mode = parse_scan_mode(audit_keys.scan_mode);
      return cmd_audit(audit_path, audit_B, audit_A, audit_params, audit_scan, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
  return exit_code::usage;
}

}  // namespace sqgd
