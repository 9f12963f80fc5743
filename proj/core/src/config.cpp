#include "sqgd/config.hpp"

#include <sstream>
#include <stdexcept>

#include "sqgd/csv.hpp"

namespace sqgd {

void RunConfig::validate() const {
  Grid grid(n);  // resolution constraints
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
  if (advection_sign != 1.0 && advection_sign != -1.0) {
    throw std::invalid_argument("advection_sign must be +1 or -1");
  }
  step.validate();
  modulus.validate();
  if (certify_every < 0) throw std::invalid_argument("certify_every must be >= 0");
  if (snapshot_every < 0) throw std::invalid_argument("snapshot_every must be >= 0");
  if (init.kind == InitKind::snapshot && init.snapshot_path.empty()) {
    throw std::invalid_argument("init=snapshot requires a snapshot path");
  }
  if (output_dir.empty()) throw std::invalid_argument("output_dir must not be empty");
}

std::string to_string(StepMode mode) { return mode == StepMode::fixed ? "fixed" : "cfl"; }

StepMode parse_step_mode(const std::string& name) {
  if (name == "fixed") return StepMode::fixed;
  if (name == "cfl") return StepMode::cfl;
  throw std::invalid_argument("unknown step mode '" + name + "'");
}

std::string to_string(ScanMode mode) {
  switch (mode) {
    case ScanMode::automatic: return "auto";
    case ScanMode::exhaustive: return "exhaustive";
    case ScanMode::sampled: return "sampled";
  }
  return "auto";
}

ScanMode parse_scan_mode(const std::string& name) {
  if (name == "auto") return ScanMode::automatic;
  if (name == "exhaustive") return ScanMode::exhaustive;
  if (name == "sampled") return ScanMode::sampled;
  throw std::invalid_argument("unknown scan mode '" + name + "'");
}

std::string to_config_text(const RunConfig& c) {
  using csv::format_double;
  std::ostringstream out;
  out << "n=" << c.n << '\n'
      << "t_end=" << format_double(c.t_end) << '\n'
      << "A=" << format_double(c.A) << '\n'
      << "advection_sign=" << format_double(c.advection_sign) << '\n'
      << "step_mode=" << to_string(c.step.mode) << '\n'
      << "dt=" << format_double(c.step.dt_fixed) << '\n'
      << "cfl=" << format_double(c.step.cfl_number) << '\n'
      << "dt_max=" << format_double(c.step.dt_max) << '\n'
      << "gamma=" << format_double(c.modulus.gamma) << '\n'
      << "delta=" << format_double(c.modulus.delta) << '\n'
      << "c_omega=" << format_double(c.modulus.c_omega) << '\n'
      << "init=" << to_string(c.init.kind) << '\n'
      << "seed=" << c.init.seed << '\n'
      << "slope=" << format_double(c.init.slope) << '\n'
      << "k_max=" << c.init.k_max << '\n'
      << "target_linf=" << format_double(c.init.target_linf) << '\n'
      << "width=" << format_double(c.init.width) << '\n';
  if (!c.init.snapshot_path.empty()) out << "snapshot=" << c.init.snapshot_path << '\n';
  out << "sample_every=" << format_double(c.sample_every) << '\n'
      << "certify_every=" << c.certify_every << '\n'
      << "audit=" << (c.audit ? "true" : "false") << '\n'
      << "snapshot_every=" << c.snapshot_every << '\n'
      << "scan_mode=" << to_string(c.scan.mode) << '\n'
      << "scan_samples=" << c.scan.samples << '\n'
      << "scan_seed=" << c.scan.seed << '\n'
      << "output_dir=" << c.output_dir << '\n';
  return out.str();
}

}  // namespace sqgd
