#pragma once

#include <string>

#include "sqgd/certify.hpp"
#include "sqgd/initial.hpp"
#include "sqgd/integrator.hpp"
#include "sqgd/modulus.hpp"

namespace sqgd {

/// Everything a run needs. Serialized as flat `key=value` lines; keys match the CLI flags.
struct RunConfig {
  int n = 128;
  double t_end = 1.0;
  double A = 0.0;
  double advection_sign = 1.0;
  StepControl step;
  ModulusParams modulus;
  InitSpec init;
  double sample_every = 0.1;  // time units; <= 0 samples only the start and the end
  int certify_every = 0;      // samples; 0 disables certification
  bool audit = false;
  int snapshot_every = 1;     // samples; 0 keeps only the final snapshot
  ScanOptions scan;
  std::string output_dir = "out";

  /// Throws std::invalid_argument on any out-of-range field.
  void validate() const;
};

std::string to_string(StepMode mode);
StepMode parse_step_mode(const std::string& name);
std::string to_string(ScanMode mode);
ScanMode parse_scan_mode(const std::string& name);

/// Effective configuration in the same key=value form the CLI reads back.
std::string to_config_text(const RunConfig& config);

}  // namespace sqgd
