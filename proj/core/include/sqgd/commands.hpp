#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sqgd/config.hpp"
#include "sqgd/diagnostics.hpp"

namespace sqgd {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int usage = 2;      // bad arguments, unreadable or corrupt input
inline constexpr int l2_growth = 3;  // ||theta||_2 grew beyond kL2Slack between samples
inline constexpr int blow_up = 4;
}  // namespace exit_code

/// Relative growth of ||theta||_2 between consecutive samples tolerated by cmd_run.
inline constexpr double kL2Slack = 1e-8;

struct RunOutcome {
  int exit_code = exit_code::ok;
  std::string message;
  std::vector<DiagnosticsRecord> records;
};

/// Runs one configuration and writes into config.output_dir:
///   config.ini        effective configuration
///   diagnostics.csv   one row per sample
///   snap_NNNNNN.bin   every snapshot_every-th sample
///   final.bin         final state
/// Validation errors propagate as std::invalid_argument.
RunOutcome execute_run(const RunConfig& config);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct SweepRow {
  double A = 0.0;
  double max_linf = 0.0;
  std::optional<double> max_bmin;
  double final_l2 = 0.0;
  int exit_code = exit_code::ok;
};

/// Runs every A in its own subdirectory `A_<value>` of the template's output_dir, up to
/// `threads` at a time (0 reads SQGD_THREADS, falling back to the hardware concurrency),
/// then writes summary.csv with rows sorted by A.
int cmd_sweep(const RunConfig& base, std::vector<double> amplitudes, std::ostream& out,
              std::ostream& err, int threads = 0);

int cmd_certify(const std::filesystem::path& snapshot, const ModulusParams& params,
                const ScanOptions& scan, std::ostream& out, std::ostream& err);

int cmd_audit(const std::filesystem::path& snapshot, double B, double A,
              const ModulusParams& params, const ScanOptions& scan, std::ostream& out,
              std::ostream& err);

/// Parses `sqgd <run|sweep|certify|audit> [--config file] [--key value ...]` and dispatches.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sqgd
