#pragma once

#include <cstdint>
#include <string>

#include "sqgd/field.hpp"

namespace sqgd {

enum class InitKind { random_smooth, single_mode, two_mode, gaussian_bump, snapshot };

struct InitSpec {
  InitKind kind = InitKind::random_smooth;
  std::uint64_t seed = 1;
  double slope = 2.0;        // spectral slope s in |k|^{-s}
  int k_max = 8;             // largest |k| carrying energy
  double target_linf = 1.0;  // random_smooth is rescaled to this max|theta|
  double width = 0.5;        // gaussian_bump standard deviation
  std::string snapshot_path;
};

/// Smooth periodic initial data.
///
/// random_smooth: c_k = |k|^{-s} exp(i phi_k) for 0 < |k| <= k_max with phases drawn from a
/// mt19937_64 seeded by `seed`, conjugate-symmetric, zero mean, rescaled to target_linf.
/// Refuses k_max > n/3. Named profiles: single_mode = sin x, two_mode = sin x + cos 2y,
/// gaussian_bump = periodized Gaussian centered at (pi, pi).
ScalarField generate_initial(const InitSpec& spec, const Grid& grid);

InitKind parse_init_kind(const std::string& name);
std::string to_string(InitKind kind);

}  // namespace sqgd
