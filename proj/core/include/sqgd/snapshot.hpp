#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqgd/field.hpp"

namespace sqgd {

// Binary snapshot layout, little-endian regardless of host, no padding:
//
//   offset  size  field
//        0     4  magic "SQGD"
//        4     2  format version (u16) = 1
//        6     4  n_x (u32)
//       10     4  n_y (u32)
//       14     8  time (f64)
//       22     8  A (f64)
//       30  8*nx*ny  values (f64), row-major, x1 index slowest

inline constexpr std::uint16_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 30;

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Snapshot {
  ScalarField field;
  double time = 0.0;
  double A = 0.0;
};

std::vector<std::uint8_t> encode_snapshot(const ScalarField& field, double time, double A);
/// Validates magic, version, shape and payload length; throws SnapshotError.
Snapshot decode_snapshot(std::span<const std::uint8_t> bytes);

void write_snapshot(const std::filesystem::path& path, const ScalarField& field, double time,
                    double A);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace sqgd
