#include "sqgd/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace sqgd {

namespace {

constexpr char kMagic[4] = {'S', 'Q', 'G', 'D'};

template <class U>
void put_le(std::vector<std::uint8_t>& out, U value) {
  for (std::size_t b = 0; b < sizeof(U); ++b) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * b)));
  }
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  put_le(out, std::bit_cast<std::uint64_t>(v));
}

template <class U>
U get_le(std::span<const std::uint8_t> bytes, std::size_t offset) {
  U value = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) {
    value |= static_cast<U>(static_cast<U>(bytes[offset + b]) << (8 * b));
  }
  return value;
}

double get_f64(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return std::bit_cast<double>(get_le<std::uint64_t>(bytes, offset));
}

}  // namespace

std::vector<std::uint8_t> encode_snapshot(const ScalarField& field, double time, double A) {
  const auto n = static_cast<std::uint32_t>(field.n());
  std::vector<std::uint8_t> out;
  out.reserve(kSnapshotHeaderBytes + 8 * field.grid().size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_le(out, kSnapshotVersion);
  put_le(out, n);
  put_le(out, n);
  put_f64(out, time);
  put_f64(out, A);
  for (double v : field.values()) put_f64(out, v);
  return out;
}

Snapshot decode_snapshot(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kSnapshotHeaderBytes) throw SnapshotError("snapshot truncated in header");
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw SnapshotError("bad snapshot magic");
  }
  const auto version = get_le<std::uint16_t>(bytes, 4);
  if (version != kSnapshotVersion) {
    throw SnapshotError("unsupported snapshot version " + std::to_string(version));
  }
  const auto nx = get_le<std::uint32_t>(bytes, 6);
  const auto ny = get_le<std::uint32_t>(bytes, 10);
  if (nx != ny) throw SnapshotError("only square snapshots are supported");
  const std::uint64_t count = static_cast<std::uint64_t>(nx) * ny;
  if (bytes.size() != kSnapshotHeaderBytes + 8 * count) {
    throw SnapshotError("snapshot payload length does not match header");
  }

  Grid grid = [nx] {
    try {
      return Grid(static_cast<int>(nx));
    } catch (const std::invalid_argument& e) {
      throw SnapshotError(e.what());
    }
  }();
  Snapshot snap{ScalarField(grid), get_f64(bytes, 14), get_f64(bytes, 22)};
  auto values = snap.field.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = get_f64(bytes, kSnapshotHeaderBytes + 8 * k);
  }
  return snap;
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& field, double time,
                    double A) {
  const std::vector<std::uint8_t> bytes = encode_snapshot(field, time, A);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw SnapshotError("failed writing " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

}  // namespace sqgd
