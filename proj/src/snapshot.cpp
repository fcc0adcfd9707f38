#include "mgsim/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

namespace mgsim {

namespace {

constexpr std::array<char, 4> kMagic{'M', 'G', 'S', 'P'};
constexpr std::uint32_t kMaxModes = 1u << 20;

template <class U>
void put_le(std::ostream& os, U value) {
  std::array<char, sizeof(U)> bytes{};
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFFu);
  }
  os.write(bytes.data(), bytes.size());
}

template <class U>
U get_le(std::istream& is) {
  std::array<unsigned char, sizeof(U)> bytes{};
  is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!is) throw SnapshotError("snapshot: truncated input");
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
  return value;
}

}  // namespace

void write_snapshot(std::ostream& os, const SpectralField& s) {
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(s.n_modes_x()));
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(s.n_modes_y()));
  put_le<std::uint64_t>(os, static_cast<std::uint64_t>(s.coefficients().size()));
  for (const cplx& c : s.coefficients()) {
    put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(c.real()));
    put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(c.imag()));
  }
  if (!os) throw SnapshotError("snapshot: write failed");
}

void write_snapshot(const std::filesystem::path& path, const SpectralField& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SnapshotError("snapshot: cannot open " + path.string() + " for writing");
  write_snapshot(os, s);
}

SpectralField read_snapshot(std::istream& is, int oversample) {
  std::array<char, 4> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw SnapshotError("snapshot: bad magic (expected MGSP)");
  const auto n = get_le<std::uint32_t>(is);
  const auto m = get_le<std::uint32_t>(is);
  const auto count = get_le<std::uint64_t>(is);
  if (n == 0 || m == 0 || n > kMaxModes || m > kMaxModes) {
    throw SnapshotError("snapshot: implausible mode counts");
  }
  if (count != (2ull * n + 1ull) * m) {
    throw SnapshotError("snapshot: coefficient count does not match (2N+1)M");
  }
  SpectralField out(Grid(static_cast<int>(n), static_cast<int>(m), oversample));
  for (cplx& c : out.coefficients()) {
    const double re = std::bit_cast<double>(get_le<std::uint64_t>(is));
    const double im = std::bit_cast<double>(get_le<std::uint64_t>(is));
    c = cplx(re, im);
  }
  return out;
}

SpectralField read_snapshot(const std::filesystem::path& path, int oversample) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError("snapshot: cannot open " + path.string());
  return read_snapshot(is, oversample);
}

}  // namespace mgsim
