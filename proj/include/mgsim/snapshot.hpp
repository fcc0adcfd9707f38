#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "mgsim/fields.hpp"

namespace mgsim {

struct SnapshotError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "MGSP" | u32 N | u32 M | u64 count | count x (f64 re, f64 im), all
// little-endian, coefficients ordered n = -N..N, then m = 1..M.
void write_snapshot(std::ostream& os, const SpectralField& s);
void write_snapshot(const std::filesystem::path& path, const SpectralField& s);

/// The returned field lives on Grid(N, M, oversample).
SpectralField read_snapshot(std::istream& is, int oversample = 2);
SpectralField read_snapshot(const std::filesystem::path& path, int oversample = 2);

}  // namespace mgsim
