#include "mgsim/presets.hpp"

#include <algorithm>
#include <stdexcept>

#include "mgsim/diagnostics.hpp"

namespace mgsim {

namespace {

struct Mode {
  int n;
  int m;
  cplx value;
};

const std::vector<Mode> kSmallShape{
    {1, 1, {0.0, -0.5}}, {2, 2, {0.25, 0.0}}, {1, 3, {0.1, -0.1}}, {3, 1, {-0.05, 0.05}}};

// Imaginary coefficients: a sum of sin(nx) sin(m pi y).
const std::vector<Mode> kOddShape{
    {1, 1, {0.0, -0.5}}, {2, 1, {0.0, -0.2}}, {1, 2, {0.0, 0.25}}, {3, 2, {0.0, -0.1}}};

const std::vector<Mode> kStressShape{{1, 1, {0.0, -0.5}}, {2, 1, {0.3, 0.0}}, {1, 2, {0.0, 0.2}}};

SpectralField build(const Grid& grid, const std::vector<Mode>& modes) {
  SpectralField u(grid);
  for (const auto& md : modes) {
    if (md.n > grid.n_modes_x() || md.m > grid.n_modes_y()) continue;
    u(md.n, md.m) += md.value;
    u(-md.n, md.m) += std::conj(md.value);
  }
  return u;
}

SpectralField with_linf(SpectralField u, double target) {
  ExtremaFinder finder(u.grid());
  const Extrema e = finder.find(u);
  const double linf = std::max(e.max.value, -e.min.value);
  if (linf > 0.0) u *= target / linf;
  return u;
}

SpectralField with_wiener0(SpectralField u, double target) {
  const double w0 = wiener_norm(u, 0);
  if (w0 > 0.0) u *= target / w0;
  return u;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"zero", "small_data", "wiener_small",
                                              "wiener_large", "blowup_stress"};
  return names;
}

bool is_preset(std::string_view name) {
  const auto& names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SpectralField preset_field(std::string_view name, const Grid& grid) {
  if (name == "zero") return SpectralField(grid);
  if (name == "small_data") return with_linf(build(grid, kSmallShape), 0.05);
  if (name == "wiener_small") return with_wiener0(build(grid, kOddShape), 0.1);
  if (name == "wiener_large") return with_wiener0(build(grid, kOddShape), 10.0);
  if (name == "blowup_stress") return with_linf(build(grid, kStressShape), 50.0);
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

}  // namespace mgsim
