#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mgsim/fields.hpp"

namespace mgsim {

/// Names accepted by preset_field: zero, small_data, wiener_small,
/// wiener_large, blowup_stress.
const std::vector<std::string>& preset_names();
bool is_preset(std::string_view name);

/// Initial condition of a named preset on `grid`. Modes outside the
/// truncation are dropped before the normalization.
///   small_data:    |u0|_Linf = 0.05, no n = 0 modes (mean zero)
///   wiener_small:  odd in x, |u0|_A0 = 0.1
///   wiener_large:  same shape, |u0|_A0 = 10
///   blowup_stress: |u0|_Linf = 50
/// Throws std::invalid_argument for an unknown name.
SpectralField preset_field(std::string_view name, const Grid& grid);

}  // namespace mgsim
