#include "mgsim/grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mgsim {

int next_smooth_size(int n) {
  if (n <= 1) return 1;
  for (int candidate = n;; ++candidate) {
    int r = candidate;
    for (int p : {2, 3, 5}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return candidate;
  }
}

Grid::Grid(int n_modes_x, int n_modes_y, int oversample)
    : n_modes_x_(n_modes_x), n_modes_y_(n_modes_y), oversample_(oversample) {
  if (n_modes_x < 1) throw std::invalid_argument("grid: n_modes_x must be >= 1");
  if (n_modes_y < 1) throw std::invalid_argument("grid: n_modes_y must be >= 1");
  if (oversample < 1) throw std::invalid_argument("grid: oversample must be >= 1");
  const int modes = 2 * n_modes_x + 1;
  const int dealias_floor = (3 * modes + 1) / 2;
  nx_ = next_smooth_size(std::max(2 * oversample * modes, dealias_floor));
  // The type-I sine/cosine transforms run as real DFTs of length 2(ny + 1).
  ny_ = next_smooth_size(oversample * (n_modes_y + 1) + 1) - 1;
}

}  // namespace mgsim
