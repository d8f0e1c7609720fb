#include "varlip/pairs.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

namespace varlip {

bool for_each_pair(const Grid& grid, const PairSampling& sampling, bool subsample_by_default,
                   const std::function<void(std::size_t, std::size_t)>& visit) {
  const bool subsample =
      sampling.mode == PairSampling::Mode::subsampled ||
      (sampling.mode == PairSampling::Mode::automatic && subsample_by_default);
  const std::size_t total = grid.size();
  if (!subsample) {
    for (std::size_t a = 0; a < total; ++a) {
      for (std::size_t b = a + 1; b < total; ++b) visit(a, b);
    }
    return false;
  }

  const int n = grid.cells_per_axis();
  const int band = std::max(0, sampling.band);
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j <= std::min(n - 1, i + band); ++j) {
        visit(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
    }
  } else {
    // Chebyshev neighbourhood, each unordered pair once (b after a in flat order).
    for (std::size_t a = 0; a < total; ++a) {
      const auto ia = grid.index(a);
      for (int dy = 0; dy <= band; ++dy) {
        const int y = ia[1] + dy;
        if (y >= n) break;
        for (int dx = -band; dx <= band; ++dx) {
          if (dy == 0 && dx <= 0) continue;
          const int x = ia[0] + dx;
          if (x < 0 || x >= n) continue;
          visit(a, grid.flat(x, y));
        }
      }
    }
  }
  // Portable draw: modulo of the raw engine output keeps runs reproducible
  // across standard library implementations.
  std::mt19937_64 rng(sampling.seed);
  for (std::size_t k = 0; k < sampling.random_pairs; ++k) {
    const std::size_t a = static_cast<std::size_t>(rng() % total);
    const std::size_t b = static_cast<std::size_t>(rng() % total);
    if (a != b) visit(std::min(a, b), std::max(a, b));
  }
  return true;
}

}  // namespace varlip
