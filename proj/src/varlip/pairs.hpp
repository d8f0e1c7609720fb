#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "varlip/grid.hpp"

namespace varlip {

// How sup-over-pairs scans choose their pairs. `automatic` is exhaustive
// below the caller's size threshold and subsampled above it.
struct PairSampling {
  enum class Mode { automatic, exhaustive, subsampled };
  Mode mode = Mode::automatic;
  int band = 64;                     // neighbours within this index distance
  std::size_t random_pairs = 100000; // plus this many uniform long-range pairs
  std::uint64_t seed = 0x5eed;
};

// Visits unordered pairs (a, b), a != b, of cells. Returns true when the
// visit was a subsample rather than every pair.
bool for_each_pair(const Grid& grid, const PairSampling& sampling, bool subsample_by_default,
                   const std::function<void(std::size_t, std::size_t)>& visit);

}  // namespace varlip
