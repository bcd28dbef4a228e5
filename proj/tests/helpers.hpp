#pragma once

// Shared test utilities: deterministic pseudo-random tensors and processes
// built on the library's counter RNG so every test is reproducible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ustat/process.hpp"
#include "ustat/rng.hpp"
#include "ustat/tensor.hpp"

namespace testutil {

inline double uniform_in(std::uint64_t seed, std::uint64_t i, double lo, double hi) {
  return lo + (hi - lo) * ustat::counter_uniform(seed, i);
}

// Random sparse tensor with entries in [-2,2] bounded away from zero, and
// component indices in [1, max_index].
inline ustat::CoefficientTensor random_tensor(std::uint64_t seed, std::size_t order,
                                              std::uint32_t max_index,
                                              std::size_t max_entries) {
  ustat::CoefficientTensor tensor(order);
  // Never ask for more entries than distinct index tuples exist, or the
  // draw-until-filled loop below cannot terminate.
  std::size_t available = 1;
  for (std::size_t k = 0; k < order && available <= max_entries; ++k)
    available *= max_index;
  const std::size_t cap = std::min(max_entries, available);
  const std::size_t entries =
      1 + static_cast<std::size_t>(ustat::counter_u64(seed, 0) % cap);
  std::uint64_t ctr = 1;
  while (tensor.size() < entries) {
    std::vector<std::uint32_t> index(order);
    for (std::size_t k = 0; k < order; ++k)
      index[k] = 1 + static_cast<std::uint32_t>(ustat::counter_u64(seed, ctr++) % max_index);
    double value = uniform_in(seed, ctr++, -2.0, 2.0);
    if (std::abs(value) < 0.05) value = value < 0 ? -0.05 : 0.05;
    tensor.set(index, value);
  }
  return tensor;
}

inline ustat::TransitionMatrix two_state_chain_half() {
  return {{0.75, 0.25}, {0.25, 0.75}};
}

inline ustat::TransitionMatrix three_state_chain() {
  return {{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}, {0.1, 0.2, 0.7}};
}

}  // namespace testutil
