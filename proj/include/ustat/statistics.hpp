#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "ustat/accumulator.hpp"
#include "ustat/basis.hpp"
#include "ustat/kernel.hpp"
#include "ustat/tensor.hpp"

namespace ustat {

// Guard rails for the brute-force evaluators, which cost O(n^m).
struct NaiveLimits {
  std::size_t max_order = 4;
  std::size_t max_n = 200;
};

namespace detail {

inline void check_naive_feasible(std::size_t order, std::size_t n, const NaiveLimits& limits) {
  if (order > limits.max_order)
    throw std::invalid_argument("naive statistic: kernel order exceeds configured limit");
  if (n > limits.max_n)
    throw std::invalid_argument("naive statistic: sample size exceeds configured limit");
  if (n == 0) throw std::invalid_argument("naive statistic: empty sample");
}

template <typename Body>
void for_each_tuple(std::size_t m, std::size_t n, Body&& body) {
  std::vector<std::size_t> j(m, 0);
  while (true) {
    body(j);
    std::size_t k = m;
    while (k-- > 0) {
      if (++j[k] < n) break;
      j[k] = 0;
      if (k == 0) return;
    }
  }
}

inline bool all_distinct(const std::vector<std::size_t>& j) {
  for (std::size_t a = 0; a + 1 < j.size(); ++a)
    for (std::size_t b = a + 1; b < j.size(); ++b)
      if (j[a] == j[b]) return false;
  return true;
}

}  // namespace detail

// n^{-m/2} * sum over all index tuples of f(X_{j_1},...,X_{j_m}).
inline double v_statistic_naive(const Kernel& kernel, std::span<const double> xs,
                                const NaiveLimits& limits = {}) {
  const std::size_t m = kernel.order();
  const std::size_t n = xs.size();
  detail::check_naive_feasible(m, n, limits);
  CompensatedSum acc;
  std::vector<double> pt(m, 0.0);
  detail::for_each_tuple(m, n, [&](const std::vector<std::size_t>& j) {
    for (std::size_t k = 0; k < m; ++k) pt[k] = xs[j[k]];
    acc.add(kernel(pt));
  });
  return acc.value() / std::pow(static_cast<double>(n), static_cast<double>(m) / 2.0);
}

// n^{-m/2} * sum over tuples with pairwise-distinct entries.
inline double u_statistic_naive(const Kernel& kernel, std::span<const double> xs,
                                const NaiveLimits& limits = {}) {
  const std::size_t m = kernel.order();
  const std::size_t n = xs.size();
  detail::check_naive_feasible(m, n, limits);
  if (n < m) throw std::invalid_argument("u statistic: need at least m distinct points");
  CompensatedSum acc;
  std::vector<double> pt(m, 0.0);
  detail::for_each_tuple(m, n, [&](const std::vector<std::size_t>& j) {
    if (!detail::all_distinct(j)) return;
    for (std::size_t k = 0; k < m; ++k) pt[k] = xs[j[k]];
    acc.add(kernel(pt));
  });
  return acc.value() / std::pow(static_cast<double>(n), static_cast<double>(m) / 2.0);
}

// Converts the n^{-m/2}-scaled distinct-tuple sum to the average over
// ordered distinct tuples, i.e. multiplies by n^{m/2} (n-m)!/n!.
inline double hoeffding_normalized(double u_scaled, std::size_t n, std::size_t m) {
  if (n < m) throw std::invalid_argument("hoeffding_normalized: need n >= m");
  double falling = 1.0;
  for (std::size_t k = 0; k < m; ++k) falling *= static_cast<double>(n - k);
  return u_scaled * std::pow(static_cast<double>(n), static_cast<double>(m) / 2.0) / falling;
}

// (n-m)!/n! * sum over distinct tuples of f: the classical unbiased form.
inline double u_statistic_hoeffding_naive(const Kernel& kernel, std::span<const double> xs,
                                          const NaiveLimits& limits = {}) {
  return hoeffding_normalized(u_statistic_naive(kernel, xs, limits), xs.size(), kernel.order());
}

// Normalized partial sum S_n(i) = n^{-1/2} sum_j e_i(X_j).
inline double s_n(const OrthonormalBasis& basis, std::uint32_t index,
                  std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("s_n: empty sample");
  CompensatedSum acc;
  for (double x : xs) acc.add(basis.evaluate(index, x));
  return acc.value() / std::sqrt(static_cast<double>(xs.size()));
}

// Diagonal power sum S_n(i_1,...,i_k) = n^{-k/2} sum_j prod_l e_{i_l}(X_j):
// every basis factor is evaluated at the same observation.
inline double mixed_power_sum(const OrthonormalBasis& basis,
                              std::span<const std::uint32_t> indices,
                              std::span<const double> xs) {
  if (indices.empty()) throw std::invalid_argument("mixed_power_sum: empty index block");
  if (xs.empty()) throw std::invalid_argument("mixed_power_sum: empty sample");
  CompensatedSum acc;
  for (double x : xs) {
    double prod = 1.0;
    for (std::uint32_t i : indices) prod *= basis.evaluate(i, x);
    acc.add(prod);
  }
  return acc.value() /
         std::pow(static_cast<double>(xs.size()), static_cast<double>(indices.size()) / 2.0);
}

// All set partitions of {0,...,m-1}, in restricted-growth-string order.
// Blocks within a partition are ordered by first appearance.
using SetPartition = std::vector<std::vector<std::size_t>>;

inline std::vector<SetPartition> set_partitions(std::size_t m) {
  if (m == 0 || m > 12) throw std::invalid_argument("set_partitions: order out of range");
  std::vector<SetPartition> out;
  std::vector<std::size_t> label(m, 0);
  auto emit = [&] {
    std::size_t blocks = 0;
    for (std::size_t l : label) blocks = std::max(blocks, l + 1);
    SetPartition part(blocks);
    for (std::size_t k = 0; k < m; ++k) part[label[k]].push_back(k);
    out.push_back(std::move(part));
  };
  // Depth-first enumeration of restricted growth strings: label[k] may be at
  // most 1 + max(label[0..k-1]).
  std::vector<std::size_t> maxes(m, 0);
  std::size_t k = 1;
  if (m == 1) {
    emit();
    return out;
  }
  while (true) {
    if (k == m) {
      emit();
      --k;
      while (label[k] == maxes[k - 1] + 1) {
        label[k] = 0;
        if (k == 1) return out;
        --k;
      }
      ++label[k];
      maxes[k] = std::max(maxes[k - 1], label[k]);
      ++k;
    } else {
      label[k] = 0;
      maxes[k] = maxes[k - 1];
      ++k;
    }
  }
}

// Moebius weight prod_B (-1)^{|B|-1} (|B|-1)! that turns all-tuple sums into
// distinct-tuple sums.
inline double partition_weight(const SetPartition& partition) {
  double w = 1.0;
  for (const auto& block : partition) {
    double f = 1.0;
    for (std::size_t s = 1; s + 1 <= block.size(); ++s) f *= static_cast<double>(s);
    w *= (block.size() % 2 == 1 ? 1.0 : -1.0) * f;
  }
  return w;
}

namespace detail {

inline void check_series_inputs(const CoefficientTensor& tensor, const OrthonormalBasis& basis,
                                std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("series statistic: empty sample");
  if (!basis.index_usable(tensor.max_component()))
    throw std::invalid_argument("series statistic: tensor index beyond basis range");
}

}  // namespace detail

// V_n = sum_I f_I prod_k S_n(I_k): the orthogonal-series form of the
// V-statistic of the kernel with coefficients f_I.
inline double v_statistic_series(const CoefficientTensor& tensor, const OrthonormalBasis& basis,
                                 std::span<const double> xs) {
  detail::check_series_inputs(tensor, basis, xs);
  std::map<std::uint32_t, double> sn;
  for (std::uint32_t i : tensor.distinct_components()) sn.emplace(i, s_n(basis, i, xs));
  CompensatedSum acc;
  for (const auto& [index, value] : tensor.entries()) {
    double prod = value;
    for (std::uint32_t i : index) prod *= sn.at(i);
    acc.add(prod);
  }
  return acc.value();
}

// U_n via the diagonal decomposition: for each coefficient the all-tuple
// product is corrected by Moebius-weighted products of diagonal power sums
// over the blocks of every set partition of the argument slots.
inline double u_statistic_series(const CoefficientTensor& tensor, const OrthonormalBasis& basis,
                                 std::span<const double> xs) {
  detail::check_series_inputs(tensor, basis, xs);
  const std::size_t m = tensor.order();
  if (xs.size() < m) throw std::invalid_argument("u statistic: need at least m distinct points");
  const auto partitions = set_partitions(m);
  std::map<std::vector<std::uint32_t>, double> block_cache;
  auto block_sum = [&](std::vector<std::uint32_t> block_indices) {
    std::sort(block_indices.begin(), block_indices.end());
    const auto it = block_cache.find(block_indices);
    if (it != block_cache.end()) return it->second;
    const double v = mixed_power_sum(basis, block_indices, xs);
    block_cache.emplace(std::move(block_indices), v);
    return v;
  };
  CompensatedSum acc;
  std::vector<std::uint32_t> block_indices;
  for (const auto& [index, value] : tensor.entries()) {
    CompensatedSum entry;
    for (const auto& partition : partitions) {
      double prod = partition_weight(partition);
      for (const auto& block : partition) {
        block_indices.clear();
        for (std::size_t slot : block) block_indices.push_back(index[slot]);
        prod *= block_sum(block_indices);
      }
      entry.add(prod);
    }
    acc.add(value * entry.value());
  }
  return acc.value();
}

}  // namespace ustat
