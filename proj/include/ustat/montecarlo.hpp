#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "ustat/accumulator.hpp"
#include "ustat/basis.hpp"
#include "ustat/bounds.hpp"
#include "ustat/kernel.hpp"
#include "ustat/process.hpp"
#include "ustat/rng.hpp"
#include "ustat/statistics.hpp"
#include "ustat/tensor.hpp"

namespace ustat {

enum class StatKind { U, V };

inline const char* stat_kind_name(StatKind kind) { return kind == StatKind::U ? "U" : "V"; }

// Empirical tail curve of a statistic: exceedance counts over an x grid,
// with exact one-sided binomial upper confidence limits and (optionally)
// the theoretical envelope values. Counts are integers merged by addition,
// so the curve is identical for any worker count.
struct TailCurve {
  StatKind stat_kind = StatKind::V;
  std::vector<double> x_grid;
  std::vector<std::uint64_t> counts;
  std::size_t reps = 0;
  std::vector<double> estimates;
  std::vector<double> ci_upper;
  std::vector<double> bound;  // empty until apply_bound
  std::string process_id;
  std::string tensor_id;
  std::size_t n = 0;
  std::uint64_t master_seed = 0;
};

// Exact one-sided upper confidence limit for a binomial proportion at the
// given level: the Clopper-Pearson construction, i.e. the `level` quantile
// of Beta(k+1, N-k).
inline double binomial_upper_limit(std::uint64_t k, std::uint64_t n, double level = 0.99) {
  if (n == 0) throw std::invalid_argument("binomial_upper_limit: n must be >= 1");
  if (k > n) throw std::invalid_argument("binomial_upper_limit: k > n");
  if (!(level > 0.0) || !(level < 1.0))
    throw std::invalid_argument("binomial_upper_limit: level must lie in (0,1)");
  if (k == n) return 1.0;
  return boost::math::ibeta_inv(static_cast<double>(k + 1), static_cast<double>(n - k), level);
}

namespace detail {

inline std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : std::min<std::size_t>(hc, 16);
}

// Runs body(r) for r in [0, reps) across workers in contiguous chunks.
template <typename Body>
void parallel_replications(std::size_t reps, std::size_t workers, const Body& body) {
  workers = std::max<std::size_t>(1, std::min(workers, reps));
  if (workers == 1) {
    for (std::size_t r = 0; r < reps; ++r) body(r, 0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = reps * w / workers;
    const std::size_t hi = reps * (w + 1) / workers;
    threads.emplace_back([lo, hi, w, &body] {
      for (std::size_t r = lo; r < hi; ++r) body(r, w);
    });
  }
  for (auto& t : threads) t.join();
}

inline void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("tail experiment: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0) throw std::invalid_argument("tail experiment: grid must be nonnegative");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw std::invalid_argument("tail experiment: grid must be strictly increasing");
  }
}

inline void finalize_curve(TailCurve& curve,
                           const std::vector<std::vector<std::uint64_t>>& worker_counts) {
  curve.counts.assign(curve.x_grid.size(), 0);
  for (const auto& wc : worker_counts)
    for (std::size_t i = 0; i < wc.size(); ++i) curve.counts[i] += wc[i];
  curve.estimates.resize(curve.x_grid.size());
  curve.ci_upper.resize(curve.x_grid.size());
  for (std::size_t i = 0; i < curve.x_grid.size(); ++i) {
    curve.estimates[i] =
        static_cast<double>(curve.counts[i]) / static_cast<double>(curve.reps);
    curve.ci_upper[i] = binomial_upper_limit(curve.counts[i], curve.reps);
  }
}

}  // namespace detail

// Replication seed: derived from the master seed, the process identity, and
// the replication index only — schedulers cannot influence draws.
inline std::uint64_t tail_replication_seed(std::uint64_t master_seed,
                                           const std::string& process_id, std::uint64_t r) {
  return replication_seed(substream_seed(master_seed, fnv1a64(process_id)), r);
}

// Monte Carlo tail curve of the series-form statistic: for each replication
// draw a fresh trajectory and count |stat| > x per grid point.
inline TailCurve run_tail_experiment(const MixingProcess& process,
                                     const CoefficientTensor& tensor,
                                     const OrthonormalBasis& basis, StatKind kind, std::size_t n,
                                     std::size_t reps, const std::vector<double>& x_grid,
                                     std::uint64_t master_seed, std::size_t workers = 0) {
  detail::validate_grid(x_grid);
  if (reps == 0) throw std::invalid_argument("run_tail_experiment: reps must be >= 1");
  if (!same_measure(process.marginal(), basis.measure()))
    throw std::invalid_argument("run_tail_experiment: process/basis measure mismatch");
  TailCurve curve;
  curve.stat_kind = kind;
  curve.x_grid = x_grid;
  curve.reps = reps;
  curve.process_id = process.id();
  curve.n = n;
  curve.master_seed = master_seed;

  const std::size_t w = detail::resolve_workers(workers);
  std::vector<std::vector<std::uint64_t>> worker_counts(
      std::max<std::size_t>(1, std::min(w, reps)),
      std::vector<std::uint64_t>(x_grid.size(), 0));
  detail::parallel_replications(reps, w, [&](std::size_t r, std::size_t worker) {
    const std::uint64_t seed = tail_replication_seed(master_seed, curve.process_id, r);
    const std::vector<double> xs = process.simulate(seed, n);
    const double stat = kind == StatKind::V ? v_statistic_series(tensor, basis, xs)
                                            : u_statistic_series(tensor, basis, xs);
    const double a = std::abs(stat);
    auto& counts = worker_counts[worker];
    for (std::size_t i = 0; i < curve.x_grid.size(); ++i)
      if (a > curve.x_grid[i]) ++counts[i];
  });
  detail::finalize_curve(curve, worker_counts);
  return curve;
}

// Naive-path fallback for kernels without a coefficient tensor; subject to
// the O(n^m) feasibility caps.
inline TailCurve run_tail_experiment_naive(const MixingProcess& process, const Kernel& kernel,
                                           StatKind kind, std::size_t n, std::size_t reps,
                                           const std::vector<double>& x_grid,
                                           std::uint64_t master_seed, std::size_t workers = 0,
                                           const NaiveLimits& limits = {}) {
  detail::validate_grid(x_grid);
  if (reps == 0) throw std::invalid_argument("run_tail_experiment_naive: reps must be >= 1");
  detail::check_naive_feasible(kernel.order(), n, limits);
  TailCurve curve;
  curve.stat_kind = kind;
  curve.x_grid = x_grid;
  curve.reps = reps;
  curve.process_id = process.id();
  curve.n = n;
  curve.master_seed = master_seed;

  const std::size_t w = detail::resolve_workers(workers);
  std::vector<std::vector<std::uint64_t>> worker_counts(
      std::max<std::size_t>(1, std::min(w, reps)),
      std::vector<std::uint64_t>(x_grid.size(), 0));
  detail::parallel_replications(reps, w, [&](std::size_t r, std::size_t worker) {
    const std::uint64_t seed = tail_replication_seed(master_seed, curve.process_id, r);
    const std::vector<double> xs = process.simulate(seed, n);
    const double stat = kind == StatKind::V ? v_statistic_naive(kernel, xs, limits)
                                            : u_statistic_naive(kernel, xs, limits);
    const double a = std::abs(stat);
    auto& counts = worker_counts[worker];
    for (std::size_t i = 0; i < curve.x_grid.size(); ++i)
      if (a > curve.x_grid[i]) ++counts[i];
  });
  detail::finalize_curve(curve, worker_counts);
  return curve;
}

// E f(X*_1,...,X*_m) under the independent product of the kernel's marginal:
// the centering constant for the classical U-statistic bound.
inline double expectation_under_product(const Kernel& kernel, std::size_t nodes_per_axis = 0) {
  const std::size_t m = kernel.order();
  if (nodes_per_axis == 0) nodes_per_axis = detail::default_nodes_per_axis(m);
  const MeasureNodes nodes = measure_nodes(kernel.measure(), nodes_per_axis);
  const std::size_t q = nodes.points.size();
  std::vector<std::size_t> digits(m, 0);
  std::vector<double> pt(m, 0.0);
  CompensatedSum acc;
  while (true) {
    double w = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      pt[k] = nodes.points[digits[k]];
      w *= nodes.weights[digits[k]];
    }
    acc.add(w * kernel(pt));
    std::size_t k = m;
    while (k-- > 0) {
      if (++digits[k] < q) break;
      digits[k] = 0;
      if (k == 0) return acc.value();
    }
  }
}

// One-sided tail curve of the centered, Hoeffding-normalized U-statistic:
// counts U - EU >= t. Uses the naive evaluator (the kernel need not have a
// series form).
inline TailCurve run_hoeffding_experiment(const MixingProcess& process, const Kernel& kernel,
                                          std::size_t n, std::size_t reps,
                                          const std::vector<double>& t_grid,
                                          std::uint64_t master_seed, std::size_t workers = 0,
                                          const NaiveLimits& limits = {}) {
  detail::validate_grid(t_grid);
  if (reps == 0) throw std::invalid_argument("run_hoeffding_experiment: reps must be >= 1");
  detail::check_naive_feasible(kernel.order(), n, limits);
  const double expectation = expectation_under_product(kernel);
  TailCurve curve;
  curve.stat_kind = StatKind::U;
  curve.x_grid = t_grid;
  curve.reps = reps;
  curve.process_id = process.id();
  curve.n = n;
  curve.master_seed = master_seed;

  const std::size_t w = detail::resolve_workers(workers);
  std::vector<std::vector<std::uint64_t>> worker_counts(
      std::max<std::size_t>(1, std::min(w, reps)),
      std::vector<std::uint64_t>(t_grid.size(), 0));
  detail::parallel_replications(reps, w, [&](std::size_t r, std::size_t worker) {
    const std::uint64_t seed = tail_replication_seed(master_seed, curve.process_id, r);
    const std::vector<double> xs = process.simulate(seed, n);
    const double centered = u_statistic_hoeffding_naive(kernel, xs, limits) - expectation;
    auto& counts = worker_counts[worker];
    for (std::size_t i = 0; i < curve.x_grid.size(); ++i)
      if (centered >= curve.x_grid[i]) ++counts[i];
  });
  detail::finalize_curve(curve, worker_counts);
  return curve;
}

// Fills curve.bound from the certificate on the curve's own grid.
inline void apply_bound(TailCurve& curve, const BoundCertificate& certificate) {
  curve.bound.resize(curve.x_grid.size());
  for (std::size_t i = 0; i < curve.x_grid.size(); ++i)
    curve.bound[i] = certificate.bound_at(curve.x_grid[i]);
}

// Envelope verdict: a grid point is violated when even the 0.99 upper
// confidence limit exceeds the theoretical bound.
struct EnvelopeReport {
  bool pass = false;
  std::size_t violations = 0;
  std::vector<std::size_t> violation_indices;
  double max_estimate_over_bound = 0.0;  // looseness metric
  std::size_t grid_points = 0;
};

inline EnvelopeReport verify_envelope(const TailCurve& curve,
                                      const BoundCertificate& certificate) {
  TailCurve scored = curve;
  apply_bound(scored, certificate);
  if (scored.bound.size() != scored.x_grid.size() ||
      scored.ci_upper.size() != scored.x_grid.size())
    throw std::invalid_argument("verify_envelope: grid/bound size mismatch");
  EnvelopeReport report;
  report.grid_points = scored.x_grid.size();
  for (std::size_t i = 0; i < scored.x_grid.size(); ++i) {
    if (scored.ci_upper[i] > scored.bound[i]) {
      ++report.violations;
      report.violation_indices.push_back(i);
    }
    if (scored.bound[i] > 0.0)
      report.max_estimate_over_bound =
          std::max(report.max_estimate_over_bound, scored.estimates[i] / scored.bound[i]);
  }
  report.pass = report.violations == 0;
  return report;
}

// Monte Carlo mean and standard error of prod_j S_n(i_j) over fresh
// trajectories. Per-block partial sums are reduced in fixed block order, so
// the result is bit-identical for any worker count.
struct MomentEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t reps = 0;
};

inline MomentEstimate estimate_mixed_moment(const MixingProcess& process,
                                            const OrthonormalBasis& basis,
                                            const std::vector<std::uint32_t>& indices,
                                            std::size_t n, std::size_t reps,
                                            std::uint64_t master_seed, std::size_t workers = 0) {
  if (indices.empty()) throw std::invalid_argument("estimate_mixed_moment: empty index tuple");
  if (indices.size() % 2 != 0)
    throw std::invalid_argument("estimate_mixed_moment: index tuple length must be even");
  if (reps < 100) throw std::invalid_argument("estimate_mixed_moment: need reps >= 100");
  if (!same_measure(process.marginal(), basis.measure()))
    throw std::invalid_argument("estimate_mixed_moment: process/basis measure mismatch");

  std::vector<std::uint32_t> distinct = indices;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  constexpr std::size_t kBlock = 1024;
  const std::size_t blocks = (reps + kBlock - 1) / kBlock;
  std::vector<double> block_sum(blocks, 0.0), block_sumsq(blocks, 0.0);

  const std::string pid = process.id();
  const std::size_t w = detail::resolve_workers(workers);
  detail::parallel_replications(blocks, w, [&](std::size_t b, std::size_t) {
    const std::size_t lo = b * kBlock;
    const std::size_t hi = std::min(reps, lo + kBlock);
    CompensatedSum sum, sumsq;
    for (std::size_t r = lo; r < hi; ++r) {
      const std::uint64_t seed = tail_replication_seed(master_seed, pid, r);
      const std::vector<double> xs = process.simulate(seed, n);
      double prod = 1.0;
      if (distinct.size() == 1) {
        const double s = s_n(basis, distinct[0], xs);
        for (std::size_t j = 0; j < indices.size(); ++j) prod *= s;
      } else {
        std::map<std::uint32_t, double> sn;
        for (std::uint32_t i : distinct) sn.emplace(i, s_n(basis, i, xs));
        for (std::uint32_t i : indices) prod *= sn.at(i);
      }
      sum.add(prod);
      sumsq.add(prod * prod);
    }
    block_sum[b] = sum.value();
    block_sumsq[b] = sumsq.value();
  });

  CompensatedSum total, total_sq;
  for (std::size_t b = 0; b < blocks; ++b) {
    total.add(block_sum[b]);
    total_sq.add(block_sumsq[b]);
  }
  MomentEstimate out;
  out.reps = reps;
  const double dr = static_cast<double>(reps);
  out.estimate = total.value() / dr;
  const double var =
      std::max(0.0, (total_sq.value() - dr * out.estimate * out.estimate) / (dr - 1.0));
  out.std_error = std::sqrt(var / dr);
  return out;
}

}  // namespace ustat
