#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ustat/measure.hpp"
#include "ustat/rng.hpp"
#include "ustat/sample.hpp"
#include "ustat/tensor.hpp"

namespace ustat {

using TransitionMatrix = std::vector<std::vector<double>>;

// A uniform-mixing coefficient value together with whether it is the exact
// coefficient or only a valid upper bound.
struct PhiBound {
  double value = 0.0;
  bool exact = false;
};

// Stationary process abstraction: can simulate prefix-stable trajectories
// and report its uniform-mixing coefficients.
class ProcessModel {
 public:
  virtual ~ProcessModel() = default;
  virtual std::string id() const = 0;
  virtual const Measure& marginal() const = 0;
  // X_0..X_{n-1}; for fixed seed the length-n output is a prefix of the
  // length-n' output for every n' > n.
  virtual std::vector<double> simulate(std::uint64_t seed, std::size_t n) const = 0;
  // phi(k) for k >= 1.
  virtual PhiBound phi(std::size_t k) const = 0;
  // Smallest k0 such that phi(k) == 0 exactly for all k >= k0, if finite.
  virtual std::optional<std::size_t> phi_support_end() const { return std::nullopt; }
};

namespace detail {

inline std::size_t inverse_cdf(const std::vector<double>& probabilities, double u) {
  double cum = 0.0;
  for (std::size_t x = 0; x + 1 < probabilities.size(); ++x) {
    cum += probabilities[x];
    if (u < cum) return x;
  }
  return probabilities.size() - 1;
}

inline void validate_transition_matrix(const TransitionMatrix& p) {
  const std::size_t d = p.size();
  if (d < 2) throw std::invalid_argument("transition matrix: need at least 2 states");
  for (const auto& row : p) {
    if (row.size() != d) throw std::invalid_argument("transition matrix: not square");
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0.0)) throw std::invalid_argument("transition matrix: negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("transition matrix: row does not sum to 1");
  }
  // Primitivity (irreducible + aperiodic) via Wielandt's bound: the boolean
  // power B^t must become all-positive for some t <= (d-1)^2 + 1.
  std::vector<std::vector<bool>> b(d, std::vector<bool>(d, false));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) b[i][j] = p[i][j] > 0.0;
  auto all_positive = [&](const std::vector<std::vector<bool>>& m) {
    for (const auto& row : m)
      for (bool v : row)
        if (!v) return false;
    return true;
  };
  std::vector<std::vector<bool>> pow = b;
  const std::size_t limit = (d - 1) * (d - 1) + 1;
  for (std::size_t t = 1; t <= limit; ++t) {
    if (all_positive(pow)) return;
    std::vector<std::vector<bool>> next(d, std::vector<bool>(d, false));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        if (pow[i][k])
          for (std::size_t j = 0; j < d; ++j)
            if (b[k][j]) next[i][j] = true;
    pow = std::move(next);
  }
  throw std::invalid_argument("transition matrix: chain is not irreducible and aperiodic");
}

inline TransitionMatrix matmul(const TransitionMatrix& a, const TransitionMatrix& b) {
  const std::size_t d = a.size();
  TransitionMatrix c(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const double aik = a[i][k];
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) c[i][j] += aik * b[k][j];
    }
  return c;
}

inline TransitionMatrix matrix_power(const TransitionMatrix& p, std::size_t k) {
  const std::size_t d = p.size();
  TransitionMatrix result(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) result[i][i] = 1.0;
  TransitionMatrix base = p;
  while (k > 0) {
    if (k & 1u) result = matmul(result, base);
    base = matmul(base, base);
    k >>= 1u;
  }
  return result;
}

}  // namespace detail

// Unique stationary distribution of a validated primitive chain, via direct
// solve of pi P = pi, sum(pi) = 1.
inline std::vector<double> stationary_distribution(const TransitionMatrix& p) {
  detail::validate_transition_matrix(p);
  const std::size_t d = p.size();
  // Rows 0..d-2: (P^T - I) pi = 0; last row: sum pi = 1.
  std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
  for (std::size_t r = 0; r + 1 < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) a[r][c] = p[c][r] - (r == c ? 1.0 : 0.0);
    a[r][d] = 0.0;
  }
  for (std::size_t c = 0; c < d; ++c) a[d - 1][c] = 1.0;
  a[d - 1][d] = 1.0;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    if (std::abs(a[col][col]) < 1e-14)
      throw std::runtime_error("stationary_distribution: singular system");
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c <= d; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<double> pi(d);
  for (std::size_t i = 0; i < d; ++i) pi[i] = a[i][d] / a[i][i];
  for (double& v : pi) v = std::max(v, 0.0);
  double sum = 0.0;
  for (double v : pi) sum += v;
  for (double& v : pi) v /= sum;
  return pi;
}

// Exact uniform-mixing coefficient of a stationary primitive Markov chain:
// phi(k) = max_x TV(P^k(x,.), pi). Conditioning on any positive-probability
// past event yields a mixture over the state at the boundary, and total
// variation is convex in its first argument, so single-state conditioning
// attains the supremum; the Markov property collapses future cylinders to
// the k-step marginal.
inline double phi_markov_exact(const TransitionMatrix& p, std::size_t k) {
  if (k == 0) throw std::invalid_argument("phi_markov_exact: k must be >= 1");
  const std::vector<double> pi = stationary_distribution(p);
  const TransitionMatrix pk = detail::matrix_power(p, k);
  double worst = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    double tv = 0.0;
    for (std::size_t y = 0; y < p.size(); ++y) tv += std::abs(pk[x][y] - pi[y]);
    worst = std::max(worst, 0.5 * tv);
  }
  return worst;
}

// Brute-force oracle for phi(k) of a Markov chain over explicit cylinder
// events: past windows of length `past_len` ending at time 0, future windows
// of length `future_len` starting at lag k. When the atom counts allow it
// (<= 2^16 subsets) the supremum runs over all measurable unions on both
// sides; otherwise it runs over single past atoms and optimal future sets,
// which attain the supremum by convexity of total variation.
inline double phi_brute_force(const TransitionMatrix& p, std::size_t k,
                              std::size_t past_len = 2, std::size_t future_len = 2) {
  if (k == 0 || past_len == 0 || future_len == 0)
    throw std::invalid_argument("phi_brute_force: k, past_len, future_len must be >= 1");
  detail::validate_transition_matrix(p);
  const std::size_t d = p.size();
  const std::vector<double> pi = stationary_distribution(p);
  const TransitionMatrix pk = detail::matrix_power(p, k);

  auto atom_count = [&](std::size_t len) {
    std::size_t c = 1;
    for (std::size_t s = 0; s < len; ++s) {
      if (c > 100000 / d) throw std::invalid_argument("phi_brute_force: too many atoms");
      c *= d;
    }
    return c;
  };
  const std::size_t past_atoms = atom_count(past_len);
  const std::size_t future_atoms = atom_count(future_len);

  auto digits_of = [&](std::size_t flat, std::size_t len) {
    std::vector<std::size_t> w(len);
    for (std::size_t s = len; s-- > 0;) {
      w[s] = flat % d;
      flat /= d;
    }
    return w;
  };

  // Past atom probabilities and the state at the window's end.
  std::vector<double> past_prob(past_atoms);
  std::vector<std::size_t> past_end(past_atoms);
  for (std::size_t a = 0; a < past_atoms; ++a) {
    const auto w = digits_of(a, past_len);
    double prob = pi[w[0]];
    for (std::size_t s = 0; s + 1 < past_len; ++s) prob *= p[w[s]][w[s + 1]];
    past_prob[a] = prob;
    past_end[a] = w.back();
  }

  // Future atom probabilities: conditional on each end state, and stationary.
  std::vector<double> future_uncond(future_atoms);
  std::vector<std::vector<double>> future_cond(d, std::vector<double>(future_atoms));
  for (std::size_t b = 0; b < future_atoms; ++b) {
    const auto w = digits_of(b, future_len);
    double tail = 1.0;
    for (std::size_t s = 0; s + 1 < future_len; ++s) tail *= p[w[s]][w[s + 1]];
    future_uncond[b] = pi[w[0]] * tail;
    for (std::size_t x = 0; x < d; ++x) future_cond[x][b] = pk[x][w[0]] * tail;
  }

  const bool enumerate_past = past_atoms <= 16;
  const bool enumerate_future = future_atoms <= 16;

  auto future_sup = [&](const std::vector<double>& cond) {
    if (enumerate_future) {
      double best = 0.0;
      for (std::size_t mask = 1; mask < (std::size_t{1} << future_atoms); ++mask) {
        double pc = 0.0, pu = 0.0;
        for (std::size_t b = 0; b < future_atoms; ++b)
          if (mask & (std::size_t{1} << b)) {
            pc += cond[b];
            pu += future_uncond[b];
          }
        best = std::max(best, std::abs(pc - pu));
      }
      return best;
    }
    double tv = 0.0;
    for (std::size_t b = 0; b < future_atoms; ++b) tv += std::abs(cond[b] - future_uncond[b]);
    return 0.5 * tv;
  };

  double worst = 0.0;
  if (enumerate_past) {
    for (std::size_t mask = 1; mask < (std::size_t{1} << past_atoms); ++mask) {
      double prob = 0.0;
      std::vector<double> cond(future_atoms, 0.0);
      for (std::size_t a = 0; a < past_atoms; ++a)
        if (mask & (std::size_t{1} << a)) {
          prob += past_prob[a];
          for (std::size_t b = 0; b < future_atoms; ++b)
            cond[b] += past_prob[a] * future_cond[past_end[a]][b];
        }
      if (prob <= 0.0) continue;
      for (double& v : cond) v /= prob;
      worst = std::max(worst, future_sup(cond));
    }
  } else {
    for (std::size_t a = 0; a < past_atoms; ++a) {
      if (past_prob[a] <= 0.0) continue;
      worst = std::max(worst, future_sup(future_cond[past_end[a]]));
    }
  }
  return worst;
}

namespace detail {

class IidModel final : public ProcessModel {
 public:
  explicit IidModel(Measure marginal) : marginal_(std::move(marginal)) {
    std::ostringstream os;
    if (is_finite_alphabet(marginal_))
      os << "iid_finite_d" << alphabet_size(marginal_);
    else
      os << "iid_uniform01";
    id_ = os.str();
  }
  std::string id() const override { return id_; }
  const Measure& marginal() const override { return marginal_; }
  std::vector<double> simulate(std::uint64_t seed, std::size_t n) const override {
    std::vector<double> xs(n);
    if (is_finite_alphabet(marginal_)) {
      const auto& probs = std::get<FiniteAlphabet>(marginal_).probabilities;
      for (std::size_t j = 0; j < n; ++j)
        xs[j] = static_cast<double>(inverse_cdf(probs, counter_uniform(seed, j)));
    } else {
      for (std::size_t j = 0; j < n; ++j) xs[j] = counter_uniform(seed, j);
    }
    return xs;
  }
  PhiBound phi(std::size_t k) const override {
    if (k == 0) throw std::invalid_argument("phi: k must be >= 1");
    return {0.0, true};
  }
  std::optional<std::size_t> phi_support_end() const override { return 1; }

 private:
  Measure marginal_;
  std::string id_;
};

// X_j = frac(xi_j + ... + xi_{j+dep}) for iid uniform xi: uniform marginal,
// independent of everything at lags > dep.
class MDependentModel final : public ProcessModel {
 public:
  explicit MDependentModel(std::size_t dependence)
      : dependence_(dependence), marginal_(uniform_unit_measure()) {
    if (dependence_ == 0)
      throw std::invalid_argument("m_dependent_process: dependence must be >= 1");
    std::ostringstream os;
    os << "mdep_window" << dependence_;
    id_ = os.str();
  }
  std::string id() const override { return id_; }
  const Measure& marginal() const override { return marginal_; }
  std::vector<double> simulate(std::uint64_t seed, std::size_t n) const override {
    std::vector<double> xs(n);
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i <= dependence_; ++i) s += counter_uniform(seed, j + i);
      xs[j] = s - std::floor(s);
    }
    return xs;
  }
  PhiBound phi(std::size_t k) const override {
    if (k == 0) throw std::invalid_argument("phi: k must be >= 1");
    if (k > dependence_) return {0.0, true};
    return {1.0, false};
  }
  std::optional<std::size_t> phi_support_end() const override { return dependence_ + 1; }

 private:
  std::size_t dependence_;
  Measure marginal_;
  std::string id_;
};

class MarkovModel final : public ProcessModel {
 public:
  explicit MarkovModel(TransitionMatrix p) : p_(std::move(p)) {
    validate_transition_matrix(p_);
    pi_ = stationary_distribution(p_);
    marginal_ = finite_measure(pi_);
    std::ostringstream os;
    os << "markov_d" << p_.size();
    id_ = os.str();
  }
  std::string id() const override { return id_; }
  const Measure& marginal() const override { return marginal_; }
  std::vector<double> simulate(std::uint64_t seed, std::size_t n) const override {
    std::vector<double> xs(n);
    std::size_t state = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double u = counter_uniform(seed, j);
      state = j == 0 ? inverse_cdf(pi_, u) : inverse_cdf(p_[state], u);
      xs[j] = static_cast<double>(state);
    }
    return xs;
  }
  PhiBound phi(std::size_t k) const override {
    if (k == 0) throw std::invalid_argument("phi: k must be >= 1");
    return {phi_markov_exact(p_, k), true};
  }
  const TransitionMatrix& transition() const { return p_; }
  const std::vector<double>& stationary() const { return pi_; }

 private:
  TransitionMatrix p_;
  std::vector<double> pi_;
  Measure marginal_;
  std::string id_;
};

// Y_j = cum(X_j) + U_j * pi(X_j) for the chain X and iid uniform U: the
// marginal is exactly uniform on [0,1], and because (X_j, U_j) is recoverable
// from Y_j and the U's are independent of everything, the mixing coefficients
// equal the chain's own.
class EmbeddedMarkovModel final : public ProcessModel {
 public:
  explicit EmbeddedMarkovModel(TransitionMatrix p)
      : chain_(std::move(p)), marginal_(uniform_unit_measure()) {
    const auto& pi = chain_.stationary();
    cum_.assign(pi.size(), 0.0);
    double c = 0.0;
    for (std::size_t x = 0; x < pi.size(); ++x) {
      cum_[x] = c;
      c += pi[x];
    }
    std::ostringstream os;
    os << "embedded_markov_d" << pi.size();
    id_ = os.str();
  }
  std::string id() const override { return id_; }
  const Measure& marginal() const override { return marginal_; }
  std::vector<double> simulate(std::uint64_t seed, std::size_t n) const override {
    const std::uint64_t chain_seed = substream_seed(seed, 1);
    const std::uint64_t noise_seed = substream_seed(seed, 2);
    const std::vector<double> states = chain_.simulate(chain_seed, n);
    const auto& pi = chain_.stationary();
    std::vector<double> ys(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto x = static_cast<std::size_t>(states[j]);
      ys[j] = cum_[x] + counter_uniform(noise_seed, j) * pi[x];
    }
    return ys;
  }
  PhiBound phi(std::size_t k) const override { return chain_.phi(k); }
  const MarkovModel& chain() const { return chain_; }

 private:
  MarkovModel chain_;
  Measure marginal_;
  std::vector<double> cum_;
  std::string id_;
};

}  // namespace detail

// Value-semantics facade over a shared process model.
class MixingProcess {
 public:
  explicit MixingProcess(std::shared_ptr<const ProcessModel> model) : model_(std::move(model)) {
    if (!model_) throw std::invalid_argument("MixingProcess: null model");
  }
  std::string id() const { return model_->id(); }
  const Measure& marginal() const { return model_->marginal(); }
  std::vector<double> simulate(std::uint64_t seed, std::size_t n) const {
    return model_->simulate(seed, n);
  }
  Sample make_sample(std::uint64_t seed, std::size_t n) const {
    return Sample{model_->simulate(seed, n), model_->id(), seed};
  }
  PhiBound phi(std::size_t k) const { return model_->phi(k); }
  std::optional<std::size_t> phi_support_end() const { return model_->phi_support_end(); }
  const ProcessModel& model() const { return *model_; }

 private:
  std::shared_ptr<const ProcessModel> model_;
};

inline MixingProcess iid_process(Measure marginal = uniform_unit_measure()) {
  return MixingProcess(std::make_shared<detail::IidModel>(std::move(marginal)));
}

inline MixingProcess m_dependent_process(std::size_t dependence) {
  return MixingProcess(std::make_shared<detail::MDependentModel>(dependence));
}

inline MixingProcess markov_process(TransitionMatrix transition) {
  return MixingProcess(std::make_shared<detail::MarkovModel>(std::move(transition)));
}

inline MixingProcess embedded_markov_process(TransitionMatrix transition) {
  return MixingProcess(std::make_shared<detail::EmbeddedMarkovModel>(std::move(transition)));
}

// Certified aggregates of the mixing sequence: sum phi(k) and sum sqrt(phi(k))
// over k >= 1. Terms are summed explicitly until they fall below `cutoff`;
// any remainder is covered by a geometric majorant fitted to the observed
// decay and folded into the totals.
struct PhiAggregates {
  double phi_sum = 0.0;
  double sqrt_phi_sum = 0.0;
  std::size_t explicit_terms = 0;
  bool truncated = false;
  bool certified = true;  // false only if the tail could not be majorized
  bool all_exact = true;
  double tail_phi_bound = 0.0;
  double tail_sqrt_phi_bound = 0.0;
};

inline PhiAggregates phi_aggregates(const MixingProcess& process, double cutoff = 1e-15,
                                    std::size_t max_terms = 4096) {
  PhiAggregates agg;
  double prev = 0.0;
  double ratio_max = 0.0;
  std::size_t ratio_terms = 0;
  const auto support_end = process.phi_support_end();
  for (std::size_t k = 1; k <= max_terms; ++k) {
    if (support_end && k >= *support_end) {
      agg.explicit_terms = k - 1;
      return agg;  // exact zero tail
    }
    const PhiBound b = process.phi(k);
    agg.phi_sum += b.value;
    agg.sqrt_phi_sum += std::sqrt(b.value);
    agg.all_exact = agg.all_exact && b.exact;
    agg.explicit_terms = k;
    if (k > 1 && prev > 0.0 && b.value > 0.0) {
      ratio_max = std::max(ratio_max, b.value / prev);
      ++ratio_terms;
    }
    if (b.value < cutoff && k > 1) {
      // Majorize the tail geometrically with the worst observed ratio.
      agg.truncated = true;
      if (ratio_terms >= 2 && ratio_max < 1.0 && b.value > 0.0) {
        const double r = ratio_max;
        agg.tail_phi_bound = b.value * r / (1.0 - r);
        const double sr = std::sqrt(r);
        agg.tail_sqrt_phi_bound = std::sqrt(b.value) * sr / (1.0 - sr);
        agg.phi_sum += agg.tail_phi_bound;
        agg.sqrt_phi_sum += agg.tail_sqrt_phi_bound;
      } else if (b.value == 0.0) {
        agg.certified = false;  // a zero without declared support end: cannot
                                // certify later terms stay zero
      } else {
        agg.certified = false;
      }
      return agg;
    }
    prev = b.value;
  }
  agg.truncated = true;
  agg.certified = false;
  return agg;
}

// Certified upper bound on sum_{k>=1} phi(k)^{1/2} k^power for an integer
// power >= 0. Explicit terms are summed until phi itself falls below
// `phi_cutoff` (kept above the rounding floor of matrix-power TV values);
// the remainder uses a geometric majorant on sqrt(phi) fitted over the
// trailing window, combined with (k+i)^p <= k^p e^{pi/k} to absorb the
// polynomial weight.
struct WeightedPhiSum {
  double value = 0.0;
  std::size_t explicit_terms = 0;
  bool certified = true;
};

inline WeightedPhiSum weighted_sqrt_phi_sum(const MixingProcess& process, std::size_t power,
                                            double phi_cutoff = 1e-13,
                                            std::size_t max_terms = 4096) {
  WeightedPhiSum out;
  const auto support_end = process.phi_support_end();
  constexpr std::size_t kWindow = 8;
  double sqrt_window[kWindow] = {0.0};
  for (std::size_t k = 1; k <= max_terms; ++k) {
    if (support_end && k >= *support_end) {
      out.explicit_terms = k - 1;
      return out;  // exact zero tail
    }
    const double phi = process.phi(k).value;
    const double sq = std::sqrt(phi);
    const double dk = static_cast<double>(k);
    const double term = sq * std::pow(dk, static_cast<double>(power));
    out.value += term;
    out.explicit_terms = k;
    sqrt_window[(k - 1) % kWindow] = sq;
    if (phi < phi_cutoff && k > kWindow) {
      double ratio_max = 0.0;
      std::size_t ratios = 0;
      for (std::size_t j = k - kWindow + 1; j < k; ++j) {
        const double a = sqrt_window[(j - 1) % kWindow];
        const double b = sqrt_window[j % kWindow];
        if (a > 0.0 && b > 0.0) {
          ratio_max = std::max(ratio_max, b / a);
          ++ratios;
        }
      }
      const double s = ratio_max * std::exp(static_cast<double>(power) / dk);
      if (ratios >= 3 && s < 1.0 && term > 0.0) {
        out.value += term * s / (1.0 - s);
      } else {
        out.certified = false;
      }
      return out;
    }
  }
  out.certified = false;
  return out;
}

// Gaussian-decay envelope phi(k) <= c0 exp(-c1 k^2) fitted over an explicit
// horizon. certified_all_k is true only when the process's coefficients are
// exactly zero beyond the horizon.
struct GaussianEnvelope {
  double c0 = 0.0;
  double c1 = 0.0;
  std::size_t horizon = 0;
  bool certified_all_k = false;
};

inline GaussianEnvelope gaussian_envelope_for(const MixingProcess& process, double c1 = 1.0,
                                              double cutoff = 1e-15,
                                              std::size_t max_terms = 4096) {
  if (!(c1 > 0.0)) throw std::invalid_argument("gaussian_envelope_for: c1 must be positive");
  GaussianEnvelope env;
  env.c1 = c1;
  const auto support_end = process.phi_support_end();
  for (std::size_t k = 1; k <= max_terms; ++k) {
    if (support_end && k >= *support_end) {
      env.horizon = k - 1;
      env.certified_all_k = true;
      env.c0 = std::max(env.c0, 0.0);
      return env;
    }
    const double v = process.phi(k).value;
    env.c0 = std::max(env.c0, v * std::exp(c1 * static_cast<double>(k) * static_cast<double>(k)));
    env.horizon = k;
    if (v < cutoff) return env;  // beyond here phi is numerically negligible
  }
  return env;
}

// Result of checking one summability/decay condition, with an explicit
// counterexample when it fails.
struct ConditionReport {
  std::string condition;
  bool holds = false;
  double coefficient_norm = 0.0;  // sum |f| or sum |f|^{1-eps}
  double phi_sum = 0.0;
  std::string detail;
};

// Checks: finite coefficient mass, and phi(k) <= c0 exp(-c1 k^2) for every k
// (verified explicitly until both sides drop below 1e-15).
inline ConditionReport check_condition_a(const CoefficientTensor& tensor,
                                         const MixingProcess& process, double c0, double c1,
                                         std::size_t max_terms = 4096) {
  ConditionReport report;
  report.condition = "A";
  report.coefficient_norm = tensor.norm_sum(1.0);
  const PhiAggregates agg = phi_aggregates(process);
  report.phi_sum = agg.phi_sum;
  if (!std::isfinite(report.coefficient_norm)) {
    report.detail = "coefficient mass is not finite";
    return report;
  }
  const auto support_end = process.phi_support_end();
  for (std::size_t k = 1; k <= max_terms; ++k) {
    const double envelope = c0 * std::exp(-c1 * static_cast<double>(k) * static_cast<double>(k));
    if (support_end && k >= *support_end) break;  // exact zeros from here on
    const double value = process.phi(k).value;
    // Relative slack absorbs round-off when the envelope is met with equality.
    if (value > envelope * (1.0 + 1e-12) + 1e-300) {
      std::ostringstream os;
      os << "phi(" << k << ") = " << value << " exceeds envelope " << envelope;
      report.detail = os.str();
      return report;
    }
    if (value < 1e-15 && envelope < 1e-15) break;
  }
  report.holds = true;
  return report;
}

// Checks: finite sum |f|^{1-eps} and summable mixing coefficients.
inline ConditionReport check_condition_b(const CoefficientTensor& tensor,
                                         const MixingProcess& process, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("check_condition_b: epsilon must lie in (0,1)");
  ConditionReport report;
  report.condition = "B";
  report.coefficient_norm = tensor.norm_sum(1.0 - epsilon);
  const PhiAggregates agg = phi_aggregates(process);
  report.phi_sum = agg.phi_sum;
  if (!std::isfinite(report.coefficient_norm)) {
    report.detail = "fractional coefficient mass is not finite";
    return report;
  }
  if (!agg.certified) {
    report.detail = "mixing coefficient sum could not be certified finite";
    return report;
  }
  report.holds = true;
  return report;
}

// Absolute continuity of the marginal with respect to Lebesgue measure.
inline ConditionReport check_condition_ac(const MixingProcess& process) {
  ConditionReport report;
  report.condition = "AC";
  if (is_finite_alphabet(process.marginal())) {
    report.detail = "marginal is purely atomic";
    report.holds = false;
  } else {
    report.holds = true;
  }
  return report;
}

}  // namespace ustat
