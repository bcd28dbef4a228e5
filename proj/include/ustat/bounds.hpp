#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "ustat/process.hpp"
#include "ustat/tensor.hpp"

namespace ustat {

// One line of the constant ledger carried by every certificate: which
// constant, its value, and the formula it came from.
struct TraceEntry {
  std::string name;
  double value = 0.0;
  std::string source;
};

// Everything the bound evaluators need to know about a mixing sequence:
// certified aggregate sums, explicit leading values, and (optionally) a
// Gaussian-decay envelope phi(k) <= c0 exp(-c1 k^2).
struct PhiProfile {
  std::vector<double> values;  // phi(k) for k = 1..values.size() (upper bounds)
  double phi_sum = 0.0;        // certified upper bound on sum_{k>=1} phi(k)
  double sqrt_phi_sum = 0.0;   // certified upper bound on sum_{k>=1} phi(k)^{1/2}
  bool certified = false;
  bool all_exact = false;
  bool has_envelope = false;
  double c0 = 0.0;
  double c1 = 0.0;
  bool envelope_all_k = false;
  std::size_t envelope_horizon = 0;
  std::string process_id;

  // 1 + sum phi(k): the effective aggregate used where a phi(0) = 1 term is
  // prepended so that independent data keep a positive denominator.
  double phi_effective() const { return 1.0 + phi_sum; }
};

inline PhiProfile phi_profile(const MixingProcess& process, std::size_t horizon = 64,
                              double envelope_c1 = 1.0) {
  PhiProfile profile;
  profile.process_id = process.id();
  const auto support_end = process.phi_support_end();
  profile.values.reserve(horizon);
  for (std::size_t k = 1; k <= horizon; ++k) {
    if (support_end && k >= *support_end)
      profile.values.push_back(0.0);
    else
      profile.values.push_back(process.phi(k).value);
  }
  const PhiAggregates agg = phi_aggregates(process);
  profile.phi_sum = agg.phi_sum;
  profile.sqrt_phi_sum = agg.sqrt_phi_sum;
  profile.certified = agg.certified;
  profile.all_exact = agg.all_exact;
  const GaussianEnvelope env = gaussian_envelope_for(process, envelope_c1);
  profile.has_envelope = true;
  profile.c0 = env.c0;
  profile.c1 = env.c1;
  profile.envelope_all_k = env.certified_all_k;
  profile.envelope_horizon = env.horizon;
  return profile;
}

namespace detail {

// sup_{t>0} Gamma(t)/t^{t-4}, located numerically: coarse scan of the
// log-ratio on a log-spaced grid, then ternary refinement. The ratio tends
// to 0 at both ends, so the interior maximum is global.
inline double gamma_ratio_constant() {
  static const double value = [] {
    auto log_ratio = [](double t) { return std::lgamma(t) - (t - 4.0) * std::log(t); };
    double best_t = 1.0;
    double best = log_ratio(1.0);
    const int grid = 4000;
    for (int i = 0; i <= grid; ++i) {
      const double t = std::exp(std::log(1e-3) +
                                (std::log(50.0) - std::log(1e-3)) * i / static_cast<double>(grid));
      const double v = log_ratio(t);
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
    double lo = best_t * 0.9, hi = best_t * 1.1;
    for (int iter = 0; iter < 200; ++iter) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (log_ratio(m1) < log_ratio(m2))
        lo = m1;
      else
        hi = m2;
    }
    return std::exp(log_ratio(0.5 * (lo + hi)));
  }();
  return value;
}

}  // namespace detail

// Constants of the even-moment product bound |E S_n(i_1)...S_n(i_{2mN})| <=
// (cTilde C^2 mN)^{mN}, assembled from the mixing profile. The envelope term
// is maximized over every block count d <= 2mN that the moment argument can
// invoke, so `two_m_n` must be at least the largest 2mN used downstream.
struct Lemma1Constants {
  double c2 = 1.0;
  double c3 = 0.0;
  double c_tilde = 8.0;
  std::size_t envelope_depth = 0;  // largest d covered
  std::vector<TraceEntry> trace;
};

inline Lemma1Constants lemma1_constants(const PhiProfile& profile, std::size_t two_m_n) {
  if (!profile.certified)
    throw std::invalid_argument("lemma1_constants: mixing aggregates not certified finite");
  if (two_m_n < 2) two_m_n = 2;
  Lemma1Constants out;
  out.c3 = detail::gamma_ratio_constant();
  out.envelope_depth = two_m_n;
  const double sqrt_term = 4.0 * profile.sqrt_phi_sum;
  double envelope_term = 0.0;
  if (profile.has_envelope && profile.c0 > 0.0) {
    // c0 c3 / c1^{(d-1)/2} is monotone in d, so the max over d in [2, 2mN]
    // sits at an endpoint.
    const double at_low = profile.c0 * out.c3 * std::pow(profile.c1, -0.5);
    const double at_high = profile.c0 * out.c3 *
                           std::pow(profile.c1, -(static_cast<double>(two_m_n) - 1.0) / 2.0);
    envelope_term = std::max(at_low, at_high);
  }
  out.c2 = std::max({1.0, sqrt_term, envelope_term});
  out.c_tilde = 8.0 * out.c2;
  out.trace.push_back({"c3", out.c3, "numeric sup of Gamma(t)/t^(t-4) over t>0"});
  out.trace.push_back({"sum_sqrt_phi", profile.sqrt_phi_sum,
                       "certified truncated sum of phi(k)^(1/2), k>=1"});
  out.trace.push_back({"c2_sqrt_term", sqrt_term, "4 * sum_sqrt_phi"});
  if (profile.has_envelope)
    out.trace.push_back({"c2_envelope_term", envelope_term,
                         "max over d<=2mN of c0*c3/c1^((d-1)/2) with c0=" +
                             std::to_string(profile.c0) + ", c1=" + std::to_string(profile.c1)});
  out.trace.push_back({"c2", out.c2, "max(1, 4*sum_sqrt_phi, envelope term)"});
  out.trace.push_back({"c_tilde", out.c_tilde, "8*c2 from the moment aggregation step"});
  return out;
}

// Same constants assembled directly from the certified weighted sums
// sum_k phi(k)^{1/2} k^{d-2}, one per short-block count d in [2, 2mN]. The
// Gaussian-envelope route upper-bounds exactly these sums, so this variant
// is valid whenever they are finite — including geometrically mixing chains,
// which admit no global Gaussian envelope.
inline Lemma1Constants lemma1_constants_direct(const MixingProcess& process,
                                               std::size_t two_m_n) {
  if (two_m_n < 2) two_m_n = 2;
  Lemma1Constants out;
  out.c3 = detail::gamma_ratio_constant();
  out.envelope_depth = two_m_n;
  const WeightedPhiSum base = weighted_sqrt_phi_sum(process, 0);
  if (!base.certified)
    throw std::invalid_argument("lemma1_constants_direct: sum of phi^(1/2) not certified");
  const double sqrt_term = 4.0 * base.value;
  double direct_term = 0.0;
  std::size_t arg_d = 0;
  for (std::size_t d = 2; d <= two_m_n; ++d) {
    const WeightedPhiSum s = weighted_sqrt_phi_sum(process, d - 2);
    if (!s.certified)
      throw std::invalid_argument(
          "lemma1_constants_direct: weighted phi sum not certified at depth " +
          std::to_string(d));
    const double dd = static_cast<double>(d);
    // Need 2 sum_k phi^(1/2)(k) k^(d-2) <= term * d^(d/2-4) at every depth.
    const double term = 2.0 * s.value * std::pow(dd, 4.0 - dd / 2.0);
    if (term > direct_term) {
      direct_term = term;
      arg_d = d;
    }
  }
  out.c2 = std::max({1.0, sqrt_term, direct_term});
  out.c_tilde = 8.0 * out.c2;
  out.trace.push_back({"c3", out.c3, "numeric sup of Gamma(t)/t^(t-4) over t>0"});
  out.trace.push_back({"sum_sqrt_phi", base.value,
                       "certified truncated sum of phi(k)^(1/2), k>=1"});
  out.trace.push_back({"c2_sqrt_term", sqrt_term, "4 * sum_sqrt_phi"});
  out.trace.push_back({"c2_direct_term", direct_term,
                       "max over d<=2mN of 2*sum_k phi^(1/2)(k)k^(d-2)*d^(4-d/2), worst d=" +
                           std::to_string(arg_d)});
  out.trace.push_back({"c2", out.c2, "max(1, 4*sum_sqrt_phi, direct weighted-sum term)"});
  out.trace.push_back({"c_tilde", out.c_tilde, "8*c2 from the moment aggregation step"});
  return out;
}

enum class Condition { A, B };

// Scale constant in the exponential tail bound:
// condition A: (C^m sum|f|)^{2/m}; condition B: C^2 (sum|f|^{1-eps})^{2/(m(1-eps))}.
inline double b_of_f(const CoefficientTensor& tensor, double basis_bound, Condition condition,
                     std::optional<double> epsilon = std::nullopt) {
  if (tensor.empty()) throw std::invalid_argument("b_of_f: empty tensor gives a degenerate bound");
  if (!(basis_bound > 0.0)) throw std::invalid_argument("b_of_f: basis bound must be positive");
  const double m = static_cast<double>(tensor.order());
  if (condition == Condition::A) {
    const double l1 = tensor.norm_sum(1.0);
    return std::pow(std::pow(basis_bound, m) * l1, 2.0 / m);
  }
  if (!epsilon || !(*epsilon > 0.0) || !(*epsilon < 1.0))
    throw std::invalid_argument("b_of_f: condition B requires epsilon in (0,1)");
  const double frac = tensor.norm_sum(1.0 - *epsilon);
  return basis_bound * basis_bound * std::pow(frac, 2.0 / (m * (1.0 - *epsilon)));
}

// min(1, exp(-x^{2/m} / (e cTilde Bf))): the analytic envelope with the
// proof's extra factor e retained (conservative).
inline double tail_bound_a(double x, std::size_t m, double b_f, double c_tilde) {
  if (x < 0.0) throw std::invalid_argument("tail_bound_a: x must be >= 0");
  if (!(b_f > 0.0) || !(c_tilde > 0.0))
    throw std::invalid_argument("tail_bound_a: constants must be positive");
  if (x == 0.0) return 1.0;
  const double expo = std::pow(x, 2.0 / static_cast<double>(m)) /
                      (std::exp(1.0) * c_tilde * b_f);
  return std::min(1.0, std::exp(-expo));
}

// Strictly rigorous variant: direct minimum over integer moment order N of
// (sum|f| C^m)^{2N} (cTilde(N) m N)^{mN} / x^{2N}, where cTilde(N) is
// recomputed so its envelope covers every block count d <= 2mN.
struct RigorousBoundResult {
  double bound = 1.0;
  std::size_t best_n = 0;     // 0 means no N improved on the trivial cap
  double c_tilde_at_best = 0.0;
};

inline RigorousBoundResult tail_bound_a_rigorous(double x, std::size_t m, double l1_norm,
                                                 double basis_bound, const PhiProfile& profile,
                                                 std::size_t max_n = 1000000) {
  if (x < 0.0) throw std::invalid_argument("tail_bound_a_rigorous: x must be >= 0");
  RigorousBoundResult out;
  if (x == 0.0) return out;
  const double dm = static_cast<double>(m);
  const double c3 = detail::gamma_ratio_constant();
  const double sqrt_term = 4.0 * profile.sqrt_phi_sum;
  const double log_a = std::log(l1_norm) + dm * std::log(basis_bound) - std::log(x);
  double best_log = 0.0;  // log of the trivial bound 1
  double prev_log = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= max_n; ++n) {
    double envelope_term = 0.0;
    if (profile.has_envelope && profile.c0 > 0.0) {
      const double two_m_n = 2.0 * dm * static_cast<double>(n);
      const double at_low = profile.c0 * c3 * std::pow(profile.c1, -0.5);
      const double at_high = profile.c0 * c3 * std::pow(profile.c1, -(two_m_n - 1.0) / 2.0);
      envelope_term = std::max(at_low, at_high);
    }
    const double c_tilde = 8.0 * std::max({1.0, sqrt_term, envelope_term});
    const double dn = static_cast<double>(n);
    const double log_term =
        2.0 * dn * log_a + dm * dn * std::log(c_tilde * dm * dn);
    if (log_term < best_log) {
      best_log = log_term;
      out.best_n = n;
      out.c_tilde_at_best = c_tilde;
    }
    // The log-term is eventually increasing in N; once it rises well past
    // the incumbent there is nothing better ahead.
    if (log_term > prev_log && log_term > best_log + 50.0) break;
    prev_log = log_term;
  }
  out.bound = std::min(1.0, std::exp(best_log));
  return out;
}

// Exponent scale and rate of the condition-(B) series bound.
struct KGamma {
  double k = 0.0;
  double gamma = 0.0;
};

inline KGamma k_of_x(double x, std::size_t m, double epsilon, double c_norm, double basis_bound,
                     double phi_sum) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("k_of_x: epsilon must lie in (0,1)");
  const double dm = static_cast<double>(m);
  KGamma out;
  out.gamma = 2.0 * epsilon / (dm * (1.0 - epsilon));
  const double denom = 16.0 * std::exp(1.0) * basis_bound * basis_bound * phi_sum *
                       std::pow(c_norm, 2.0 / (dm * (1.0 - epsilon)));
  out.k = x <= 0.0 ? 0.0 : std::pow(x, 2.0 / dm) / denom;
  return out;
}

// min(1, m e^{1/e} sum_{i>=1} exp(-K i^gamma)), summed until the integral
// remainder (an upper incomplete gamma value) is below 1e-15 of the partial
// sum, so the reported value is a certified upper bound.
inline double tail_bound_b(double x, std::size_t m, double epsilon, double c_norm,
                           double basis_bound, double phi_sum) {
  const KGamma kg = k_of_x(x, m, epsilon, c_norm, basis_bound, phi_sum);
  if (kg.k <= 0.0) return 1.0;
  const double prefactor = static_cast<double>(m) * std::exp(1.0 / std::exp(1.0));
  double partial = 0.0;
  for (std::size_t i = 1; i <= 100000000; ++i) {
    const double di = static_cast<double>(i);
    partial += std::exp(-kg.k * std::pow(di, kg.gamma));
    if (prefactor * partial >= 1.0) return 1.0;
    // exp(-K t^gamma) is decreasing, so sum_{j>i} <= int_i^inf, which
    // substitutes into an upper incomplete gamma function.
    const double a = 1.0 / kg.gamma;
    const double z = kg.k * std::pow(di, kg.gamma);
    const double remainder =
        std::pow(kg.k, -a) / kg.gamma * boost::math::tgamma(a, z);
    if (remainder <= 1e-15 * partial)
      return std::min(1.0, prefactor * (partial + remainder));
  }
  return 1.0;
}

// Closed-form majorant m e^{1/e} (l+2) e^{-K} with l = ceil(1/gamma), valid
// in the regime gamma*K >= 1; outside it the trivial cap is returned.
inline double tail_bound_b_majorant(double x, std::size_t m, double epsilon, double c_norm,
                                    double basis_bound, double phi_sum) {
  const KGamma kg = k_of_x(x, m, epsilon, c_norm, basis_bound, phi_sum);
  if (kg.k <= 0.0 || kg.gamma * kg.k < 1.0) return 1.0;
  const double l = std::ceil(1.0 / kg.gamma);
  const double prefactor = static_cast<double>(m) * std::exp(1.0 / std::exp(1.0));
  return std::min(1.0, prefactor * (l + 2.0) * std::exp(-kg.k));
}

// Smallest x with x^{2/m} >= (1/eps) 8 m (1-eps) e C^2 phi c^{2/(m(1-eps))}.
inline double remark2_threshold(std::size_t m, double epsilon, double c_norm, double basis_bound,
                                double phi_sum) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("remark2_threshold: epsilon must lie in (0,1)");
  const double dm = static_cast<double>(m);
  const double rhs = (1.0 / epsilon) * 8.0 * dm * (1.0 - epsilon) * std::exp(1.0) *
                     basis_bound * basis_bound * phi_sum *
                     std::pow(c_norm, 2.0 / (dm * (1.0 - epsilon)));
  return std::pow(rhs, dm / 2.0);
}

// Weighted mixing mass n*phi(0) + sum_{k=1}^{n-1} (n-k) phi(k) with the
// phi(0) := 1 convention that keeps the denominator positive for iid data.
inline double dedecker_weighted_phi_mass(std::size_t n, const std::vector<double>& phi_values) {
  if (n < 2) throw std::invalid_argument("dedecker bound: need n >= 2");
  double dn = static_cast<double>(n);
  double mass = dn;
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    const double phi_k = k <= phi_values.size() ? phi_values[k - 1] : 0.0;
    mass += (dn - static_cast<double>(k)) * phi_k;
  }
  return mass;
}

// min(1, e^{1/e} exp(-t^2 / (16 C^2 e D_n))) for the centered raw sum
// sum_i Y_i - n E Y_1 with |Y_i| <= C.
inline double dedecker_bound(double t, std::size_t n, double basis_bound,
                             const std::vector<double>& phi_values) {
  if (!(t > 0.0)) throw std::invalid_argument("dedecker_bound: t must be positive");
  const double mass = dedecker_weighted_phi_mass(n, phi_values);
  const double expo =
      t * t / (16.0 * basis_bound * basis_bound * std::exp(1.0) * mass);
  return std::min(1.0, std::exp(1.0 / std::exp(1.0)) * std::exp(-expo));
}

inline double dedecker_bound(double t, std::size_t n, double basis_bound,
                             const MixingProcess& process) {
  std::vector<double> phis;
  phis.reserve(n > 0 ? n - 1 : 0);
  const auto support_end = process.phi_support_end();
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    if (support_end && k >= *support_end)
      phis.push_back(0.0);
    else
      phis.push_back(process.phi(k).value);
  }
  return dedecker_bound(t, n, basis_bound, phis);
}

// exp(-2 floor(n/m) t^2 / (b-a)^2): the classical one-sided bound for a
// U-statistic of a kernel with values in [a, b], independent data.
inline double hoeffding_1963_bound(double t, std::size_t n, std::size_t m, double a, double b) {
  if (!(b > a)) throw std::invalid_argument("hoeffding_1963_bound: need b > a");
  if (m == 0 || n < m) throw std::invalid_argument("hoeffding_1963_bound: need n >= m >= 1");
  if (t < 0.0) throw std::invalid_argument("hoeffding_1963_bound: t must be >= 0");
  const double k = static_cast<double>(n / m);
  return std::exp(-2.0 * k * t * t / ((b - a) * (b - a)));
}

// (cTilde C^2 m N)^{mN}: the even-moment product bound itself.
inline double lemma1_moment_bound(std::size_t m, std::size_t n_moment, double basis_bound,
                                  double c_tilde) {
  if (n_moment == 0) throw std::invalid_argument("lemma1_moment_bound: N must be >= 1");
  const double mn = static_cast<double>(m) * static_cast<double>(n_moment);
  return std::exp(mn * std::log(c_tilde * basis_bound * basis_bound * mn));
}

// A fully-evaluated tail envelope: which bound, with which constants, plus
// the ledger of how every constant was produced. bound_at(x) expects x on
// the same scale as the statistic being verified (n^{-m/2}-normalized sums
// for A/B, S_n units for the dedecker kind, U - EU for hoeffding1963).
struct BoundCertificate {
  enum class Kind { ConditionA, ConditionB, Dedecker, Hoeffding1963 };

  Kind kind = Kind::ConditionA;
  std::size_t m = 1;
  double basis_bound = 0.0;
  double b_f = 0.0;            // A and B
  double c1_constant = 1.0;    // multiplicative cap C1
  double c_tilde = 0.0;        // A only
  double epsilon = 0.0;        // B only
  double c_norm = 0.0;         // B: sum |f|^{1-eps}; A: sum |f|
  double phi_sum_effective = 0.0;  // 1 + sum phi(k)
  double x0 = 0.0;             // validity threshold (B), 0 when not applicable
  std::size_t n = 0;           // dedecker / hoeffding
  double range_a = 0.0, range_b = 0.0;  // hoeffding kernel range
  std::vector<double> phi_values;       // dedecker weights
  std::vector<TraceEntry> trace;

  double bound_at(double x) const {
    switch (kind) {
      case Kind::ConditionA:
        return tail_bound_a(x, m, b_f, c_tilde);
      case Kind::ConditionB:
        return tail_bound_b(x, m, epsilon, c_norm, basis_bound, phi_sum_effective);
      case Kind::Dedecker:
        return dedecker_bound(x * std::sqrt(static_cast<double>(n)), n, basis_bound,
                              phi_values);
      case Kind::Hoeffding1963:
        return hoeffding_1963_bound(x, n, m, range_a, range_b);
    }
    return 1.0;
  }

  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::ConditionA: return "condition_a";
      case Kind::ConditionB: return "condition_b";
      case Kind::Dedecker: return "dedecker";
      case Kind::Hoeffding1963: return "hoeffding_1963";
    }
    return "unknown";
  }
};

// Builds the condition-(A) certificate from the coefficient tensor, the
// basis bound, and the process's mixing profile.
inline BoundCertificate certificate_condition_a(const CoefficientTensor& tensor,
                                                double basis_bound, const PhiProfile& profile,
                                                std::size_t moment_depth = 64) {
  BoundCertificate cert;
  cert.kind = BoundCertificate::Kind::ConditionA;
  cert.m = tensor.order();
  cert.basis_bound = basis_bound;
  cert.c_norm = tensor.norm_sum(1.0);
  cert.b_f = b_of_f(tensor, basis_bound, Condition::A);
  cert.phi_sum_effective = profile.phi_effective();
  const Lemma1Constants lem = lemma1_constants(profile, 2 * tensor.order() * moment_depth);
  cert.c_tilde = lem.c_tilde;
  cert.c1_constant = 1.0;
  cert.trace = lem.trace;
  cert.trace.push_back({"sum_abs_f", cert.c_norm, "l1 mass of the coefficient tensor"});
  cert.trace.push_back({"B_f", cert.b_f, "(C^m * sum|f|)^(2/m)"});
  cert.trace.push_back({"C1", 1.0, "cap constant, set to 1 under condition A"});
  cert.trace.push_back({"exponent_scale", std::exp(1.0) * cert.c_tilde * cert.b_f,
                        "e * c_tilde * B_f (factor e retained from the optimization step)"});
  return cert;
}

inline BoundCertificate certificate_condition_b(const CoefficientTensor& tensor,
                                                double basis_bound, const PhiProfile& profile,
                                                double epsilon) {
  BoundCertificate cert;
  cert.kind = BoundCertificate::Kind::ConditionB;
  cert.m = tensor.order();
  cert.basis_bound = basis_bound;
  cert.epsilon = epsilon;
  cert.c_norm = tensor.norm_sum(1.0 - epsilon);
  cert.b_f = b_of_f(tensor, basis_bound, Condition::B, epsilon);
  cert.phi_sum_effective = profile.phi_effective();
  cert.x0 = remark2_threshold(tensor.order(), epsilon, cert.c_norm, basis_bound,
                              cert.phi_sum_effective);
  const KGamma kg = k_of_x(1.0, tensor.order(), epsilon, cert.c_norm, basis_bound,
                           cert.phi_sum_effective);
  const double l = std::ceil(1.0 / kg.gamma);
  cert.c1_constant =
      static_cast<double>(tensor.order()) * std::exp(1.0 / std::exp(1.0)) * (l + 2.0);
  cert.trace.push_back({"epsilon", epsilon, "condition B exponent parameter"});
  cert.trace.push_back({"c_norm", cert.c_norm, "sum |f|^(1-eps)"});
  cert.trace.push_back({"B_f", cert.b_f, "C^2 * c_norm^(2/(m(1-eps)))"});
  cert.trace.push_back({"phi_effective", cert.phi_sum_effective,
                        "1 + sum phi(k): phi(0)=1 convention"});
  cert.trace.push_back({"gamma", kg.gamma, "2 eps / (m (1-eps))"});
  cert.trace.push_back({"x0", cert.x0,
                        "validity threshold: [8 m (1-eps) e C^2 phi c^(2/(m(1-eps))) / eps]^(m/2)"});
  cert.trace.push_back({"C1", cert.c1_constant,
                        "m e^(1/e) (ceil(1/gamma)+2): reconstructed series prefactor, valid "
                        "above x0"});
  return cert;
}

inline BoundCertificate certificate_dedecker(std::size_t n, double basis_bound,
                                             const MixingProcess& process) {
  BoundCertificate cert;
  cert.kind = BoundCertificate::Kind::Dedecker;
  cert.m = 1;
  cert.n = n;
  cert.basis_bound = basis_bound;
  const auto support_end = process.phi_support_end();
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    if (support_end && k >= *support_end)
      cert.phi_values.push_back(0.0);
    else
      cert.phi_values.push_back(process.phi(k).value);
  }
  double phi_sum = 0.0;
  for (double v : cert.phi_values) phi_sum += v;
  cert.phi_sum_effective = 1.0 + phi_sum;
  const double mass = dedecker_weighted_phi_mass(n, cert.phi_values);
  cert.trace.push_back({"phi_mass_weighted", mass,
                        "n*phi(0) + sum_{k=1}^{n-1} (n-k) phi(k), phi(0)=1 convention"});
  cert.trace.push_back({"C", basis_bound, "sup-norm bound of the summand"});
  cert.trace.push_back({"prefactor", std::exp(1.0 / std::exp(1.0)), "e^(1/e)"});
  return cert;
}

inline BoundCertificate certificate_hoeffding(std::size_t n, std::size_t m, double a, double b) {
  BoundCertificate cert;
  cert.kind = BoundCertificate::Kind::Hoeffding1963;
  cert.m = m;
  cert.n = n;
  cert.range_a = a;
  cert.range_b = b;
  cert.c1_constant = 1.0;
  cert.trace.push_back({"group_count", static_cast<double>(n / m), "floor(n/m)"});
  cert.trace.push_back({"range", b - a, "kernel value range b - a"});
  return cert;
}

}  // namespace ustat
