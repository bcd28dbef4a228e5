#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <span>

#include "helpers.hpp"
#include "ustat/bounds.hpp"
#include "ustat/montecarlo.hpp"

using namespace ustat;

TEST_CASE("exact binomial upper confidence limits") {
  REQUIRE(binomial_upper_limit(5, 5) == 1.0);
  // Zero successes: the limit solves (1-p)^N = 0.01.
  for (std::uint64_t n : {100u, 20000u, 100000u}) {
    const double closed = 1.0 - std::pow(0.01, 1.0 / static_cast<double>(n));
    REQUIRE(binomial_upper_limit(0, n) == Catch::Approx(closed).epsilon(1e-12));
  }
  // Limit exceeds the point estimate and is monotone in k.
  REQUIRE(binomial_upper_limit(10, 100) > 0.1);
  REQUIRE(binomial_upper_limit(11, 100) > binomial_upper_limit(10, 100));
  REQUIRE_THROWS_AS(binomial_upper_limit(2, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(binomial_upper_limit(0, 0), std::invalid_argument);
}

TEST_CASE("tail curves are identical for every worker count") {
  CoefficientTensor t(2);
  t.set({1, 1}, 1.0);
  t.set({1, 2}, -0.5);
  const auto basis = make_trig_basis();
  const auto process = m_dependent_process(2);
  const std::vector<double> grid{0.1, 0.5, 1.0, 2.0};
  TailCurve reference = run_tail_experiment(process, t, basis, StatKind::V, 30, 400, grid,
                                            /*master_seed=*/9, /*workers=*/1);
  for (std::size_t workers : {2u, 3u, 5u}) {
    const TailCurve other =
        run_tail_experiment(process, t, basis, StatKind::V, 30, 400, grid, 9, workers);
    REQUIRE(other.counts == reference.counts);
    REQUIRE(other.estimates == reference.estimates);
    REQUIRE(other.ci_upper == reference.ci_upper);
  }
  // And the counts depend on the seed.
  const TailCurve reseeded =
      run_tail_experiment(process, t, basis, StatKind::V, 30, 400, grid, 10, 2);
  REQUIRE(reseeded.counts != reference.counts);
}

TEST_CASE("single-replication curves are 0/1 valued") {
  CoefficientTensor t(1);
  t.set({1}, 1.0);
  const auto curve = run_tail_experiment(iid_process(), t, make_trig_basis(), StatKind::V, 20,
                                         1, {0.01, 10.0}, 4, 1);
  for (double e : curve.estimates) REQUIRE((e == 0.0 || e == 1.0));
  REQUIRE(curve.reps == 1);
}

TEST_CASE("grid point at zero counts every replication of a nonvanishing statistic") {
  CoefficientTensor t(1);
  t.set({1}, 1.0);
  const auto curve = run_tail_experiment(iid_process(), t, make_trig_basis(), StatKind::V, 25,
                                         200, {0.0}, 11, 0);
  REQUIRE(curve.counts[0] == 200);
  REQUIRE(curve.estimates[0] == 1.0);
  REQUIRE(curve.ci_upper[0] == 1.0);
}

TEST_CASE("iid linear statistic matches the normal tail at n large") {
  CoefficientTensor t(1);
  t.set({1}, 1.0);
  // S_n(1) has mean 0, variance 1; at n = 10000 the CLT gives
  // P(|S_n| > 1.96) ~ 0.05.
  const auto curve = run_tail_experiment(iid_process(), t, make_trig_basis(), StatKind::V,
                                         10000, 2000, {1.96}, 7, 0);
  REQUIRE(std::abs(curve.estimates[0] - 0.05) < 0.02);
}

TEST_CASE("invalid grids and inputs are rejected") {
  CoefficientTensor t(1);
  t.set({1}, 1.0);
  const auto basis = make_trig_basis();
  REQUIRE_THROWS_AS(
      run_tail_experiment(iid_process(), t, basis, StatKind::V, 10, 10, {}, 1, 1),
      std::invalid_argument);
  REQUIRE_THROWS_AS(
      run_tail_experiment(iid_process(), t, basis, StatKind::V, 10, 10, {1.0, 1.0}, 1, 1),
      std::invalid_argument);
  REQUIRE_THROWS_AS(
      run_tail_experiment(iid_process(), t, basis, StatKind::V, 10, 10, {-0.5, 1.0}, 1, 1),
      std::invalid_argument);
  REQUIRE_THROWS_AS(
      run_tail_experiment(iid_process(), t, basis, StatKind::V, 10, 0, {1.0}, 1, 1),
      std::invalid_argument);
  // Measure mismatch: finite-alphabet process against the trig basis.
  const auto chain = markov_process(testutil::two_state_chain_half());
  REQUIRE_THROWS_AS(
      run_tail_experiment(chain, t, basis, StatKind::V, 10, 10, {1.0}, 1, 1),
      std::invalid_argument);
}

TEST_CASE("naive-path curve agrees with the series path") {
  CoefficientTensor t(2);
  t.set({1, 1}, 1.0);
  t.set({2, 1}, 0.25);
  const auto basis = make_trig_basis();
  const auto kernel = kernel_from_coefficients(t, basis);
  const auto process = m_dependent_process(2);
  const std::vector<double> grid{0.2, 0.8, 2.0};
  const auto series =
      run_tail_experiment(process, t, basis, StatKind::U, 12, 60, grid, 21, 2);
  const auto naive =
      run_tail_experiment_naive(process, kernel, StatKind::U, 12, 60, grid, 21, 2);
  REQUIRE(series.counts == naive.counts);
}

TEST_CASE("product expectation under the independent marginal") {
  const auto eval = [](std::span<const double> x) {
    double p = 1.0;
    for (double v : x) p *= v;
    return p;
  };
  const Kernel k2(2, uniform_unit_measure(), eval);
  REQUIRE(expectation_under_product(k2) == Catch::Approx(0.25).epsilon(1e-12));
  const Kernel k3(3, uniform_unit_measure(), eval);
  REQUIRE(expectation_under_product(k3) == Catch::Approx(0.125).epsilon(1e-10));
}

TEST_CASE("one-sided centered curve for the classical bound") {
  const auto eval = [](std::span<const double> x) { return x[0] * x[1]; };
  const Kernel kernel(2, uniform_unit_measure(), eval);
  const std::vector<double> grid{0.01, 0.05, 0.2};
  const auto curve = run_hoeffding_experiment(iid_process(), kernel, 40, 300, grid, 3, 2);
  // Counts are one-sided and monotone along the grid.
  REQUIRE(curve.counts[0] >= curve.counts[1]);
  REQUIRE(curve.counts[1] >= curve.counts[2]);
  // Reproducible across worker counts.
  const auto again = run_hoeffding_experiment(iid_process(), kernel, 40, 300, grid, 3, 5);
  REQUIRE(again.counts == curve.counts);
  // The centered estimate at a tiny threshold hovers near 1/2.
  REQUIRE(curve.estimates[0] > 0.2);
  REQUIRE(curve.estimates[0] < 0.8);
}

TEST_CASE("envelope verification flags genuine violations") {
  CoefficientTensor t(2);
  t.set({1, 1}, 1.0);
  const auto basis = make_trig_basis();
  const auto process = iid_process();
  const std::vector<double> grid{0.5, 2.0, 8.0};
  const auto curve =
      run_tail_experiment(process, t, basis, StatKind::V, 50, 500, grid, 13, 0);

  const PhiProfile profile = phi_profile(process);
  BoundCertificate cert = certificate_condition_a(t, std::sqrt(2.0), profile);
  const EnvelopeReport honest = verify_envelope(curve, cert);
  REQUIRE(honest.grid_points == 3);
  // A certificate whose scale constant has been crushed must fail everywhere
  // the empirical upper limit is positive. Keep the crushed bound positive
  // (no underflow) so the looseness ratio is exercised too.
  BoundCertificate crushed = cert;
  crushed.b_f = 1e-2;
  const EnvelopeReport broken = verify_envelope(curve, crushed);
  REQUIRE_FALSE(broken.pass);
  REQUIRE(broken.violations == 3);
  REQUIRE(broken.violation_indices == std::vector<std::size_t>{0, 1, 2});
  REQUIRE(broken.max_estimate_over_bound > 1.0);
}

TEST_CASE("apply_bound evaluates the certificate on the curve grid") {
  CoefficientTensor t(2);
  t.set({1, 1}, 1.0);
  TailCurve curve;
  curve.x_grid = {1.0, 10.0, 100.0};
  curve.counts = {0, 0, 0};
  curve.reps = 1;
  curve.estimates = {0.0, 0.0, 0.0};
  curve.ci_upper = {0.0, 0.0, 0.0};
  const BoundCertificate cert =
      certificate_condition_a(t, std::sqrt(2.0), phi_profile(iid_process()));
  apply_bound(curve, cert);
  REQUIRE(curve.bound.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    REQUIRE(curve.bound[i] == cert.bound_at(curve.x_grid[i]));
}

TEST_CASE("mixed moment estimates: values and worker invariance") {
  const auto process = iid_process();
  const auto basis = make_trig_basis();
  // E S_n(1)^2 = 1 exactly for iid data and an orthonormal component.
  const MomentEstimate sq =
      estimate_mixed_moment(process, basis, {1, 1}, 64, 4000, 17, 1);
  REQUIRE(std::abs(sq.estimate - 1.0) <= 3.0 * sq.std_error + 1e-9);
  // E S_n(1) S_n(2) = 0 by orthogonality.
  const MomentEstimate cross =
      estimate_mixed_moment(process, basis, {1, 2}, 64, 4000, 17, 1);
  REQUIRE(std::abs(cross.estimate) <= 3.0 * cross.std_error + 1e-9);
  // Bit-identical across worker counts.
  for (std::size_t workers : {2u, 3u}) {
    const MomentEstimate again =
        estimate_mixed_moment(process, basis, {1, 1}, 64, 4000, 17, workers);
    REQUIRE(again.estimate == sq.estimate);
    REQUIRE(again.std_error == sq.std_error);
  }
  REQUIRE_THROWS_AS(estimate_mixed_moment(process, basis, {1}, 64, 4000, 17, 1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(estimate_mixed_moment(process, basis, {1, 1}, 64, 50, 17, 1),
                    std::invalid_argument);
}

TEST_CASE("replication seeds ignore scheduling and differ across processes") {
  const std::uint64_t a = tail_replication_seed(5, "iid_uniform01", 3);
  REQUIRE(a == tail_replication_seed(5, "iid_uniform01", 3));
  REQUIRE(a != tail_replication_seed(5, "mdep_window2", 3));
  REQUIRE(a != tail_replication_seed(5, "iid_uniform01", 4));
  REQUIRE(a != tail_replication_seed(6, "iid_uniform01", 3));
}
