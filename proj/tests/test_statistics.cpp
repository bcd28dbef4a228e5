#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "ustat/basis.hpp"
#include "ustat/kernel.hpp"
#include "ustat/process.hpp"
#include "ustat/statistics.hpp"

using namespace ustat;

TEST_CASE("set partition enumeration matches Bell numbers") {
  REQUIRE(set_partitions(1).size() == 1);
  REQUIRE(set_partitions(2).size() == 2);
  REQUIRE(set_partitions(3).size() == 5);
  REQUIRE(set_partitions(4).size() == 15);
  REQUIRE(set_partitions(5).size() == 52);
}

TEST_CASE("partition weights") {
  // Growth-string order: "00" = {{0,1}} first, then "01" = {{0},{1}}.
  const auto parts = set_partitions(2);
  REQUIRE(parts[0].size() == 1);
  REQUIRE(partition_weight(parts[0]) == -1.0);
  REQUIRE(parts[1].size() == 2);
  REQUIRE(partition_weight(parts[1]) == 1.0);
  // A block of size 3 contributes (-1)^2 * 2! = 2.
  REQUIRE(partition_weight({{0, 1, 2}}) == 2.0);
}

TEST_CASE("distinct-tuple identity for m=2 via power sums") {
  const OrthonormalBasis basis = make_trig_basis();
  const auto xs = iid_process().simulate(7, 12);
  const std::uint32_t i = 1, j = 2;
  const double lhs = [&] {
    double s = 0.0;
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t b = 0; b < xs.size(); ++b)
        if (a != b) s += basis.evaluate(i, xs[a]) * basis.evaluate(j, xs[b]);
    return s / static_cast<double>(xs.size());
  }();
  const std::uint32_t pair[] = {i, j};
  const double rhs = s_n(basis, i, xs) * s_n(basis, j, xs) -
                     mixed_power_sum(basis, pair, xs);
  REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("series and naive paths agree for V and U statistics") {
  const OrthonormalBasis basis = make_trig_basis();
  const auto process = m_dependent_process(2);
  for (std::uint64_t seed : {101u, 102u, 103u, 104u}) {
    for (std::size_t m : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
      const CoefficientTensor t = testutil::random_tensor(seed + 1000 * m, m, 6, 8);
      const Kernel kernel = kernel_from_coefficients(t, basis);
      const auto xs = process.simulate(seed, 14);
      const double v_naive = v_statistic_naive(kernel, xs);
      const double v_series = v_statistic_series(t, basis, xs);
      REQUIRE(std::abs(v_series - v_naive) <= 1e-10 * (1.0 + std::abs(v_naive)));
      if (m >= 2) {
        const double u_naive = u_statistic_naive(kernel, xs);
        const double u_series = u_statistic_series(t, basis, xs);
        REQUIRE(std::abs(u_series - u_naive) <= 1e-10 * (1.0 + std::abs(u_naive)));
      }
    }
  }
}

TEST_CASE("hoeffding normalization") {
  // n = 5, m = 2: sum over distinct tuples of 1 is 20; the normalized
  // average is 1, and the n^{-m/2}-scaled sum is 20/5 = 4.
  const Kernel ones(2, uniform_unit_measure(), [](std::span<const double>) { return 1.0; });
  const auto xs = iid_process().simulate(3, 5);
  const double scaled = u_statistic_naive(ones, xs);
  REQUIRE(scaled == Catch::Approx(4.0).epsilon(1e-13));
  REQUIRE(hoeffding_normalized(scaled, 5, 2) == Catch::Approx(1.0).epsilon(1e-13));
  REQUIRE(u_statistic_hoeffding_naive(ones, xs) == Catch::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("naive evaluators enforce feasibility limits") {
  const Kernel ones(5, uniform_unit_measure(), [](std::span<const double>) { return 1.0; });
  const auto xs = iid_process().simulate(3, 10);
  REQUIRE_THROWS_AS(v_statistic_naive(ones, xs), std::invalid_argument);  // order 5 > 4
  const Kernel pair(2, uniform_unit_measure(), [](std::span<const double>) { return 1.0; });
  const auto big = iid_process().simulate(3, 300);
  REQUIRE_THROWS_AS(v_statistic_naive(pair, big), std::invalid_argument);  // n above cap
  NaiveLimits loose;
  loose.max_n = 400;
  REQUIRE_NOTHROW(v_statistic_naive(pair, big, loose));
  const auto tiny = iid_process().simulate(3, 1);
  REQUIRE_THROWS_AS(u_statistic_naive(pair, tiny), std::invalid_argument);  // n < m
}

TEST_CASE("statistic input validation") {
  const OrthonormalBasis basis = make_trig_basis();
  CoefficientTensor t(2);
  t.set({1, 1}, 1.0);
  const std::vector<double> empty;
  REQUIRE_THROWS_AS(v_statistic_series(t, basis, empty), std::invalid_argument);
  REQUIRE_THROWS_AS(s_n(basis, 1, empty), std::invalid_argument);
  const OrthonormalBasis finite = make_finite_basis({0.5, 0.5});
  CoefficientTensor over(1);
  over.set({3}, 1.0);
  const std::vector<double> xs{0.0, 1.0};
  REQUIRE_THROWS_AS(v_statistic_series(over, finite, xs), std::invalid_argument);
}
