#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "ustat/basis.hpp"
#include "ustat/kernel.hpp"
#include "ustat/tensor.hpp"

using namespace ustat;

TEST_CASE("coefficient tensor rejects invalid input") {
  CoefficientTensor t(2);
  REQUIRE_THROWS_AS(t.set({1}, 1.0), std::invalid_argument);        // wrong arity
  REQUIRE_THROWS_AS(t.set({0, 1}, 1.0), std::invalid_argument);     // index 0 breaks canonicality
  REQUIRE_THROWS_AS(t.norm_sum(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(t.norm_sum(1.5), std::invalid_argument);
  t.set({1, 2}, 0.5);
  t.set({1, 2}, 0.0);  // setting zero erases
  REQUIRE(t.empty());
}

TEST_CASE("tensor norms") {
  CoefficientTensor t(2);
  t.set({1, 1}, 1.0);
  t.set({2, 2}, -1.0);
  REQUIRE(t.norm_sum(1.0) == Catch::Approx(2.0));
  REQUIRE(t.norm_sum(0.5) == Catch::Approx(2.0));
  t.set({1, 2}, -0.25);
  REQUIRE(t.norm_sum(1.0) == Catch::Approx(2.25));
  REQUIRE(t.norm_sum(0.5) == Catch::Approx(2.5));
  REQUIRE(t.max_component() == 2);
}

TEST_CASE("series kernel evaluates the finite sum exactly") {
  const OrthonormalBasis basis = make_trig_basis();
  CoefficientTensor t(2);
  t.set({1, 1}, 1.0);
  t.set({2, 2}, -0.5);
  const Kernel kernel = kernel_from_coefficients(t, basis);
  const double s = 0.21, u = 0.67;
  const double expected = basis.evaluate(1, s) * basis.evaluate(1, u) -
                          0.5 * basis.evaluate(2, s) * basis.evaluate(2, u);
  REQUIRE(kernel.evaluate({s, u}) == Catch::Approx(expected).epsilon(1e-15));
  REQUIRE(kernel.tensor() != nullptr);
}

TEST_CASE("expansion coefficients recover the generating tensor") {
  const OrthonormalBasis basis = make_trig_basis();
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
      const CoefficientTensor t = testutil::random_tensor(900 + seed + 10 * m, m, 5, 6);
      const Kernel kernel = kernel_from_coefficients(t, basis);
      const CoefficientTensor back = coefficients_from_kernel(kernel, basis, 5);
      for (const auto& [index, value] : t.entries())
        REQUIRE(back.at(index) == Catch::Approx(value).margin(1e-10));
      for (const auto& [index, value] : back.entries())
        REQUIRE(t.at(index) == Catch::Approx(value).margin(1e-10));
    }
  }
}

TEST_CASE("expansion coefficients on a finite alphabet are exact sums") {
  const OrthonormalBasis basis = make_finite_basis({0.3, 0.7});
  CoefficientTensor t(2);
  t.set({1, 1}, 0.8);
  const Kernel kernel = kernel_from_coefficients(t, basis);
  const CoefficientTensor back = coefficients_from_kernel(kernel, basis, 1);
  REQUIRE(back.at({1, 1}) == Catch::Approx(0.8).margin(1e-14));
}

TEST_CASE("coefficients_from_kernel validates inputs") {
  const OrthonormalBasis trig = make_trig_basis();
  const OrthonormalBasis finite = make_finite_basis({0.5, 0.5});
  CoefficientTensor t(1);
  t.set({1}, 1.0);
  const Kernel kernel = kernel_from_coefficients(t, trig);
  REQUIRE_THROWS_AS(coefficients_from_kernel(kernel, finite, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(coefficients_from_kernel(kernel, trig, 0), std::invalid_argument);
  CoefficientTensor big(1);
  big.set({3}, 1.0);
  REQUIRE_THROWS_AS(kernel_from_coefficients(big, finite), std::invalid_argument);
}

TEST_CASE("canonicality defect of s*t is one half") {
  // E_s f(s,t) = t/2, largest over the grid at t = 1.
  const Kernel product(2, uniform_unit_measure(), [](std::span<const double> t) {
    return t[0] * t[1];
  });
  REQUIRE(canonicality_defect(product) == Catch::Approx(0.5).margin(1e-9));
}

TEST_CASE("series kernels are canonical by construction") {
  const OrthonormalBasis basis = make_trig_basis();
  for (std::uint64_t seed : {21u, 22u}) {
    const CoefficientTensor t = testutil::random_tensor(seed, 2, 6, 8);
    const Kernel kernel = kernel_from_coefficients(t, basis);
    REQUIRE(canonicality_defect(kernel, 16, 1024) <= 1e-10);
  }
}

TEST_CASE("projection canonicalizes the product kernel") {
  const Kernel product(2, uniform_unit_measure(), [](std::span<const double> t) {
    return t[0] * t[1];
  });
  const Kernel projected = hoeffding_project(product);
  // pi f(s,t) = (s - 1/2)(t - 1/2) for f = s t.
  REQUIRE(projected.evaluate({0.3, 0.8}) ==
          Catch::Approx((0.3 - 0.5) * (0.8 - 0.5)).margin(1e-12));
  REQUIRE(canonicality_defect(projected) <= 1e-8);
}

TEST_CASE("projection canonicalizes exp(s+t) and is idempotent") {
  const Kernel expsum(2, uniform_unit_measure(), [](std::span<const double> t) {
    return std::exp(t[0] + t[1]);
  });
  const Kernel once = hoeffding_project(expsum);
  REQUIRE(canonicality_defect(once) <= 1e-8);
  const Kernel twice = hoeffding_project(once);
  for (double s : {0.0, 0.31, 0.77, 1.0})
    for (double u : {0.13, 0.5, 0.99})
      REQUIRE(twice.evaluate({s, u}) == Catch::Approx(once.evaluate({s, u})).margin(1e-9));
}

TEST_CASE("projection of an order-3 kernel") {
  const Kernel triple(3, uniform_unit_measure(), [](std::span<const double> t) {
    return t[0] * t[1] * t[2];
  });
  const Kernel projected = hoeffding_project(triple);
  const double expected = (0.2 - 0.5) * (0.6 - 0.5) * (0.9 - 0.5);
  REQUIRE(projected.evaluate({0.2, 0.6, 0.9}) == Catch::Approx(expected).margin(1e-10));
}
