#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "ustat/process.hpp"
#include "ustat/tensor.hpp"

using namespace ustat;

TEST_CASE("simulation is prefix-stable for every process kind") {
  const std::vector<MixingProcess> processes = {
      iid_process(), iid_process(finite_measure({0.3, 0.7})), m_dependent_process(2),
      markov_process(testutil::two_state_chain_half()),
      embedded_markov_process(testutil::two_state_chain_half())};
  for (const auto& p : processes) {
    const auto shorter = p.simulate(99, 40);
    const auto longer = p.simulate(99, 120);
    for (std::size_t j = 0; j < shorter.size(); ++j) REQUIRE(shorter[j] == longer[j]);
  }
}

TEST_CASE("stationary distribution of an asymmetric chain") {
  // pi P = pi for P = [[0.9,0.1],[0.2,0.8]] gives pi = (2/3, 1/3).
  const auto pi = stationary_distribution({{0.9, 0.1}, {0.2, 0.8}});
  REQUIRE(pi[0] == Catch::Approx(2.0 / 3.0).epsilon(1e-12));
  REQUIRE(pi[1] == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("transition matrix validation") {
  REQUIRE_THROWS_AS(markov_process({{0.5, 0.4}, {0.5, 0.5}}), std::invalid_argument);
  REQUIRE_THROWS_AS(markov_process({{1.0, 0.0}, {0.0, 1.0}}), std::invalid_argument);  // reducible
  REQUIRE_THROWS_AS(markov_process({{0.0, 1.0}, {1.0, 0.0}}), std::invalid_argument);  // periodic
  REQUIRE_THROWS_AS(markov_process({{0.5, 0.5}}), std::invalid_argument);  // single state
  REQUIRE_NOTHROW(markov_process(testutil::three_state_chain()));
}

TEST_CASE("exact mixing coefficient of the half-eigenvalue chain") {
  const auto p = testutil::two_state_chain_half();
  // Symmetric 2-state chain with eigenvalue 1/2: phi(k) = (1/2)^{k+1}.
  for (std::size_t k = 1; k <= 6; ++k)
    REQUIRE(phi_markov_exact(p, k) == Catch::Approx(std::pow(0.5, k + 1)).epsilon(1e-13));
  const auto process = markov_process(p);
  REQUIRE(process.phi(1).value == 0.25);
  REQUIRE(process.phi(1).exact);
}

TEST_CASE("brute-force cylinder oracle agrees with the exact coefficient") {
  for (const auto& p : {testutil::two_state_chain_half(), testutil::three_state_chain()}) {
    for (std::size_t k = 1; k <= 3; ++k) {
      const double exact = phi_markov_exact(p, k);
      for (std::size_t past = 1; past <= 3; ++past)
        for (std::size_t future = 1; future <= 3; ++future) {
          const double brute = phi_brute_force(p, k, past, future);
          CAPTURE(k, past, future);
          REQUIRE(brute == Catch::Approx(exact).margin(1e-12));
        }
    }
  }
}

TEST_CASE("iid and m-dependent mixing coefficients") {
  const auto iid = iid_process();
  REQUIRE(iid.phi(1).value == 0.0);
  REQUIRE(iid.phi(1).exact);
  const auto mdep = m_dependent_process(2);
  REQUIRE(mdep.phi(1).value == 1.0);
  REQUIRE_FALSE(mdep.phi(1).exact);
  REQUIRE(mdep.phi(3).value == 0.0);
  REQUIRE(mdep.phi(3).exact);
  REQUIRE(mdep.phi_support_end().has_value());
  REQUIRE(*mdep.phi_support_end() == 3);
}

TEST_CASE("embedded chain has uniform marginal and inherits the chain's phi") {
  const auto chain = markov_process(testutil::two_state_chain_half());
  const auto embedded = embedded_markov_process(testutil::two_state_chain_half());
  REQUIRE_FALSE(is_finite_alphabet(embedded.marginal()));
  for (std::size_t k = 1; k <= 4; ++k) {
    REQUIRE(embedded.phi(k).value == chain.phi(k).value);
    REQUIRE(embedded.phi(k).exact);
  }
  // Empirical check of the uniform marginal: CDF at a few cut points.
  const auto ys = embedded.simulate(4242, 200000);
  for (double c : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    std::size_t below = 0;
    for (double y : ys)
      if (y < c) ++below;
    const double freq = static_cast<double>(below) / static_cast<double>(ys.size());
    REQUIRE(freq == Catch::Approx(c).margin(0.01));
  }
  // The chain state is recoverable from the embedded point: the half-line
  // split reproduces the chain trajectory exactly.
  const auto states = chain.simulate(substream_seed(777, 1), 50);
  const auto embedded_pts = embedded.simulate(777, 50);
  for (std::size_t j = 0; j < 50; ++j)
    REQUIRE((embedded_pts[j] < 0.5 ? 0.0 : 1.0) == states[j]);
}

TEST_CASE("m-dependent window sums are m-dependent and uniform") {
  const auto mdep = m_dependent_process(2);
  const auto xs = mdep.simulate(31, 100000);
  double mean = 0.0;
  for (double x : xs) {
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    mean += x;
  }
  mean /= static_cast<double>(xs.size());
  REQUIRE(mean == Catch::Approx(0.5).margin(0.005));
  // Lag-3 empirical correlation should vanish (independence beyond lag 2).
  double cov = 0.0;
  for (std::size_t j = 0; j + 3 < xs.size(); ++j)
    cov += (xs[j] - 0.5) * (xs[j + 3] - 0.5);
  cov /= static_cast<double>(xs.size() - 3);
  REQUIRE(cov == Catch::Approx(0.0).margin(0.002));
}

TEST_CASE("phi aggregates") {
  SECTION("iid: all zero, exact") {
    const auto agg = phi_aggregates(iid_process());
    REQUIRE(agg.phi_sum == 0.0);
    REQUIRE(agg.sqrt_phi_sum == 0.0);
    REQUIRE(agg.certified);
    REQUIRE(agg.all_exact);
    REQUIRE_FALSE(agg.truncated);
  }
  SECTION("m-dependent: finite sum of upper bounds") {
    const auto agg = phi_aggregates(m_dependent_process(2));
    REQUIRE(agg.phi_sum == Catch::Approx(2.0));
    REQUIRE(agg.sqrt_phi_sum == Catch::Approx(2.0));
    REQUIRE(agg.certified);
    REQUIRE_FALSE(agg.all_exact);
  }
  SECTION("geometric chain: certified truncation with majorized tail") {
    const auto agg = phi_aggregates(markov_process(testutil::two_state_chain_half()));
    // sum_{k>=1} (1/2)^{k+1} = 1/2; the tail majorant can only add mass.
    REQUIRE(agg.phi_sum >= 0.5 - 1e-15);
    REQUIRE(agg.phi_sum <= 0.5 + 1e-12);
    REQUIRE(agg.truncated);
    REQUIRE(agg.certified);
    // sum_{k>=1} (1/2)^{(k+1)/2} = (1/2) / (sqrt(2) - 1) ... check numerically:
    double expect = 0.0;
    for (int k = 1; k < 200; ++k) expect += std::pow(0.5, (k + 1) / 2.0);
    REQUIRE(agg.sqrt_phi_sum == Catch::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("gaussian envelope fitting") {
  SECTION("m-dependent at c1=1 gives c0=e^4, certified for all k") {
    const auto env = gaussian_envelope_for(m_dependent_process(2));
    REQUIRE(env.c0 == Catch::Approx(std::exp(4.0)).epsilon(1e-12));
    REQUIRE(env.c1 == 1.0);
    REQUIRE(env.certified_all_k);
  }
  SECTION("iid gives the zero envelope") {
    const auto env = gaussian_envelope_for(iid_process());
    REQUIRE(env.c0 == 0.0);
    REQUIRE(env.certified_all_k);
  }
  SECTION("geometric chain: horizon-limited fit only") {
    const auto env = gaussian_envelope_for(markov_process(testutil::two_state_chain_half()),
                                           0.014);
    REQUIRE_FALSE(env.certified_all_k);
    REQUIRE(env.c0 > 0.0);
    REQUIRE(std::isfinite(env.c0));
  }
}

TEST_CASE("summability and decay condition checks") {
  CoefficientTensor t(2);
  t.set({1, 1}, 1.0);
  t.set({2, 2}, 1.0);
  SECTION("condition A holds for the 2-dependent process with c0=e^4, c1=1") {
    const auto report = check_condition_a(t, m_dependent_process(2), std::exp(4.0), 1.0);
    REQUIRE(report.holds);
    REQUIRE(report.coefficient_norm == Catch::Approx(2.0));
  }
  SECTION("condition A fails with a witness when the envelope is too small") {
    const auto report = check_condition_a(t, m_dependent_process(2), 1.0, 1.0);
    REQUIRE_FALSE(report.holds);
    REQUIRE(report.detail.find("phi(") != std::string::npos);
  }
  SECTION("condition A fails for geometric mixing (decay too slow for any horizon)") {
    const auto chain = markov_process(testutil::two_state_chain_half());
    const auto report = check_condition_a(t, chain, 1.0, 1.0);
    REQUIRE_FALSE(report.holds);
  }
  SECTION("condition B holds for the geometric chain") {
    const auto chain = markov_process(testutil::two_state_chain_half());
    const auto report = check_condition_b(t, chain, 0.5);
    REQUIRE(report.holds);
    REQUIRE(report.coefficient_norm == Catch::Approx(2.0));
    REQUIRE(report.phi_sum >= 0.5 - 1e-15);
  }
  SECTION("absolute continuity: continuous marginals pass, atomic ones fail") {
    REQUIRE(check_condition_ac(iid_process()).holds);
    REQUIRE(check_condition_ac(m_dependent_process(2)).holds);
    REQUIRE(check_condition_ac(embedded_markov_process(testutil::two_state_chain_half())).holds);
    REQUIRE_FALSE(check_condition_ac(markov_process(testutil::two_state_chain_half())).holds);
  }
}

TEST_CASE("sample metadata") {
  const auto process = m_dependent_process(2);
  const Sample s = process.make_sample(5, 10);
  REQUIRE(s.points.size() == 10);
  REQUIRE(s.seed == 5);
  REQUIRE(s.process_id == process.id());
}

TEST_CASE("weighted sqrt-phi sums") {
  SECTION("iid: exact zero") {
    const auto w = weighted_sqrt_phi_sum(iid_process(), 3);
    REQUIRE(w.value == 0.0);
    REQUIRE(w.certified);
  }
  SECTION("m-dependent: exact finite sums") {
    const auto p = m_dependent_process(2);
    REQUIRE(weighted_sqrt_phi_sum(p, 0).value == 2.0);   // 1 + 1
    REQUIRE(weighted_sqrt_phi_sum(p, 1).value == 3.0);   // 1 + 2
    REQUIRE(weighted_sqrt_phi_sum(p, 4).value == 17.0);  // 1 + 16
    REQUIRE(weighted_sqrt_phi_sum(p, 4).certified);
  }
  SECTION("geometric chain: certified and close to the long explicit sum") {
    const auto chain = markov_process(testutil::two_state_chain_half());
    for (std::size_t power : {std::size_t{0}, std::size_t{2}, std::size_t{4}}) {
      const auto w = weighted_sqrt_phi_sum(chain, power);
      REQUIRE(w.certified);
      double ref = 0.0;
      for (std::size_t k = 1; k <= 400; ++k)
        ref += std::pow(0.5, (static_cast<double>(k) + 1.0) / 2.0) *
               std::pow(static_cast<double>(k), static_cast<double>(power));
      REQUIRE(w.value >= ref - 1e-12);  // certified upper bound
      REQUIRE(w.value <= ref * 1.05);   // and not wildly conservative
    }
  }
}
