#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "dyck/randomwalk.hpp"

using namespace dyck;

TEST_CASE("pmf closed form", "[randomwalk]") {
  REQUIRE(hitting_pmf(1, 1) == Catch::Approx(0.5));
  REQUIRE(hitting_pmf(2, 3) == 0.0);  // parity
  REQUIRE(hitting_pmf(2, 1) == 0.0);  // cannot get there yet
  REQUIRE(hitting_pmf(2, 4) == Catch::Approx(0.125));
  REQUIRE(hitting_pmf(3, 3) == Catch::Approx(0.125));  // straight down: 2^-3
}

TEST_CASE("pmf agrees with exhaustive path enumeration", "[randomwalk]") {
  // All 2^steps sign sequences, counting first hits at exactly `steps`.
  for (std::uint64_t d = 1; d <= 3; ++d) {
    for (std::uint64_t steps = d; steps <= d + 8; steps += 2) {
      std::uint64_t hits = 0;
      for (std::uint64_t mask = 0; mask < (1ull << steps); ++mask) {
        std::int64_t pos = static_cast<std::int64_t>(d);
        bool hit = false;
        for (std::uint64_t s = 0; s < steps && !hit; ++s) {
          pos += (mask >> s) & 1 ? 1 : -1;
          if (pos == 0) hit = s + 1 == steps;
          if (pos == 0 && s + 1 < steps) break;
        }
        if (hit) ++hits;
      }
      double exact = static_cast<double>(hits) / std::pow(2.0, static_cast<double>(steps));
      REQUIRE(hitting_pmf(d, steps) == Catch::Approx(exact).margin(1e-12));
    }
  }
}

TEST_CASE("window probability", "[randomwalk]") {
  REQUIRE(window_prob(1, 1, 1) == Catch::Approx(0.5));
  REQUIRE(window_prob(2, 4, 8) ==
          Catch::Approx(hitting_pmf(2, 4) + hitting_pmf(2, 6) + hitting_pmf(2, 8)));
  REQUIRE_THROWS_AS(window_prob(2, 5, 4), UsageError);
}

TEST_CASE("ruin within 2d^2 steps has probability at least 0.194",
          "[randomwalk]") {
  for (std::uint64_t d = 2; d <= 25; ++d)
    REQUIRE(window_prob(d, d, 2 * d * d) >= 0.194);
}

TEST_CASE("A(alpha)", "[randomwalk]") {
  double a2 = lower_bound_A(2.0);
  REQUIRE(a2 >= 0.194);
  REQUIRE(a2 < 0.195);
  // decreasing on [1/3, 10], increasing on (0, 1/3]
  double prev = lower_bound_A(1.0 / 3.0);
  for (int i = 1; i <= 100; ++i) {
    double alpha = 1.0 / 3.0 + (10.0 - 1.0 / 3.0) * i / 100.0;
    double cur = lower_bound_A(alpha);
    REQUIRE(cur <= prev);
    prev = cur;
  }
  prev = lower_bound_A(1e-3);
  for (int i = 1; i <= 100; ++i) {
    double alpha = 1e-3 + (1.0 / 3.0 - 1e-3) * i / 100.0;
    double cur = lower_bound_A(alpha);
    REQUIRE(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("epsilon window", "[randomwalk]") {
  auto w1 = epsilon_window(4, 0.5);
  REQUIRE(w1.steps == static_cast<std::uint64_t>(
                          std::ceil(16.0 / (0.5 * std::log(4.0)))));
  REQUIRE(w1.bound == Catch::Approx(std::sqrt(0.5 * std::log(4.0)) / 2.0));
  REQUIRE(window_prob(4, 4, 2 * w1.steps) >= w1.bound);

  auto w2 = epsilon_window(2, 1.0);
  REQUIRE(window_prob(2, 2, 2 * w2.steps) >= w2.bound);

  for (std::uint64_t d = 2; d <= 30; ++d)
    for (double eps : {0.25, 0.5, 1.0})
      REQUIRE(epsilon_window(d, eps).bound <= 1.0);
}

TEST_CASE("simulation basics", "[randomwalk]") {
  Rng rng(1234);
  HitHistogram h = simulate(1, 1, 10, rng);
  std::uint64_t assigned = h.censored;
  for (auto c : h.counts) assigned += c;
  REQUIRE(assigned == 10);
  REQUIRE(h.counts[1] + h.censored == 10);
}

TEST_CASE("simulation matches the pmf within three standard errors",
          "[randomwalk]") {
  const std::uint64_t trials = 40000;
  for (std::uint64_t d : {std::uint64_t{1}, std::uint64_t{3}}) {
    Rng rng(999 + d);
    HitHistogram h = simulate(d, 40, trials, rng);
    for (std::uint64_t steps = d; steps <= 30; ++steps) {
      double expect = hitting_pmf(d, steps);
      double got = static_cast<double>(h.counts[steps]) / trials;
      double sigma = std::sqrt(std::max(expect * (1 - expect), 1e-12) / trials);
      REQUIRE(std::abs(got - expect) <= 3.5 * sigma + 1e-9);
    }
  }
}
