#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dyck/core.hpp"
#include "dyck/rng.hpp"

namespace dyck {

// Probability that a fair +-1 walk started at d first hits 0 at exactly step
// D: (d / D) * C(D, (D - d) / 2) * 2^-D, by the hitting time theorem. Zero
// when D < d or D - d is odd. Evaluated in log space so the binomial stays
// finite out to D ~ 1e6.
//
// The walk the repair analysis uses also has an upper absorbing barrier at
// n + d; ignoring it only removes probability mass at late times, so every
// lower-bound check made against this pmf is conservative.
inline double hitting_pmf(std::uint64_t d, std::uint64_t steps) {
  if (d < 1) throw UsageError("walk must start at d >= 1");
  if (steps < d || (steps - d) % 2 != 0) return 0.0;
  const double dd = static_cast<double>(d), n = static_cast<double>(steps);
  const double r = (n - dd) / 2.0;
  const double log_p = std::log(dd) - std::log(n) + std::lgamma(n + 1.0) -
                       std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0) -
                       n * std::log(2.0);
  return std::exp(log_p);
}

inline double window_prob(std::uint64_t d, std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw UsageError("window requires lo <= hi");
  // Only steps with the right parity contribute.
  std::uint64_t first = lo < d ? d : lo;
  if ((first - d) % 2 != 0) ++first;
  double sum = 0.0;
  for (std::uint64_t steps = first; steps <= hi; steps += 2)
    sum += hitting_pmf(d, steps);
  return sum;
}

// A(alpha) = 1 / (alpha * sqrt(2 alpha) * e^(1/(2 alpha))); A(2) = 0.194...
// is the constant behind the restart count. Increasing below alpha = 1/3,
// decreasing above.
inline double lower_bound_A(double alpha) {
  if (!(alpha > 0.0)) throw UsageError("alpha must be positive");
  return 1.0 / (alpha * std::sqrt(2.0 * alpha) * std::exp(1.0 / (2.0 * alpha)));
}

struct EpsilonWindow {
  std::uint64_t steps = 0;
  double bound = 0.0;
};

// Step budget (1/eps) d^2 / log d with claimed hitting probability at least
// sqrt(eps log d) / d^eps; logs are natural.
inline EpsilonWindow epsilon_window(std::uint64_t d, double epsilon) {
  if (d < 2) throw UsageError("epsilon window requires d >= 2");
  if (!(epsilon > 0.0)) throw UsageError("epsilon must be positive");
  const double dd = static_cast<double>(d);
  EpsilonWindow w;
  w.steps = static_cast<std::uint64_t>(
      std::ceil(dd * dd / (epsilon * std::log(dd))));
  w.bound = std::sqrt(epsilon * std::log(dd)) / std::pow(dd, epsilon);
  return w;
}

struct HitHistogram {
  std::uint64_t start = 0;
  std::uint64_t cap = 0;
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> counts;  // counts[D] = trials first hitting 0 at D
  std::uint64_t censored = 0;         // trials still above 0 after cap steps
};

// Monte Carlo oracle for the pmf: independent fair walks from d, each run
// until it hits 0 or has taken cap steps.
inline HitHistogram simulate(std::uint64_t d, std::uint64_t cap,
                             std::uint64_t trials, Rng& rng) {
  if (d < 1) throw UsageError("walk must start at d >= 1");
  if (trials < 1) throw UsageError("need at least one trial");
  HitHistogram h;
  h.start = d;
  h.cap = cap;
  h.trials = trials;
  h.counts.assign(cap + 1, 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint64_t pos = d;
    std::uint64_t step = 0;
    while (pos > 0 && step < cap) {
      ++step;
      pos += rng.coin() ? 1 : static_cast<std::uint64_t>(-1);
    }
    if (pos == 0)
      ++h.counts[step];
    else
      ++h.censored;
  }
  return h;
}

}  // namespace dyck
