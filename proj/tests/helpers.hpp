#pragma once

#include <string>
#include <vector>

#include "dyck/core.hpp"
#include "dyck/rng.hpp"

namespace th {

inline dyck::ParenString ps(const std::string& text) {
  return dyck::parse_compact(text);
}

// Uniform random symbols (not balanced), handy for fuzzing.
inline dyck::ParenString random_string(dyck::Rng& rng, std::size_t n,
                                       std::uint32_t s) {
  dyck::ParenString p;
  p.alphabet_size = s;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t code = rng.below(2 * s);
    p.symbols.push_back(
        {static_cast<std::uint32_t>(code >> 1),
         (code & 1) ? dyck::Polarity::close : dyck::Polarity::open});
  }
  return p;
}

// Test-only oracle for the deletion model: smallest subset of positions whose
// removal leaves a well-formed string, by exhaustive subset search.
inline std::size_t deletion_distance_by_subsets(const dyck::ParenString& p) {
  const std::size_t n = p.size();
  std::size_t best = n;
  for (std::uint32_t keep = 0; keep < (1u << n); ++keep) {
    dyck::ParenString sub;
    sub.alphabet_size = p.alphabet_size;
    for (std::size_t i = 0; i < n; ++i)
      if (keep & (1u << i)) sub.symbols.push_back(p[i]);
    if (dyck::is_well_formed(sub))
      best = std::min(best, n - sub.size());
  }
  return best;
}

}  // namespace th
