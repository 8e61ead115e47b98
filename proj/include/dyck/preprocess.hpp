#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dyck/core.hpp"

namespace dyck {

struct GreedyMatchResult {
  std::vector<std::pair<std::size_t, std::size_t>> matched_pairs;  // 0-based
  std::vector<std::size_t> residual;  // ascending original indices
};

// Single left-to-right stack scan removing matched pairs. A close that
// mismatches the stack top (or arrives on an empty stack) stays in the
// residual; every open currently on the stack is frozen below it, because a
// pair matched across a residual close would not be a contiguous well-formed
// substring once prior removals are undone, and only contiguous well-formed
// removals preserve the edit distance.
inline GreedyMatchResult greedy_match(const ParenString& p) {
  GreedyMatchResult result;
  std::vector<std::size_t> stack;
  std::vector<char> matched(p.size(), 0);
  std::size_t frozen = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const ParenSymbol& s = p[i];
    if (s.is_open()) {
      stack.push_back(i);
    } else if (stack.size() > frozen && congruent(p[stack.back()]) == s) {
      result.matched_pairs.emplace_back(stack.back(), i);
      matched[stack.back()] = 1;
      matched[i] = 1;
      stack.pop_back();
    } else {
      frozen = stack.size();
    }
  }
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!matched[i]) result.residual.push_back(i);
  return result;
}

// Residual of greedy matching split into alternating open runs Y_a and close
// runs X_a, with the unmatched close prefix and open suffix pulled out as
// forced deletions. The guarantees are for the deletion-only model: a leading
// close or trailing open can never be matched by deletions alone, so removing
// it up front preserves OPT_d exactly (the full-model optimum may substitute
// such symbols instead).
struct BlockDecomposition {
  struct Block {
    std::vector<std::size_t> opens;   // Y_a
    std::vector<std::size_t> closes;  // X_a
  };
  std::vector<Block> blocks;
  std::vector<std::size_t> forced_deletions;
  std::vector<std::pair<std::size_t, std::size_t>> matched_pairs;

  std::size_t z() const { return blocks.size(); }
};

inline BlockDecomposition decompose(const ParenString& p) {
  BlockDecomposition dec;
  GreedyMatchResult gm = greedy_match(p);
  dec.matched_pairs = std::move(gm.matched_pairs);

  std::size_t lo = 0, hi = gm.residual.size();
  while (lo < hi && !p[gm.residual[lo]].is_open()) ++lo;
  while (hi > lo && p[gm.residual[hi - 1]].is_open()) --hi;
  for (std::size_t i = 0; i < lo; ++i)
    dec.forced_deletions.push_back(gm.residual[i]);
  for (std::size_t i = hi; i < gm.residual.size(); ++i)
    dec.forced_deletions.push_back(gm.residual[i]);

  for (std::size_t i = lo; i < hi;) {
    BlockDecomposition::Block block;
    while (i < hi && p[gm.residual[i]].is_open())
      block.opens.push_back(gm.residual[i++]);
    while (i < hi && !p[gm.residual[i]].is_open())
      block.closes.push_back(gm.residual[i++]);
    if (block.opens.empty() || block.closes.empty())
      throw InternalError("residual does not alternate open/close runs");
    dec.blocks.push_back(std::move(block));
  }
  return dec;
}

}  // namespace dyck
