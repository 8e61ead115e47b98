#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_set>
#include <vector>

#include "dyck/core.hpp"

namespace dyck {

inline constexpr std::size_t kOracleCap = 600;

namespace detail {

inline constexpr int kDpInf = std::numeric_limits<int>::max() / 4;

// Cost of repairing the pair (a, b) into a matched (open, congruent close)
// pair. Substitutions retype a parenthesis but keep its polarity, so only an
// open followed by a close can be paired: 0 when the types already match, 1
// when one side must be retyped. Every other polarity combination is
// unpairable and must be handled by deletions.
inline int pair_cost(ParenSymbol a, ParenSymbol b) {
  if (a.is_open() && !b.is_open()) return a.type_id == b.type_id ? 0 : 1;
  return kDpInf;
}

// Interval DP shared by the full and deletion-only oracles. Entries are laid
// out as edit[i * (n + 1) + j] for 1 <= i <= n + 1, 0 <= j <= n, where
// edit[i][i - 1] = 0 encodes the empty substring.
template <bool DeletionOnly>
std::vector<int> interval_dp(const ParenString& p, std::size_t cap) {
  const std::size_t n = p.size();
  if (n > cap) throw SizeCapError("input exceeds oracle cap", n, cap);
  std::vector<int> edit((n + 2) * (n + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> int& {
    return edit[i * (n + 1) + j];
  };
  for (std::size_t i = 1; i <= n; ++i) at(i, i) = 1;
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 1; i + len - 1 <= n; ++i) {
      std::size_t j = i + len - 1;
      int best;
      if constexpr (DeletionOnly) {
        bool match = p[i - 1].is_open() && congruent(p[i - 1]) == p[j - 1];
        best = match ? at(i + 1, j - 1) : kDpInf;
      } else {
        best = pair_cost(p[i - 1], p[j - 1]) + at(i + 1, j - 1);
      }
      for (std::size_t k = i; k < j; ++k)
        best = std::min(best, at(i, k) + at(k + 1, j));
      at(i, j) = best;
    }
  }
  return edit;
}

}  // namespace detail

// Exact edit distance to Dyck(s) under deletions, insertions and
// polarity-preserving substitutions. Insertions are never needed: any
// insertion can be replaced by deleting the symbol it would have matched, at
// equal cost, so the DP works over deletions and substitutions only.
inline std::size_t dyck_edit_dp(const ParenString& p,
                                std::size_t cap = kOracleCap) {
  if (p.empty()) return 0;
  const std::size_t n = p.size();
  auto edit = detail::interval_dp<false>(p, cap);
  return static_cast<std::size_t>(edit[1 * (n + 1) + n]);
}

// Minimum number of deletions making p well-formed (OPT_d).
inline std::size_t dyck_deletion_dp(const ParenString& p,
                                    std::size_t cap = kOracleCap) {
  if (p.empty()) return 0;
  const std::size_t n = p.size();
  auto edit = detail::interval_dp<true>(p, cap);
  return static_cast<std::size_t>(edit[1 * (n + 1) + n]);
}

// Full-oracle variant that also reconstructs an optimal script. The traceback
// recomputes the argmin per node instead of storing parent pointers.
inline RepairResult dyck_edit_dp_repair(const ParenString& p,
                                        std::size_t cap = kOracleCap) {
  RepairResult result;
  if (p.empty()) {
    result.repaired = p;
    return result;
  }
  const std::size_t n = p.size();
  auto edit = detail::interval_dp<false>(p, cap);
  auto at = [&](std::size_t i, std::size_t j) {
    return edit[i * (n + 1) + j];
  };

  // Emits the retype turning (open at i, close at j) into a matched pair;
  // the close side is edited by convention.
  auto emit_pair = [&](std::size_t i, std::size_t j) {
    ParenSymbol a = p[i - 1], b = p[j - 1];
    if (a.type_id != b.type_id)
      result.script.ops.push_back(substitute_op(j, congruent(a)));
  };

  auto walk = [&](auto&& self, std::size_t i, std::size_t j) -> void {
    if (i > j) return;
    if (i == j) {
      result.script.ops.push_back(delete_op(i));
      return;
    }
    int target = at(i, j);
    if (detail::pair_cost(p[i - 1], p[j - 1]) + at(i + 1, j - 1) == target) {
      emit_pair(i, j);
      self(self, i + 1, j - 1);
      return;
    }
    for (std::size_t k = i; k < j; ++k) {
      if (at(i, k) + at(k + 1, j) == target) {
        self(self, i, k);
        self(self, k + 1, j);
        return;
      }
    }
    throw InternalError("oracle traceback found no consistent split");
  };
  walk(walk, 1, n);

  result.cost = static_cast<std::size_t>(at(1, n));
  result.repaired = apply_script(p, result.script);
  return result;
}

// ---------------------------------------------------------------------------
// Independent brute-force oracle: breadth-first search over edit scripts
// (deletions and polarity-preserving substitutions; insertions behind a
// flag) in increasing cost, returning the first cost whose frontier contains
// a well-formed string. Used to pin expected values for the DP; it shares no
// machinery with the interval recurrence.
//
// Strings live in 64-bit keys, one w-bit digit per symbol (digit = type * 2,
// plus 1 for a close) with the length in the top byte, so successor
// generation is a handful of bit operations. Generated successors are checked
// for well-formedness immediately: once every string of cost c has been ruled
// out, the first well-formed successor decides cost c + 1 without expanding
// the rest of that level.
// ---------------------------------------------------------------------------

namespace detail {

struct BfsCodec {
  unsigned width;           // bits per symbol
  std::uint64_t nsyms;      // 2 * alphabet
  std::size_t max_len;
  std::uint64_t mask;       // one digit
  std::vector<std::uint64_t> offsets;
  std::uint64_t space = 0;  // dense visited size, 0 when too large

  BfsCodec(std::uint32_t alphabet, std::size_t max_len)
      : width(1), nsyms(2ull * alphabet), max_len(max_len) {
    while ((1ull << width) < nsyms) ++width;
    mask = (1ull << width) - 1;
    // Dense indexing needs digits to fill their fields exactly.
    bool dense = (1ull << width) == nsyms;
    offsets.assign(max_len + 2, 0);
    std::uint64_t pow = 1;
    for (std::size_t l = 0; l <= max_len; ++l) {
      offsets[l + 1] = offsets[l] + pow;
      if (offsets[l + 1] > (1ull << 26)) dense = false;
      if (dense) pow <<= width;
    }
    space = dense ? offsets[max_len + 1] : 0;
  }

  static std::size_t len(std::uint64_t key) { return key >> 56; }
  std::uint64_t digits(std::uint64_t key) const {
    return key & ((1ull << 56) - 1);
  }
  std::uint64_t make(std::uint64_t digits, std::size_t len) const {
    return digits | (static_cast<std::uint64_t>(len) << 56);
  }

  bool well_formed(std::uint64_t key) const {
    std::uint64_t stk = 0;
    unsigned depth = 0;
    std::uint64_t d = digits(key);
    for (std::size_t i = 0, l = len(key); i < l; ++i, d >>= width) {
      std::uint64_t c = d & mask;
      if ((c & 1) == 0) {
        stk = (stk << width) | c;
        ++depth;
      } else {
        if (depth == 0 || (stk & mask) != (c ^ 1)) return false;
        stk >>= width;
        --depth;
      }
    }
    return depth == 0;
  }

  std::uint64_t dense_index(std::uint64_t key) const {
    return offsets[len(key)] + digits(key);
  }
};

}  // namespace detail

inline std::optional<std::size_t> brute_force_distance(
    const ParenString& p, std::size_t max_cost, bool allow_insertions = false) {
  const std::uint32_t s = p.alphabet_size;
  const std::size_t n = p.size();
  const std::size_t max_len = allow_insertions ? n + max_cost : n;
  detail::BfsCodec codec(s, max_len);
  if (codec.width * max_len > 56)
    throw UsageError("brute-force oracle limited to short strings");

  std::uint64_t start_digits = 0;
  for (std::size_t i = n; i-- > 0;)
    start_digits = (start_digits << codec.width) |
                   (p[i].type_id * 2 + (p[i].is_open() ? 0 : 1));
  const std::uint64_t start = codec.make(start_digits, n);

  std::vector<char> dense_seen;
  std::unordered_set<std::uint64_t> hash_seen;
  const bool dense = codec.space != 0;
  if (dense)
    dense_seen.assign(codec.space, 0);
  else
    hash_seen.reserve(1 << 14);
  auto try_visit = [&](std::uint64_t key) {
    if (dense) {
      std::uint64_t idx = codec.dense_index(key);
      if (dense_seen[idx]) return false;
      dense_seen[idx] = 1;
      return true;
    }
    return hash_seen.insert(key).second;
  };

  if (codec.well_formed(start)) return 0;
  try_visit(start);

  const unsigned w = codec.width;
  std::vector<std::uint64_t> frontier{start}, next;
  for (std::size_t cost = 1; cost <= max_cost; ++cost) {
    next.clear();
    for (std::uint64_t key : frontier) {
      const std::size_t l = detail::BfsCodec::len(key);
      const std::uint64_t d = codec.digits(key);
      for (std::size_t i = 0; i < l; ++i) {
        const std::uint64_t low_mask = (1ull << (w * i)) - 1;
        // deletion at i
        std::uint64_t del =
            codec.make((d & low_mask) | ((d >> (w * (i + 1))) << (w * i)),
                       l - 1);
        if (codec.well_formed(del)) return cost;
        if (try_visit(del)) next.push_back(del);
        // substitution at i: retype within the same polarity
        const std::uint64_t cur = (d >> (w * i)) & codec.mask;
        for (std::uint64_t c = cur & 1; c < codec.nsyms; c += 2) {
          if (c == cur) continue;
          std::uint64_t sub = codec.make(d ^ ((cur ^ c) << (w * i)), l);
          if (codec.well_formed(sub)) return cost;
          if (try_visit(sub)) next.push_back(sub);
        }
      }
      if (allow_insertions && l < max_len) {
        for (std::size_t i = 0; i <= l; ++i) {
          const std::uint64_t low_mask = (1ull << (w * i)) - 1;
          const std::uint64_t lo = d & low_mask;
          const std::uint64_t hi = (d & ~low_mask) << w;
          for (std::uint64_t c = 0; c < codec.nsyms; ++c) {
            std::uint64_t ins = codec.make(lo | hi | (c << (w * i)), l + 1);
            if (codec.well_formed(ins)) return cost;
            if (try_visit(ins)) next.push_back(ins);
          }
        }
      }
    }
    frontier.swap(next);
    if (frontier.empty()) break;
  }
  return std::nullopt;
}

}  // namespace dyck
