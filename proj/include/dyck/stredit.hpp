#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dyck/core.hpp"

namespace dyck {

namespace detail {

inline constexpr int kLevInf = std::numeric_limits<int>::max() / 4;

// One banded pass with half-width w; exact whenever the true distance is at
// most w (an optimal path with cost <= w never leaves |i - j| <= w).
// Returns kLevInf when the band is exceeded. When `rows` is non-null the full
// band matrix is kept for traceback, laid out rows[i][j - i + w].
template <class SeqA, class SeqB>
int levenshtein_band_pass(const SeqA& a, const SeqB& b, std::size_t w,
                          std::vector<std::vector<int>>* rows) {
  const std::size_t la = a.size(), lb = b.size();
  if (la > lb + w || lb > la + w) return kLevInf;
  const std::size_t width = 2 * w + 1;
  std::vector<int> prev(width, kLevInf), cur(width, kLevInf);
  if (rows) {
    rows->clear();
    rows->reserve(la + 1);
  }
  for (std::size_t j = 0; j <= std::min(lb, w); ++j) prev[j + w] = static_cast<int>(j);
  if (rows) rows->push_back(prev);
  for (std::size_t i = 1; i <= la; ++i) {
    std::fill(cur.begin(), cur.end(), kLevInf);
    const std::size_t jlo = i > w ? i - w : 0;
    const std::size_t jhi = std::min(lb, i + w);
    for (std::size_t j = jlo; j <= jhi; ++j) {
      const std::size_t c = j - i + w;  // column within the band
      int best = kLevInf;
      if (j == 0) {
        best = static_cast<int>(i);
      } else {
        int diag = prev[c];  // (i-1, j-1) sits at the same band column
        if (diag < kLevInf) best = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
        if (c + 1 < width && prev[c + 1] < kLevInf)
          best = std::min(best, prev[c + 1] + 1);  // delete a[i-1]
        if (c > 0 && cur[c - 1] < kLevInf)
          best = std::min(best, cur[c - 1] + 1);  // delete b[j-1]
      }
      cur[c] = best;
    }
    prev.swap(cur);
    if (rows) rows->push_back(prev);
  }
  return prev[lb + w - la];
}

}  // namespace detail

// Unit-cost edit distance. With a band hint the pass is retried with a
// doubled band until the result certifies itself (distance <= band), so the
// answer is always exact; small true distances cost O(n * d).
template <class SeqA, class SeqB>
std::size_t levenshtein(const SeqA& a, const SeqB& b) {
  std::size_t w = std::max<std::size_t>(
      1, a.size() > b.size() ? a.size() - b.size() : b.size() - a.size());
  const std::size_t cap = std::max(a.size(), b.size());
  for (;; w *= 2) {
    w = std::min(w, cap);
    int r = detail::levenshtein_band_pass(a, b, w, nullptr);
    if (r < detail::kLevInf && static_cast<std::size_t>(r) <= w)
      return static_cast<std::size_t>(r);
    if (w >= cap) return static_cast<std::size_t>(r);
  }
}

template <class SeqA, class SeqB>
std::size_t levenshtein(const SeqA& a, const SeqB& b, std::size_t band) {
  const std::size_t cap = std::max(a.size(), b.size());
  std::size_t w = std::max<std::size_t>(band, 1);
  for (;; w *= 2) {
    w = std::min(w, cap);
    int r = detail::levenshtein_band_pass(a, b, w, nullptr);
    if (r < detail::kLevInf && static_cast<std::size_t>(r) <= w)
      return static_cast<std::size_t>(r);
    if (w >= cap) return static_cast<std::size_t>(r);
  }
}

struct AlignOp {
  enum class Kind : std::uint8_t { match, substitute, gap_a, gap_b };
  Kind kind;
  std::size_t i = 0;  // index into a (match/substitute/gap_a)
  std::size_t j = 0;  // index into b (match/substitute/gap_b)
};

struct Alignment {
  std::size_t cost = 0;
  std::vector<AlignOp> ops;
};

template <class SeqA, class SeqB>
Alignment levenshtein_align(const SeqA& a, const SeqB& b) {
  const std::size_t la = a.size(), lb = b.size();
  const std::size_t cap = std::max<std::size_t>(std::max(la, lb), 1);
  std::vector<std::vector<int>> rows;
  std::size_t w = std::max<std::size_t>(1, la > lb ? la - lb : lb - la);
  int dist;
  for (;; w *= 2) {
    w = std::min(w, cap);
    dist = detail::levenshtein_band_pass(a, b, w, &rows);
    if ((dist < detail::kLevInf && static_cast<std::size_t>(dist) <= w) ||
        w >= cap)
      break;
  }

  Alignment result;
  result.cost = static_cast<std::size_t>(dist);
  const std::size_t width = 2 * w + 1;
  auto cell = [&](std::size_t i, std::size_t j) -> int {
    if (j + w < i || j > i + w || j - i + w >= width) return detail::kLevInf;
    return rows[i][j - i + w];
  };
  std::size_t i = la, j = lb;
  std::vector<AlignOp> rev;
  while (i > 0 || j > 0) {
    int here = cell(i, j);
    if (i > 0 && j > 0 &&
        cell(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1) == here) {
      rev.push_back({a[i - 1] == b[j - 1] ? AlignOp::Kind::match
                                          : AlignOp::Kind::substitute,
                     i - 1, j - 1});
      --i;
      --j;
    } else if (i > 0 && cell(i - 1, j) + 1 == here) {
      rev.push_back({AlignOp::Kind::gap_a, i - 1, 0});
      --i;
    } else if (j > 0 && cell(i, j - 1) + 1 == here) {
      rev.push_back({AlignOp::Kind::gap_b, 0, j - 1});
      --j;
    } else {
      throw InternalError("alignment traceback left the band");
    }
  }
  result.ops.assign(rev.rbegin(), rev.rend());
  return result;
}

// ---------------------------------------------------------------------------
// StrEdit adapter for one open run R followed (not necessarily adjacently)
// by one close run T: the edit distance of R . T to Dyck equals the string
// edit distance between R and the reversed congruent image of T. Alignment
// substitutions edit the close side; gaps delete the unmatched symbol.
// ---------------------------------------------------------------------------

struct StrEditOutcome {
  std::size_t cost = 0;
  EditScript repairs;  // ops on original indices of the host string
};

namespace detail {

inline std::vector<ParenSymbol> open_image_of_closes(
    const ParenString& s, std::span<const std::size_t> closes) {
  std::vector<ParenSymbol> b;
  b.reserve(closes.size());
  for (std::size_t j = closes.size(); j-- > 0;) b.push_back(congruent(s[closes[j]]));
  return b;
}

inline void check_run_polarity(const ParenString& s,
                               std::span<const std::size_t> opens,
                               std::span<const std::size_t> closes) {
  for (std::size_t i : opens)
    if (!s[i].is_open()) throw UsageError("open run contains a close symbol");
  for (std::size_t j : closes)
    if (s[j].is_open()) throw UsageError("close run contains an open symbol");
}

}  // namespace detail

inline std::size_t match_runs_cost(const ParenString& s,
                                   std::span<const std::size_t> opens,
                                   std::span<const std::size_t> closes) {
  detail::check_run_polarity(s, opens, closes);
  std::vector<ParenSymbol> a;
  a.reserve(opens.size());
  for (std::size_t i : opens) a.push_back(s[i]);
  return levenshtein(a, detail::open_image_of_closes(s, closes));
}

inline StrEditOutcome match_runs(const ParenString& s,
                                 std::span<const std::size_t> opens,
                                 std::span<const std::size_t> closes) {
  detail::check_run_polarity(s, opens, closes);
  std::vector<ParenSymbol> a;
  a.reserve(opens.size());
  for (std::size_t i : opens) a.push_back(s[i]);
  std::vector<ParenSymbol> b = detail::open_image_of_closes(s, closes);
  Alignment align = levenshtein_align(a, b);

  const std::size_t m = closes.size();
  StrEditOutcome out;
  out.cost = align.cost;
  for (const AlignOp& op : align.ops) {
    switch (op.kind) {
      case AlignOp::Kind::match:
        break;
      case AlignOp::Kind::substitute:
        out.repairs.ops.push_back(
            substitute_op(closes[m - 1 - op.j] + 1, congruent(a[op.i])));
        break;
      case AlignOp::Kind::gap_a:
        out.repairs.ops.push_back(delete_op(opens[op.i] + 1));
        break;
      case AlignOp::Kind::gap_b:
        out.repairs.ops.push_back(delete_op(closes[m - 1 - op.j] + 1));
        break;
    }
  }
  if (out.repairs.cost() != out.cost)
    throw InternalError("string edit repair count disagrees with its cost");
  return out;
}

}  // namespace dyck
