#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "dyck/core.hpp"
#include "dyck/memcheck.hpp"
#include "dyck/rng.hpp"

namespace dyck {

struct GenResult {
  ParenString str;
  std::size_t planted = 0;  // true OPT is at most this
};

namespace detail {

// Sampler for balanced +-1 shapes: at every position the next step is drawn
// with probability proportional to the number of completions, using the
// ballot count f(m, h) = ((h+1)/(m+1)) C(m+1, (m-h)/2) of nonnegative paths
// of length m from height h to 0, evaluated in log space.
class BalancedShapeSampler {
 public:
  explicit BalancedShapeSampler(std::size_t n) : lg_(n + 3) {
    for (std::size_t i = 0; i < lg_.size(); ++i)
      lg_[i] = std::lgamma(static_cast<double>(i) + 1.0);
  }

  double log_paths(std::size_t m, std::size_t h) const {
    if (h > m || (m - h) % 2 != 0) return -1e300;
    const std::size_t k = (m - h) / 2;
    return std::log(static_cast<double>(h + 1)) -
           std::log(static_cast<double>(m + 1)) + lg_[m + 1] - lg_[k] -
           lg_[m + 1 - k];
  }

  // true = open (step up)
  bool draw(std::size_t remaining, std::size_t height, Rng& rng) const {
    if (height == 0) return true;
    if (height == remaining) return false;
    const double p_open =
        std::exp(log_paths(remaining - 1, height + 1) - log_paths(remaining, height));
    return rng.uniform() < p_open;
  }

 private:
  std::vector<double> lg_;  // lg_[i] = lgamma(i + 1)
};

}  // namespace detail

// Uniform-ish well-formed string of even length n over s types (types chosen
// uniformly per matched pair), then k random edits. Each edit is reversible
// by one edit, so the true distance is at most k.
inline GenResult gen_instance(std::size_t n, std::uint32_t s, std::size_t k,
                              std::uint64_t seed) {
  if (n % 2 != 0) throw UsageError("instance length must be even");
  if (s < 1) throw UsageError("alphabet size must be >= 1");
  Rng rng(seed);

  std::vector<ParenSymbol> symbols(n);
  if (n > 0) {
    detail::BalancedShapeSampler sampler(n);
    std::vector<std::size_t> stack;
    std::size_t height = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (sampler.draw(n - i, height, rng)) {
        stack.push_back(i);
        ++height;
      } else {
        std::uint32_t type = static_cast<std::uint32_t>(rng.below(s));
        symbols[stack.back()] = open_paren(type);
        symbols[i] = close_paren(type);
        stack.pop_back();
        --height;
      }
    }
    if (height != 0) throw InternalError("shape sampler left the walk open");
  }

  auto symbol_from_code = [](std::uint64_t code) {
    return ParenSymbol{static_cast<std::uint32_t>(code >> 1),
                       (code & 1) ? Polarity::close : Polarity::open};
  };
  const std::uint64_t nsyms = 2ull * s;
  for (std::size_t e = 0; e < k; ++e) {
    std::uint64_t kind = symbols.empty() ? 2 : rng.below(3);
    // Substitutions retype but keep polarity; with one type they cannot
    // damage anything, so fall back to a deletion or insertion.
    if (kind == 1 && s == 1) kind = rng.coin() ? 0 : 2;
    if (kind == 0) {
      symbols.erase(symbols.begin() +
                    static_cast<std::ptrdiff_t>(rng.below(symbols.size())));
    } else if (kind == 1) {
      std::size_t pos = rng.below(symbols.size());
      std::uint32_t shift = 1 + static_cast<std::uint32_t>(rng.below(s - 1));
      symbols[pos].type_id = (symbols[pos].type_id + shift) % s;
    } else {
      std::size_t pos = rng.below(symbols.size() + 1);
      symbols.insert(symbols.begin() + static_cast<std::ptrdiff_t>(pos),
                     symbol_from_code(rng.below(nsyms)));
    }
  }

  GenResult out;
  out.str.symbols = std::move(symbols);
  out.str.alphabet_size = s;
  out.planted = k;
  return out;
}

// Valid transcript of n ops (n/2 insertions), then k corruptions chosen among
// deleting an op, renaming a key, and swapping two ops.
inline Transcript gen_transcript(Language lang, std::size_t n, std::size_t k,
                                 std::uint64_t seed) {
  if (n % 2 != 0) throw UsageError("transcript length must be even");
  Rng rng(seed);
  const std::size_t ins_total = n / 2;
  const std::size_t pool = std::max<std::size_t>(1, std::min<std::size_t>(12, ins_total));
  auto key_name = [](std::size_t i) { return "k" + std::to_string(i); };

  Transcript t;
  t.language = lang;
  std::size_t ins_used = 0;

  std::vector<std::pair<std::string, std::int64_t>> stack_live;  // stack & pq & queue
  std::deque<std::string> deque_live;

  auto live_size = [&] {
    return lang == Language::deque ? deque_live.size() : stack_live.size();
  };
  while (ins_used < ins_total || live_size() > 0) {
    const bool can_ins = ins_used < ins_total;
    const bool do_ins = can_ins && (live_size() == 0 || rng.coin());
    TranscriptOp op;
    if (do_ins) {
      op.kind = OpKind::ins;
      op.key = key_name(rng.below(pool));
      ++ins_used;
      switch (lang) {
        case Language::stack:
          stack_live.emplace_back(op.key, 0);
          break;
        case Language::queue:
          stack_live.emplace_back(op.key, 0);
          break;
        case Language::pq: {
          op.priority = static_cast<std::int64_t>(rng.below(2 * ins_total + 1));
          stack_live.emplace_back(op.key, *op.priority);
          break;
        }
        case Language::deque: {
          op.end = rng.coin() ? DequeEnd::head : DequeEnd::tail;
          if (*op.end == DequeEnd::head)
            deque_live.push_front(op.key);
          else
            deque_live.push_back(op.key);
          break;
        }
      }
    } else {
      op.kind = OpKind::ext;
      switch (lang) {
        case Language::stack:
          op.key = stack_live.back().first;
          stack_live.pop_back();
          break;
        case Language::queue:
          op.key = stack_live.front().first;
          stack_live.erase(stack_live.begin());
          break;
        case Language::pq: {
          std::size_t best = 0;
          for (std::size_t i = 1; i < stack_live.size(); ++i)
            if (stack_live[i].second < stack_live[best].second) best = i;
          op.key = stack_live[best].first;
          stack_live.erase(stack_live.begin() +
                           static_cast<std::ptrdiff_t>(best));
          break;
        }
        case Language::deque: {
          op.end = rng.coin() ? DequeEnd::head : DequeEnd::tail;
          if (*op.end == DequeEnd::head) {
            op.key = deque_live.front();
            deque_live.pop_front();
          } else {
            op.key = deque_live.back();
            deque_live.pop_back();
          }
          break;
        }
      }
    }
    t.ops.push_back(std::move(op));
  }

  for (std::size_t e = 0; e < k && !t.ops.empty(); ++e) {
    switch (rng.below(3)) {
      case 0:
        t.ops.erase(t.ops.begin() +
                    static_cast<std::ptrdiff_t>(rng.below(t.ops.size())));
        break;
      case 1:
        t.ops[rng.below(t.ops.size())].key = key_name(rng.below(pool));
        break;
      default: {
        std::size_t a = rng.below(t.ops.size());
        std::size_t b = rng.below(t.ops.size());
        std::swap(t.ops[a], t.ops[b]);
        break;
      }
    }
  }
  return t;
}

}  // namespace dyck
