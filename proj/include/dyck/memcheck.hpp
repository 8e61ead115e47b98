#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dyck/core.hpp"
#include "dyck/phased.hpp"
#include "dyck/randomdel.hpp"
#include "dyck/refined.hpp"
#include "dyck/rng.hpp"

namespace dyck {

enum class Language : std::uint8_t { stack, queue, pq, deque };
enum class OpKind : std::uint8_t { ins, ext };
enum class DequeEnd : std::uint8_t { head, tail };

struct TranscriptOp {
  OpKind kind = OpKind::ins;
  std::string key;
  std::optional<std::int64_t> priority;  // PQ insertions only
  std::optional<DequeEnd> end;           // deque only

  friend bool operator==(const TranscriptOp&, const TranscriptOp&) = default;
};

struct Transcript {
  std::vector<TranscriptOp> ops;
  Language language = Language::stack;
};

// ---------------------------------------------------------------------------
// File format: one op per line. `I <key>` / `E <key>`; PQ insertions carry an
// integer priority `I <key> <priority>`; deque ops are `IH|IT|EH|ET <key>`.
// ---------------------------------------------------------------------------

inline Transcript parse_transcript(std::string_view text, Language lang) {
  Transcript t;
  t.language = lang;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (fields.empty()) continue;

    TranscriptOp op;
    std::string_view tag = fields[0];
    if (lang == Language::deque) {
      if (tag == "IH" || tag == "IT") {
        op.kind = OpKind::ins;
        op.end = tag == "IH" ? DequeEnd::head : DequeEnd::tail;
      } else if (tag == "EH" || tag == "ET") {
        op.kind = OpKind::ext;
        op.end = tag == "EH" ? DequeEnd::head : DequeEnd::tail;
      } else {
        throw ParseError("expected IH/IT/EH/ET", line_no);
      }
      if (fields.size() != 2) throw ParseError("expected one key", line_no);
      op.key = std::string(fields[1]);
    } else {
      if (tag == "I")
        op.kind = OpKind::ins;
      else if (tag == "E")
        op.kind = OpKind::ext;
      else
        throw ParseError("expected I or E", line_no);
      const bool wants_priority = lang == Language::pq && op.kind == OpKind::ins;
      if (fields.size() != (wants_priority ? 3u : 2u))
        throw ParseError(wants_priority ? "expected key and priority"
                                        : "expected one key",
                         line_no);
      op.key = std::string(fields[1]);
      if (wants_priority) {
        try {
          op.priority = std::stoll(std::string(fields[2]));
        } catch (const std::exception&) {
          throw ParseError("priority is not an integer", line_no);
        }
      }
    }
    t.ops.push_back(std::move(op));
  }
  return t;
}

inline std::string format_transcript(const Transcript& t) {
  std::string out;
  for (const TranscriptOp& op : t.ops) {
    if (t.language == Language::deque) {
      out += op.kind == OpKind::ins ? "I" : "E";
      out += op.end == DequeEnd::head ? "H" : "T";
    } else {
      out += op.kind == OpKind::ins ? "I" : "E";
    }
    out += ' ';
    out += op.key;
    if (op.priority) {
      out += ' ';
      out += std::to_string(*op.priority);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validators: simulate the declared structure; the structure must start and
// end empty, and every extraction must name the element the discipline
// requires (top / front / a current minimum / declared end).
// ---------------------------------------------------------------------------

inline bool validate(const Transcript& t) {
  switch (t.language) {
    case Language::stack: {
      std::vector<const std::string*> stack;
      for (const TranscriptOp& op : t.ops) {
        if (op.kind == OpKind::ins) {
          stack.push_back(&op.key);
        } else {
          if (stack.empty() || *stack.back() != op.key) return false;
          stack.pop_back();
        }
      }
      return stack.empty();
    }
    case Language::queue: {
      std::deque<const std::string*> q;
      for (const TranscriptOp& op : t.ops) {
        if (op.kind == OpKind::ins) {
          q.push_back(&op.key);
        } else {
          if (q.empty() || *q.front() != op.key) return false;
          q.pop_front();
        }
      }
      return q.empty();
    }
    case Language::pq: {
      std::multimap<std::int64_t, const std::string*> live;
      for (const TranscriptOp& op : t.ops) {
        if (op.kind == OpKind::ins) {
          live.emplace(op.priority.value_or(0), &op.key);
        } else {
          if (live.empty()) return false;
          auto [lo, hi] = live.equal_range(live.begin()->first);
          auto it = lo;
          while (it != hi && *it->second != op.key) ++it;
          if (it == hi) return false;
          live.erase(it);
        }
      }
      return live.empty();
    }
    case Language::deque: {
      std::deque<const std::string*> d;
      for (const TranscriptOp& op : t.ops) {
        if (op.kind == OpKind::ins) {
          if (op.end == DequeEnd::head)
            d.push_front(&op.key);
          else
            d.push_back(&op.key);
        } else {
          if (d.empty()) return false;
          if (op.end == DequeEnd::head) {
            if (*d.front() != op.key) return false;
            d.pop_front();
          } else {
            if (*d.back() != op.key) return false;
            d.pop_back();
          }
        }
      }
      return d.empty();
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// STACK(s) = Dyck(s): ins(u) -> u, ext(u) -> congruent(u), keys interned in
// first-appearance order.
// ---------------------------------------------------------------------------

struct DyckMapping {
  ParenString str;
  std::vector<std::string> keys;  // type_id -> key
};

inline DyckMapping stack_to_dyck(const Transcript& t) {
  if (t.language != Language::stack)
    throw UsageError("stack_to_dyck requires a stack transcript");
  DyckMapping m;
  std::unordered_map<std::string, std::uint32_t> ids;
  for (const TranscriptOp& op : t.ops) {
    if (op.priority || op.end)
      throw UsageError("stack ops must not carry priorities or ends");
    auto [it, inserted] =
        ids.emplace(op.key, static_cast<std::uint32_t>(m.keys.size()));
    if (inserted) m.keys.push_back(op.key);
    m.str.symbols.push_back(op.kind == OpKind::ins ? open_paren(it->second)
                                                   : close_paren(it->second));
  }
  m.str.alphabet_size =
      m.keys.empty() ? 1 : static_cast<std::uint32_t>(m.keys.size());
  m.str.type_names = m.keys;
  return m;
}

// ---------------------------------------------------------------------------
// Repair
// ---------------------------------------------------------------------------

enum class RepairAlgo : std::uint8_t { random, refined, phased };

struct TranscriptRepair {
  Transcript transcript;
  std::size_t cost = 0;
};

namespace detail {

struct LiveElem {
  std::uint32_t key;
  std::int64_t priority;
  std::size_t op_index;
  std::size_t seq;
};

// PQ variant of Random-deletion: on the transition from an insert run to an
// extract run the live stack is reordered so the minimum-priority element is
// on top (stable: FIFO among equal priorities); matching then compares keys
// against the top. Deletions and matches pop the top, which preserves
// sortedness until the next insert run.
inline std::size_t pq_deletion_pass(const std::vector<TranscriptOp>& ops,
                                    const std::vector<std::int64_t>& priority,
                                    const std::vector<std::uint32_t>& key_id,
                                    Rng& rng, std::vector<char>& deleted) {
  deleted.assign(ops.size(), 0);
  std::vector<LiveElem> live;
  std::size_t cost = 0;
  bool needs_sort = false;
  for (std::size_t j = 0; j < ops.size(); ++j) {
    if (ops[j].kind == OpKind::ins) {
      live.push_back({key_id[j], priority[j], j, j});
      needs_sort = true;
      continue;
    }
    if (needs_sort) {
      std::stable_sort(live.begin(), live.end(),
                       [](const LiveElem& a, const LiveElem& b) {
                         if (a.priority != b.priority)
                           return a.priority > b.priority;
                         return a.seq > b.seq;
                       });
      needs_sort = false;
    }
    for (;;) {
      if (live.empty()) {
        deleted[j] = 1;
        ++cost;
        break;
      }
      if (live.back().key == key_id[j]) {
        live.pop_back();
        break;
      }
      if (rng.coin()) {
        deleted[live.back().op_index] = 1;
        live.pop_back();
        ++cost;
      } else {
        deleted[j] = 1;
        ++cost;
        break;
      }
    }
  }
  for (const LiveElem& e : live) {
    deleted[e.op_index] = 1;
    ++cost;
  }
  return cost;
}

// Deque lockstep: the tail-extract instance (stack discipline) and the
// head-extract instance (queue discipline) share one live sequence, so
// deleting an insertion in one is automatically a deletion in the other;
// processing ops in transcript order makes whichever instance holds the
// smaller-indexed pending extraction move first.
inline std::size_t deque_deletion_pass(const std::vector<TranscriptOp>& ops,
                                       const std::vector<std::uint32_t>& key_id,
                                       Rng& rng, std::vector<char>& deleted) {
  deleted.assign(ops.size(), 0);
  std::deque<LiveElem> live;
  std::size_t cost = 0;
  for (std::size_t j = 0; j < ops.size(); ++j) {
    if (ops[j].kind == OpKind::ins) {
      if (ops[j].end == DequeEnd::head)
        live.push_front({key_id[j], 0, j, j});
      else
        live.push_back({key_id[j], 0, j, j});
      continue;
    }
    const bool head = ops[j].end == DequeEnd::head;
    for (;;) {
      if (live.empty()) {
        deleted[j] = 1;
        ++cost;
        break;
      }
      const LiveElem& cand = head ? live.front() : live.back();
      if (cand.key == key_id[j]) {
        if (head)
          live.pop_front();
        else
          live.pop_back();
        break;
      }
      if (rng.coin()) {
        deleted[cand.op_index] = 1;
        ++cost;
        if (head)
          live.pop_front();
        else
          live.pop_back();
      } else {
        deleted[j] = 1;
        ++cost;
        break;
      }
    }
  }
  for (const LiveElem& e : live) {
    deleted[e.op_index] = 1;
    ++cost;
  }
  return cost;
}

inline std::vector<std::uint32_t> intern_keys(const Transcript& t) {
  std::vector<std::uint32_t> ids(t.ops.size());
  std::unordered_map<std::string_view, std::uint32_t> table;
  for (std::size_t j = 0; j < t.ops.size(); ++j) {
    auto [it, inserted] = table.emplace(
        t.ops[j].key, static_cast<std::uint32_t>(table.size()));
    ids[j] = it->second;
  }
  return ids;
}

}  // namespace detail

// Repairs a transcript so it validates. Stack goes through the Dyck
// reduction and back (cost and coin consumption identical to repairing the
// mapped string); queue, priority queue and deque run the boosted
// deletion pass, best of `iterations` substreams. Queue priorities are the
// insertion sequence numbers.
inline TranscriptRepair repair(const Transcript& t, std::uint64_t seed,
                               RepairAlgo algo = RepairAlgo::random,
                               std::size_t iterations = 0) {
  if (iterations == 0) iterations = default_iterations(t.ops.size());

  if (t.language == Language::stack) {
    DyckMapping m = stack_to_dyck(t);
    RepairResult r;
    switch (algo) {
      case RepairAlgo::random:
        r = repair_random(m.str, iterations, seed);
        break;
      case RepairAlgo::refined:
        r = repair_refined(m.str, seed, iterations);
        break;
      case RepairAlgo::phased:
        r = repair_phased(m.str, seed, iterations);
        break;
    }
    TranscriptRepair out;
    out.cost = r.cost;
    std::vector<char> drop(t.ops.size(), 0);
    std::vector<std::optional<TranscriptOp>> replaced(t.ops.size());
    for (const EditOp& op : r.script.ops) {
      if (op.kind == EditOp::Kind::del) {
        drop[op.index - 1] = 1;
      } else if (op.kind == EditOp::Kind::substitute) {
        TranscriptOp rop;
        rop.kind = op.symbol.is_open() ? OpKind::ins : OpKind::ext;
        rop.key = m.keys.at(op.symbol.type_id);
        replaced[op.index - 1] = std::move(rop);
      } else {
        throw InternalError("dyck repair produced an insertion");
      }
    }
    out.transcript.language = t.language;
    for (std::size_t j = 0; j < t.ops.size(); ++j) {
      if (drop[j]) continue;
      out.transcript.ops.push_back(replaced[j] ? *replaced[j] : t.ops[j]);
    }
    return out;
  }

  std::vector<std::uint32_t> key_id = detail::intern_keys(t);
  std::vector<std::int64_t> priority(t.ops.size(), 0);
  if (t.language == Language::pq) {
    for (std::size_t j = 0; j < t.ops.size(); ++j)
      priority[j] = t.ops[j].priority.value_or(0);
  } else {
    for (std::size_t j = 0; j < t.ops.size(); ++j)
      priority[j] = static_cast<std::int64_t>(j);
  }

  std::vector<char> deleted, best_deleted;
  std::size_t best_cost = 0;
  bool have = false;
  for (std::size_t iter = 0; iter < iterations; ++iter) {
    Rng rng = Rng::substream(seed, iter);
    std::size_t cost =
        t.language == Language::deque
            ? detail::deque_deletion_pass(t.ops, key_id, rng, deleted)
            : detail::pq_deletion_pass(t.ops, priority, key_id, rng, deleted);
    if (!have || cost < best_cost) {
      best_cost = cost;
      best_deleted = deleted;
      have = true;
    }
  }

  TranscriptRepair out;
  out.cost = best_cost;
  out.transcript.language = t.language;
  for (std::size_t j = 0; j < t.ops.size(); ++j)
    if (!best_deleted[j]) out.transcript.ops.push_back(t.ops[j]);
  return out;
}

// Deletion-only transcript oracle: minimum number of op deletions making the
// transcript validate, by subset search in increasing cardinality.
inline std::optional<std::size_t> brute_force_transcript_distance(
    const Transcript& t, std::size_t max_cost) {
  const std::size_t n = t.ops.size();
  if (n > 16) throw UsageError("transcript brute force limited to 16 ops");
  std::vector<std::vector<std::uint32_t>> by_deletions(n + 1);
  for (std::uint32_t keep = 0; keep < (1u << n); ++keep)
    by_deletions[n - static_cast<std::size_t>(__builtin_popcount(keep))]
        .push_back(keep);
  Transcript sub;
  sub.language = t.language;
  for (std::size_t c = 0; c <= std::min(max_cost, n); ++c) {
    for (std::uint32_t keep : by_deletions[c]) {
      sub.ops.clear();
      for (std::size_t j = 0; j < n; ++j)
        if (keep & (1u << j)) sub.ops.push_back(t.ops[j]);
      if (validate(sub)) return c;
    }
  }
  return std::nullopt;
}

}  // namespace dyck
