#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dyck/core.hpp"
#include "dyck/preprocess.hpp"
#include "dyck/randomdel.hpp"
#include "dyck/refined.hpp"
#include "dyck/stredit.hpp"

namespace dyck {

struct PhaseBlock {
  std::size_t level = 1;
  std::vector<std::size_t> opens;   // surviving Y, ascending original indices
  std::vector<std::size_t> closes;  // surviving X, ascending
  std::pair<std::size_t, std::size_t> span{0, 0};  // covered phase-1 block ids
};

enum class LeftoverKind : std::uint8_t { open_run, close_run, empty };

struct LocalWindow {
  std::size_t block_index = 0;
  std::pair<std::uint32_t, std::uint32_t> event_range{0, 0};  // event times
  std::vector<std::size_t> opens;   // L intersected with Y, ascending
  std::vector<std::size_t> closes;  // L intersected with X, ascending
};

struct PhaseResult {
  std::vector<LocalWindow> windows;          // one per block, in block order
  std::vector<LeftoverKind> leftovers;       // per block
};

// Segments one Random-deletion trace into per-phase local windows. A block's
// window opens at the first unconsumed event touching the block (pops made
// while comparing the block's first surviving close count as the start of
// its processing) and stays open while events stay confined to the block: it
// ends when the block's surviving X is exhausted or when the next unconsumed
// event touches anything outside the block (the process drilled into an
// earlier block's leftovers, which only happens once the block's surviving Y
// is gone). Empty-stack close deletions after Y runs out touch only the
// block and so remain part of its window. Windows of one phase are disjoint
// and ordered in trace time; whatever they skip stays for a later phase.
class PhasedSegmenter {
 public:
  explicit PhasedSegmenter(const RdTrace& trace)
      : trace_(&trace), consumed_(trace.events.size(), 0) {}

  PhaseResult segment(const std::vector<PhaseBlock>& blocks) {
    const auto& events = trace_->events;
    rebuild_membership(blocks);
    PhaseResult result;
    std::size_t ptr = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::size_t rem_opens = blocks[b].opens.size();
      std::size_t rem_closes = blocks[b].closes.size();
      if (rem_opens == 0 || rem_closes == 0)
        throw InternalError("phase block with an empty side");
      LocalWindow window;
      window.block_index = b;
      bool started = false;
      while (rem_closes > 0) {
        while (ptr < events.size() && consumed_[ptr]) ++ptr;
        if (ptr >= events.size())
          throw InternalError("trace exhausted before block window closed");
        const RdEvent& e = events[ptr];
        const bool has_open = e.open_index != knpos;
        const bool has_close = e.close_index != knpos;
        const bool open_in_b =
            has_open && owner(e.open_index) == static_cast<long>(b);
        const bool close_in_b =
            has_close && owner(e.close_index) == static_cast<long>(b);
        const bool confined =
            (open_in_b || close_in_b) && (!has_open || open_in_b) &&
            (!has_close || close_in_b);
        if (!confined) {
          if (!started) {
            ++ptr;  // between-window material for a later phase
            continue;
          }
          if (rem_opens > 0)
            throw InternalError("window overlap: foreign event inside window");
          break;  // the scan left the block; the window is over
        }
        if (!started) {
          started = true;
          window.event_range.first = e.time;
        }
        window.event_range.second = e.time;
        switch (e.kind) {
          case RdKind::match:
            window.opens.push_back(e.open_index);
            window.closes.push_back(e.close_index);
            --rem_opens;
            --rem_closes;
            break;
          case RdKind::delete_open:
            window.opens.push_back(e.open_index);
            --rem_opens;
            break;
          case RdKind::delete_close:
            window.closes.push_back(e.close_index);
            --rem_closes;
            break;
          case RdKind::flush_open:
            throw InternalError("flush event inside an active window");
        }
        consumed_[ptr] = 1;
        ++ptr;
      }
      std::sort(window.opens.begin(), window.opens.end());
      std::sort(window.closes.begin(), window.closes.end());
      result.windows.push_back(std::move(window));
      result.leftovers.push_back(rem_opens > 0
                                     ? LeftoverKind::open_run
                                     : (rem_closes > 0 ? LeftoverKind::close_run
                                                       : LeftoverKind::empty));
    }
    return result;
  }

  // Marks the only event touching `index` as consumed; used for the
  // between-phase strip deletions. Stripped symbols were never matched with a
  // survivor, so their events are single-index ones.
  void consume_index_event(std::size_t index) {
    const auto& events = trace_->events;
    if (event_of_.empty()) build_event_index();
    std::size_t k = event_of_[slot(index)];
    if (consumed_[k]) throw InternalError("stripped index already consumed");
    const RdEvent& e = events[k];
    if (e.kind == RdKind::match)
      throw InternalError("stripped index belongs to a match event");
    consumed_[k] = 1;
  }

 private:
  void build_event_index() {
    const auto& events = trace_->events;
    event_of_.assign(index_universe_.size(), knpos);
    for (std::size_t k = 0; k < events.size(); ++k) {
      if (events[k].open_index != knpos)
        event_of_[slot(events[k].open_index)] = k;
      if (events[k].close_index != knpos)
        event_of_[slot(events[k].close_index)] = k;
    }
  }

  void rebuild_membership(const std::vector<PhaseBlock>& blocks) {
    if (index_universe_.empty()) {
      // All indices ever referenced: collect from the trace once.
      for (const RdEvent& e : trace_->events) {
        if (e.open_index != knpos) index_universe_.push_back(e.open_index);
        if (e.close_index != knpos) index_universe_.push_back(e.close_index);
      }
      std::sort(index_universe_.begin(), index_universe_.end());
      owner_.assign(index_universe_.size(), -1);
    }
    std::fill(owner_.begin(), owner_.end(), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (std::size_t i : blocks[b].opens) owner_[slot(i)] = static_cast<long>(b);
      for (std::size_t i : blocks[b].closes) owner_[slot(i)] = static_cast<long>(b);
    }
  }

  std::size_t slot(std::size_t original_index) const {
    auto it = std::lower_bound(index_universe_.begin(), index_universe_.end(),
                               original_index);
    if (it == index_universe_.end() || *it != original_index)
      throw InternalError("index missing from trace universe");
    return static_cast<std::size_t>(it - index_universe_.begin());
  }

  long owner(std::size_t original_index) const {
    auto it = std::lower_bound(index_universe_.begin(), index_universe_.end(),
                               original_index);
    if (it == index_universe_.end() || *it != original_index) return -1;
    return owner_[static_cast<std::size_t>(it - index_universe_.begin())];
  }

  const RdTrace* trace_;
  std::vector<char> consumed_;
  std::vector<std::size_t> index_universe_;
  std::vector<long> owner_;
  std::vector<std::size_t> event_of_;
};

struct PhasedStats {
  std::size_t iterations = 0;
  std::size_t z = 0;
  std::size_t max_phases = 0;        // maximum over iterations
  std::size_t winner_phases = 0;
  // Winner accounting; together with 2 * matched_pairs these partition [1, n].
  std::size_t matched_pair_symbols = 0;
  std::size_t forced_deletions = 0;
  std::size_t window_symbols = 0;
  std::size_t strip_deletions = 0;
};

namespace detail {

struct PhasedIterationOutcome {
  std::size_t cost = 0;
  std::size_t phases = 0;
  std::size_t window_symbols = 0;
  std::size_t strip_deletions = 0;
};

// One full iteration: run Random-deletion once over the residual and consume
// its trace phase by phase. When `script` is given, window repairs and strip
// deletions are appended to it.
inline PhasedIterationOutcome phased_iteration(const ParenString& p,
                                               const BlockDecomposition& dec,
                                               std::span<const std::size_t> positions,
                                               Rng rng, EditScript* script) {
  PhasedIterationOutcome out;
  RdTrace trace = rd_run_positions(p, positions, rng);
  PhasedSegmenter segmenter(trace);

  std::vector<PhaseBlock> blocks;
  blocks.reserve(dec.blocks.size());
  for (std::size_t a = 0; a < dec.blocks.size(); ++a)
    blocks.push_back(
        {1, dec.blocks[a].opens, dec.blocks[a].closes, {a, a}});

  while (!blocks.empty()) {
    ++out.phases;
    PhaseResult phase = segmenter.segment(blocks);
    for (const LocalWindow& w : phase.windows) {
      out.window_symbols += w.opens.size() + w.closes.size();
      if (script) {
        StrEditOutcome outcome = match_runs(p, w.opens, w.closes);
        out.cost += outcome.cost;
        script->ops.insert(script->ops.end(), outcome.repairs.ops.begin(),
                           outcome.repairs.ops.end());
      } else {
        out.cost += match_runs_cost(p, w.opens, w.closes);
      }
    }

    // Re-block: surviving sides of the old blocks, merged across consecutive
    // runs of the same kind, with leading closes and trailing opens stripped.
    struct Item {
      LeftoverKind kind;
      std::vector<std::size_t> indices;
      std::pair<std::size_t, std::size_t> span;
    };
    std::vector<Item> items;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      LeftoverKind kind = phase.leftovers[b];
      if (kind == LeftoverKind::empty) continue;
      const std::vector<std::size_t>& full =
          kind == LeftoverKind::open_run ? blocks[b].opens : blocks[b].closes;
      const std::vector<std::size_t>& used = kind == LeftoverKind::open_run
                                                 ? phase.windows[b].opens
                                                 : phase.windows[b].closes;
      std::vector<std::size_t> remaining;
      std::set_difference(full.begin(), full.end(), used.begin(), used.end(),
                          std::back_inserter(remaining));
      if (remaining.empty())
        throw InternalError("leftover classification disagrees with window");
      if (!items.empty() && items.back().kind == kind) {
        items.back().indices.insert(items.back().indices.end(),
                                    remaining.begin(), remaining.end());
        items.back().span.second = blocks[b].span.second;
      } else {
        items.push_back({kind, std::move(remaining), blocks[b].span});
      }
    }

    std::size_t lo = 0, hi = items.size();
    while (lo < hi && items[lo].kind == LeftoverKind::close_run) ++lo;
    while (hi > lo && items[hi - 1].kind == LeftoverKind::open_run) --hi;
    auto strip = [&](const Item& item) {
      out.strip_deletions += item.indices.size();
      out.cost += item.indices.size();
      for (std::size_t idx : item.indices) {
        segmenter.consume_index_event(idx);
        if (script) script->ops.push_back(delete_op(idx + 1));
      }
    };
    for (std::size_t i = 0; i < lo; ++i) strip(items[i]);
    for (std::size_t i = hi; i < items.size(); ++i) strip(items[i]);

    std::vector<PhaseBlock> next;
    const std::size_t level = blocks.empty() ? 1 : blocks.front().level + 1;
    for (std::size_t i = lo; i + 1 < hi; i += 2) {
      if (items[i].kind != LeftoverKind::open_run ||
          items[i + 1].kind != LeftoverKind::close_run)
        throw InternalError("merged leftovers do not alternate");
      next.push_back({level, std::move(items[i].indices),
                      std::move(items[i + 1].indices),
                      {items[i].span.first, items[i + 1].span.second}});
    }
    if (next.size() > blocks.size() / 2)
      throw InternalError("re-blocking failed to halve the block count");
    blocks = std::move(next);
  }
  return out;
}

}  // namespace detail

// Main phased algorithm: one Random-deletion run per iteration, trace
// segmented into per-phase local windows, StrEdit per window, re-blocking
// between phases; returns the minimum-cost iteration. Losing iterations are
// costed without building scripts; the winner is replayed with scripts.
inline RepairResult repair_phased(const ParenString& p, std::uint64_t seed,
                                  std::size_t iterations = 0,
                                  PhasedStats* stats = nullptr) {
  if (iterations == 0) iterations = default_iterations(p.size());
  BlockDecomposition dec = decompose(p);
  std::vector<std::size_t> positions = detail::block_positions(dec);
  const std::size_t base_cost = dec.forced_deletions.size();

  std::size_t best_cost = 0, best_iter = 0, max_phases = 0;
  bool have = false;
  for (std::size_t iter = 0; iter < iterations; ++iter) {
    auto outcome = detail::phased_iteration(p, dec, positions,
                                            Rng::substream(seed, iter), nullptr);
    max_phases = std::max(max_phases, outcome.phases);
    if (!have || base_cost + outcome.cost < best_cost) {
      best_cost = base_cost + outcome.cost;
      best_iter = iter;
      have = true;
    }
  }

  RepairResult result;
  for (std::size_t idx : dec.forced_deletions)
    result.script.ops.push_back(delete_op(idx + 1));
  auto winner = detail::phased_iteration(
      p, dec, positions, Rng::substream(seed, best_iter), &result.script);
  result.cost = result.script.cost();
  if (result.cost != base_cost + winner.cost)
    throw InternalError("phased script cost disagrees with tracked cost");
  result.repaired = apply_script(p, result.script);

  if (stats) {
    stats->iterations = iterations;
    stats->z = dec.blocks.size();
    stats->max_phases = std::max(max_phases, winner.phases);
    stats->winner_phases = winner.phases;
    stats->matched_pair_symbols = dec.matched_pairs.size() * 2;
    stats->forced_deletions = dec.forced_deletions.size();
    stats->window_symbols = winner.window_symbols;
    stats->strip_deletions = winner.strip_deletions;
  }
  return result;
}

inline std::size_t epsilon_iterations(std::size_t n, double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw UsageError("epsilon must be in (0, 1]");
  const double nn = static_cast<double>(n < 2 ? 2 : n);
  return static_cast<std::size_t>(std::ceil(
      3.0 * std::pow(nn, epsilon) * std::log(nn) / std::log(1.24)));
}

// Epsilon mode: the identical pipeline with O(n^eps log n) iterations,
// trading running time for the better window bound of epsilon_window.
inline RepairResult epsilon_mode(const ParenString& p, std::uint64_t seed,
                                 double epsilon,
                                 PhasedStats* stats = nullptr) {
  return repair_phased(p, seed, epsilon_iterations(p.size(), epsilon), stats);
}

}  // namespace dyck
