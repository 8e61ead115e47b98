#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dyck/core.hpp"
#include "dyck/preprocess.hpp"
#include "dyck/randomdel.hpp"
#include "dyck/stredit.hpp"

namespace dyck {

struct SegmentEstimate {
  std::size_t block_index = 0;
  std::vector<std::size_t> z_min;  // opens consumed against X_a, ascending
  std::size_t deletions = 0;       // N_{a,min}
  RdState resume;                  // state after the chosen segment
};

namespace detail {

inline std::vector<std::size_t> block_positions(const BlockDecomposition& dec) {
  std::vector<std::size_t> positions;
  for (const auto& block : dec.blocks) {
    positions.insert(positions.end(), block.opens.begin(), block.opens.end());
    positions.insert(positions.end(), block.closes.begin(), block.closes.end());
  }
  return positions;
}

}  // namespace detail

// Per-block segmentation: restart the random scan from the previous block's
// resume state until X_a completes, keep the restart with the fewest
// deletions, and record the opens it consumed as Z_{a,min}.
inline std::vector<SegmentEstimate> estimate_segments(
    const ParenString& p, const BlockDecomposition& dec,
    std::span<const std::size_t> positions, std::size_t restarts,
    std::uint64_t seed) {
  std::vector<SegmentEstimate> segments;
  RdScanner scanner(p, positions);
  std::size_t block_end = 0;
  std::vector<std::size_t> popped;
  for (std::size_t a = 0; a < dec.blocks.size(); ++a) {
    block_end += dec.blocks[a].opens.size() + dec.blocks[a].closes.size();
    const RdState snapshot = scanner.state();
    SegmentEstimate best;
    best.block_index = a;
    bool have = false;
    for (std::size_t r = 0; r < restarts; ++r) {
      scanner.restore(snapshot);
      Rng rng = Rng::substream(seed, a * restarts + r);
      popped.clear();
      std::size_t deletions =
          scanner.advance_to(block_end, rng, nullptr, &popped);
      if (!have || deletions < best.deletions) {
        best.deletions = deletions;
        best.z_min = popped;
        best.resume = scanner.state();
        have = true;
      }
    }
    // Pops come off the stack top, so within one segment (pushes of Y_a, then
    // a pure close run) they are strictly decreasing; ascending = textual.
    std::sort(best.z_min.begin(), best.z_min.end());
    scanner.restore(best.resume);
    segments.push_back(std::move(best));
  }
  return segments;
}

// Algorithm 2: decompose, estimate Z_{a,min} per block with boosted segment
// restarts, then charge StrEdit(Z_{a,min}, X_a) instead of the random edits;
// leftover opens on the stack are deleted at the end.
inline RepairResult repair_refined_blockwise(const ParenString& p,
                                             std::uint64_t seed,
                                             std::size_t restarts) {
  BlockDecomposition dec = decompose(p);
  std::vector<std::size_t> positions = detail::block_positions(dec);

  RepairResult result;
  for (std::size_t idx : dec.forced_deletions)
    result.script.ops.push_back(delete_op(idx + 1));

  auto segments = estimate_segments(p, dec, positions, restarts, seed);
  for (std::size_t a = 0; a < dec.blocks.size(); ++a) {
    StrEditOutcome outcome =
        match_runs(p, segments[a].z_min, dec.blocks[a].closes);
    result.script.ops.insert(result.script.ops.end(),
                             outcome.repairs.ops.begin(),
                             outcome.repairs.ops.end());
  }
  if (!dec.blocks.empty())
    for (std::size_t idx : segments.back().resume.stack)
      result.script.ops.push_back(delete_op(idx + 1));

  result.cost = result.script.cost();
  result.repaired = apply_script(p, result.script);
  return result;
}

// The whole-run alternative: repeat the entire Random-deletion pass, derive
// every block's Z_a from the single trace (each pop belongs to the close
// whose comparison caused it), and keep the iteration with the smallest total
// StrEdit cost.
inline RepairResult repair_refined_whole_run(const ParenString& p,
                                             std::uint64_t seed,
                                             std::size_t iterations) {
  BlockDecomposition dec = decompose(p);
  std::vector<std::size_t> positions = detail::block_positions(dec);
  const std::size_t z = dec.blocks.size();

  std::vector<std::size_t> close_block(p.size(), knpos);
  for (std::size_t a = 0; a < z; ++a)
    for (std::size_t c : dec.blocks[a].closes) close_block[c] = a;

  auto derive = [&](const RdTrace& trace, std::vector<std::vector<std::size_t>>& zs,
                    std::size_t& flushes) {
    zs.assign(z, {});
    flushes = 0;
    std::vector<std::size_t> pending;
    for (const RdEvent& e : trace.events) {
      switch (e.kind) {
        case RdKind::delete_open:
          pending.push_back(e.open_index);
          break;
        case RdKind::match:
        case RdKind::delete_close: {
          std::size_t a = close_block[e.close_index];
          auto& target = zs[a];
          target.insert(target.end(), pending.begin(), pending.end());
          pending.clear();
          if (e.kind == RdKind::match) target.push_back(e.open_index);
          break;
        }
        case RdKind::flush_open:
          ++flushes;
          break;
      }
    }
    if (!pending.empty())
      throw InternalError("open deletions without an owning close");
    for (auto& v : zs) std::sort(v.begin(), v.end());
  };

  std::size_t best_cost = 0, best_iter = 0;
  bool have = false;
  std::vector<std::vector<std::size_t>> zs;
  for (std::size_t iter = 0; iter < iterations; ++iter) {
    RdTrace trace = rd_run_positions(p, positions, Rng::substream(seed, iter));
    std::size_t flushes = 0;
    derive(trace, zs, flushes);
    std::size_t cost = dec.forced_deletions.size() + flushes;
    for (std::size_t a = 0; a < z; ++a)
      cost += match_runs_cost(p, zs[a], dec.blocks[a].closes);
    if (!have || cost < best_cost) {
      best_cost = cost;
      best_iter = iter;
      have = true;
    }
  }

  // Rebuild the winning iteration, this time keeping scripts.
  RepairResult result;
  for (std::size_t idx : dec.forced_deletions)
    result.script.ops.push_back(delete_op(idx + 1));
  RdTrace trace =
      rd_run_positions(p, positions, Rng::substream(seed, best_iter));
  std::size_t flushes = 0;
  derive(trace, zs, flushes);
  for (std::size_t a = 0; a < z; ++a) {
    StrEditOutcome outcome = match_runs(p, zs[a], dec.blocks[a].closes);
    result.script.ops.insert(result.script.ops.end(),
                             outcome.repairs.ops.begin(),
                             outcome.repairs.ops.end());
  }
  for (const RdEvent& e : trace.events)
    if (e.kind == RdKind::flush_open)
      result.script.ops.push_back(delete_op(e.open_index + 1));

  result.cost = result.script.cost();
  result.repaired = apply_script(p, result.script);
  return result;
}

inline RepairResult repair_refined(const ParenString& p, std::uint64_t seed,
                                   std::size_t iterations = 0,
                                   bool whole_run_repeats = false) {
  if (iterations == 0) iterations = default_iterations(p.size());
  return whole_run_repeats ? repair_refined_whole_run(p, seed, iterations)
                           : repair_refined_blockwise(p, seed, iterations);
}

}  // namespace dyck
