#pragma once

#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "dyck/gen.hpp"
#include "dyck/oracle.hpp"
#include "dyck/phased.hpp"
#include "dyck/randomdel.hpp"
#include "dyck/refined.hpp"

namespace dyck {

// Flat key=value config; '#' starts a comment, list values are
// comma-separated. threshold_* keys are collected for harnesses that want
// their acceptance constants declared next to the grid.
struct BenchConfig {
  std::vector<std::size_t> ns{100};
  std::uint32_t s = 2;
  std::vector<std::size_t> ks{0};
  std::vector<std::string> algos{"random"};
  std::size_t reps = 1;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::size_t oracle_cap = kOracleCap;
  // wall_micros is reported as 0 unless timing is on, keeping the CSV
  // byte-identical across runs with the same seed.
  bool timing = false;
  std::map<std::string, double> thresholds;
};

struct BenchRecord {
  std::size_t n = 0;
  std::uint32_t s = 2;
  std::size_t planted_edits = 0;
  std::int64_t opt_exact = -1;     // -1 when the oracle was skipped
  std::int64_t opt_deletion = -1;  // -1 when skipped
  std::string algo;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::int64_t cost = -1;  // -1 marks a failed cell
  double ratio = -1.0;     // cost / opt_exact, -1 when unknown
  std::uint64_t wall_micros = 0;
};

namespace detail {

inline std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    std::size_t comma = v.find(',', pos);
    std::string_view item =
        v.substr(pos, comma == std::string_view::npos ? v.size() - pos
                                                      : comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.push_back(item);
    pos = comma == std::string_view::npos ? v.size() + 1 : comma + 1;
  }
  return out;
}

inline std::uint64_t parse_u64(std::string_view v, std::size_t line_no) {
  std::uint64_t out = 0;
  if (v.empty()) throw ParseError("empty numeric value", line_no);
  for (char c : v) {
    if (c < '0' || c > '9') throw ParseError("expected an unsigned integer", line_no);
    out = out * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return out;
}

}  // namespace detail

inline BenchConfig parse_bench_config(std::string_view text) {
  BenchConfig cfg;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      bool blank = true;
      for (char c : line)
        if (c != ' ' && c != '\t' && c != '\r') blank = false;
      if (blank) continue;
      throw ParseError("expected key = value", line_no);
    }
    auto trim = [](std::string_view v) {
      while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
      while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r'))
        v.remove_suffix(1);
      return v;
    };
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (key == "n") {
      cfg.ns.clear();
      for (auto item : detail::split_list(value))
        cfg.ns.push_back(detail::parse_u64(item, line_no));
    } else if (key == "s") {
      cfg.s = static_cast<std::uint32_t>(detail::parse_u64(value, line_no));
    } else if (key == "k") {
      cfg.ks.clear();
      for (auto item : detail::split_list(value))
        cfg.ks.push_back(detail::parse_u64(item, line_no));
    } else if (key == "algos") {
      cfg.algos.clear();
      for (auto item : detail::split_list(value)) {
        std::string algo(item);
        if (algo != "random" && algo != "refined" && algo != "phased")
          throw ParseError("unknown algo '" + algo + "'", line_no);
        cfg.algos.push_back(std::move(algo));
      }
    } else if (key == "reps") {
      cfg.reps = detail::parse_u64(value, line_no);
    } else if (key == "seed") {
      cfg.seed = detail::parse_u64(value, line_no);
    } else if (key == "workers") {
      cfg.workers = std::max<std::size_t>(1, detail::parse_u64(value, line_no));
    } else if (key == "oracle_cap") {
      cfg.oracle_cap = detail::parse_u64(value, line_no);
    } else if (key == "timing") {
      if (value == "on")
        cfg.timing = true;
      else if (value == "off")
        cfg.timing = false;
      else
        throw ParseError("timing must be on or off", line_no);
    } else if (key.rfind("threshold_", 0) == 0) {
      cfg.thresholds[key] = std::stod(std::string(value));
    } else {
      throw ParseError("unknown config key '" + key + "'", line_no);
    }
  }
  if (cfg.ns.empty() || cfg.ks.empty() || cfg.algos.empty() || cfg.reps == 0)
    throw UsageError("bench config has an empty grid");
  return cfg;
}

inline std::string csv_header() {
  return "n,s,planted_edits,opt_exact,opt_deletion,algo,iterations,seed,cost,"
         "ratio,wall_micros";
}

inline std::string to_csv_row(const BenchRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%zu,%u,%zu,%" PRId64 ",%" PRId64 ",%s,%zu,%" PRIu64
                ",%" PRId64 ",%.6f,%" PRIu64,
                r.n, r.s, r.planted_edits, r.opt_exact, r.opt_deletion,
                r.algo.c_str(), r.iterations, r.seed, r.cost, r.ratio,
                r.wall_micros);
  return std::string(buf);
}

// Runs every cell of the grid. Rows are emitted in deterministic config
// order whatever the completion order; per-cell failures become rows with
// cost -1 and the run continues.
inline void run_bench(const BenchConfig& cfg, std::ostream& out) {
  struct Cell {
    std::size_t n, k, rep;
    std::string algo;
  };
  std::vector<Cell> cells;
  for (std::size_t n : cfg.ns)
    for (std::size_t k : cfg.ks)
      for (const std::string& algo : cfg.algos)
        for (std::size_t rep = 0; rep < cfg.reps; ++rep)
          cells.push_back({n, k, rep, algo});

  std::vector<BenchRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& cell = cells[i];
      BenchRecord& r = records[i];
      r.n = cell.n;
      r.s = cfg.s;
      r.planted_edits = cell.k;
      r.algo = cell.algo;
      r.iterations = default_iterations(cell.n);
      r.seed = derive_seed(cfg.seed, i);
      try {
        GenResult g = gen_instance(cell.n, cfg.s, cell.k, derive_seed(r.seed, 0));
        const std::uint64_t algo_seed = derive_seed(r.seed, 1);
        auto t0 = std::chrono::steady_clock::now();
        RepairResult rep;
        if (cell.algo == "random")
          rep = repair_random(g.str, r.iterations, algo_seed);
        else if (cell.algo == "refined")
          rep = repair_refined(g.str, algo_seed, r.iterations);
        else
          rep = repair_phased(g.str, algo_seed, r.iterations);
        auto t1 = std::chrono::steady_clock::now();
        r.cost = static_cast<std::int64_t>(rep.cost);
        if (cfg.timing)
          r.wall_micros = static_cast<std::uint64_t>(
              std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0)
                  .count());
        if (g.str.size() <= cfg.oracle_cap) {
          r.opt_exact =
              static_cast<std::int64_t>(dyck_edit_dp(g.str, cfg.oracle_cap));
          r.opt_deletion = static_cast<std::int64_t>(
              dyck_deletion_dp(g.str, cfg.oracle_cap));
          if (r.opt_exact > 0)
            r.ratio = static_cast<double>(r.cost) /
                      static_cast<double>(r.opt_exact);
        }
      } catch (const std::exception&) {
        r.cost = -1;
        r.ratio = -1.0;
      }
    }
  };

  if (cfg.workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  out << csv_header() << '\n';
  for (const BenchRecord& r : records) out << to_csv_row(r) << '\n';
}

}  // namespace dyck
