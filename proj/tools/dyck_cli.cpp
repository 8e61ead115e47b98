// Command-line surface: repair / exact / validate / transcript / gen /
// gen-transcript / bench / rw. Exit codes: 0 ok, 2 parse error, 3 size cap
// exceeded, 4 internal invariant violation.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dyck/bench.hpp"
#include "dyck/core.hpp"
#include "dyck/gen.hpp"
#include "dyck/memcheck.hpp"
#include "dyck/oracle.hpp"
#include "dyck/phased.hpp"
#include "dyck/randomdel.hpp"
#include "dyck/randomwalk.hpp"
#include "dyck/refined.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dyck::UsageError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

dyck::Format parse_format(const std::string& name) {
  if (name == "compact") return dyck::Format::compact;
  if (name == "tokens") return dyck::Format::tokens;
  throw dyck::UsageError("unknown format: " + name);
}

dyck::Language parse_language(const std::string& name) {
  if (name == "stack") return dyck::Language::stack;
  if (name == "queue") return dyck::Language::queue;
  if (name == "pq") return dyck::Language::pq;
  if (name == "deque") return dyck::Language::deque;
  throw dyck::UsageError("unknown language: " + name);
}

dyck::ParenString load_paren_string(const std::string& path,
                                    const std::string& format,
                                    std::uint32_t alphabet) {
  std::string text = read_file(path);
  std::optional<std::uint32_t> declared;
  if (alphabet != 0) declared = alphabet;
  return parse_format(format) == dyck::Format::compact
             ? dyck::parse_compact(text, declared)
             : dyck::parse_tokens(text, declared);
}

void print_script(const dyck::ParenString& context, const dyck::EditScript& script,
                  dyck::Format format) {
  std::printf("script:\n");
  for (const dyck::EditOp& op : script.ops) {
    switch (op.kind) {
      case dyck::EditOp::Kind::del:
        std::printf("D %zu\n", op.index);
        break;
      case dyck::EditOp::Kind::substitute:
        std::printf("S %zu %s\n", op.index,
                    dyck::render_symbol(context, op.symbol, format).c_str());
        break;
      case dyck::EditOp::Kind::insert:
        std::printf("I %zu %s\n", op.index,
                    dyck::render_symbol(context, op.symbol, format).c_str());
        break;
    }
  }
}

struct RepairArgs {
  std::string algo;
  std::uint64_t seed = 0;
  std::size_t iters = 0;
  double epsilon = 0.0;
  std::string format = "compact";
  bool emit_script = false;
  bool whole_run_repeats = false;
  std::uint32_t alphabet = 0;
  std::string file;
};

int run_repair(const RepairArgs& args) {
  dyck::ParenString input =
      load_paren_string(args.file, args.format, args.alphabet);
  if (args.epsilon > 0.0 && args.algo != "phased")
    throw dyck::UsageError("--epsilon applies to the phased algorithm only");
  dyck::RepairResult result;
  if (args.algo == "random") {
    result = dyck::repair_random(input, args.iters, args.seed);
  } else if (args.algo == "refined") {
    result = dyck::repair_refined(input, args.seed, args.iters,
                                  args.whole_run_repeats);
  } else if (args.algo == "phased") {
    if (args.epsilon > 0.0)
      result = dyck::epsilon_mode(input, args.seed, args.epsilon);
    else
      result = dyck::repair_phased(input, args.seed, args.iters);
  } else {
    throw dyck::UsageError("unknown algo: " + args.algo);
  }
  if (!dyck::is_well_formed(result.repaired))
    throw dyck::InternalError("repair produced a malformed string");
  std::printf("cost: %zu\n", result.cost);
  std::printf("%s\n", dyck::render(result.repaired, parse_format(args.format)).c_str());
  if (args.emit_script)
    print_script(input, result.script, parse_format(args.format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edit distance to Dyck(s): exact oracles, randomized repair, "
               "random-walk analytics, transcript checking"};
  app.require_subcommand(1);

  // repair
  RepairArgs repair_args;
  auto* repair = app.add_subcommand("repair", "repair a parenthesis string");
  repair->add_option("--algo", repair_args.algo, "random|refined|phased")
      ->required();
  repair->add_option("--seed", repair_args.seed, "RNG master seed")->required();
  repair->add_option("--iters", repair_args.iters,
                     "iteration override (default 3 log_1.24 n)");
  repair->add_option("--epsilon", repair_args.epsilon,
                     "epsilon mode (phased only)");
  repair->add_option("--format", repair_args.format, "compact|tokens");
  repair->add_flag("--emit-script", repair_args.emit_script,
                   "print the edit script");
  repair->add_flag("--whole-run-repeats", repair_args.whole_run_repeats,
                   "refined: repeat whole runs instead of per-block restarts");
  repair->add_option("--alphabet", repair_args.alphabet,
                     "declared alphabet size (0 = infer)");
  repair->add_option("file", repair_args.file, "input file")->required();

  // exact
  std::string exact_file, exact_format = "compact";
  std::size_t exact_cap = dyck::kOracleCap;
  std::uint32_t exact_alphabet = 0;
  bool deletion_only = false;
  auto* exact = app.add_subcommand("exact", "exact DP distance");
  exact->add_option("--cap", exact_cap, "size cap for the cubic DP");
  exact->add_flag("--deletion-only", deletion_only, "deletion-only distance");
  exact->add_option("--format", exact_format, "compact|tokens");
  exact->add_option("--alphabet", exact_alphabet, "declared alphabet size");
  exact->add_option("file", exact_file, "input file")->required();

  // validate
  std::string validate_file, validate_format = "compact";
  std::uint32_t validate_alphabet = 0;
  auto* validate_cmd = app.add_subcommand("validate", "well-formedness check");
  validate_cmd->add_option("--format", validate_format, "compact|tokens");
  validate_cmd->add_option("--alphabet", validate_alphabet,
                           "declared alphabet size");
  validate_cmd->add_option("file", validate_file, "input file")->required();

  // transcript
  auto* transcript = app.add_subcommand("transcript", "memory-checking transcripts");
  transcript->require_subcommand(1);
  std::string tv_lang, tv_file;
  auto* tvalidate = transcript->add_subcommand("validate", "validate a transcript");
  tvalidate->add_option("--lang", tv_lang, "stack|queue|pq|deque")->required();
  tvalidate->add_option("file", tv_file, "input file")->required();
  std::string tr_lang, tr_file, tr_algo = "random";
  std::uint64_t tr_seed = 0;
  std::size_t tr_iters = 0;
  auto* trepair = transcript->add_subcommand("repair", "repair a transcript");
  trepair->add_option("--lang", tr_lang, "stack|queue|pq|deque")->required();
  trepair->add_option("--seed", tr_seed, "RNG master seed")->required();
  trepair->add_option("--algo", tr_algo, "random|refined|phased (stack reduction)");
  trepair->add_option("--iters", tr_iters, "iteration override");
  trepair->add_option("file", tr_file, "input file")->required();

  // gen / gen-transcript
  std::size_t gen_n = 0, gen_k = 0;
  std::uint32_t gen_s = 1;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "generate a planted instance");
  gen->add_option("--n", gen_n, "even length of the balanced base")->required();
  gen->add_option("--s", gen_s, "alphabet size")->required();
  gen->add_option("--k", gen_k, "planted edits")->required();
  gen->add_option("--seed", gen_seed, "RNG seed")->required();

  std::string gt_lang;
  std::size_t gt_n = 0, gt_k = 0;
  std::uint64_t gt_seed = 0;
  auto* gent = app.add_subcommand("gen-transcript", "generate a transcript");
  gent->add_option("--lang", gt_lang, "stack|queue|pq|deque")->required();
  gent->add_option("--n", gt_n, "even op count before corruption")->required();
  gent->add_option("--k", gt_k, "corruptions")->required();
  gent->add_option("--seed", gt_seed, "RNG seed")->required();

  // bench
  std::string bench_config, bench_out;
  auto* bench = app.add_subcommand("bench", "benchmark grid to CSV");
  bench->add_option("--config", bench_config, "key=value config file")->required();
  bench->add_option("--out", bench_out, "output CSV path")->required();

  // rw
  auto* rw = app.add_subcommand("rw", "gambler's-ruin hitting-time analytics");
  rw->require_subcommand(1);
  std::uint64_t pmf_d = 1, pmf_steps = 1;
  auto* rw_pmf = rw->add_subcommand("pmf", "exact hitting-time pmf");
  rw_pmf->add_option("--d", pmf_d, "start")->required();
  rw_pmf->add_option("--steps", pmf_steps, "exact step count")->required();
  std::uint64_t win_d = 1;
  std::int64_t win_lo = -1, win_hi = -1;
  auto* rw_win = rw->add_subcommand("window", "window probability (default [d^2, 2d^2])");
  rw_win->add_option("--d", win_d, "start")->required();
  rw_win->add_option("--lo", win_lo, "window start (steps)");
  rw_win->add_option("--hi", win_hi, "window end (steps)");
  std::uint64_t sim_d = 1, sim_trials = 0, sim_seed = 0, sim_cap = 0;
  auto* rw_sim = rw->add_subcommand("simulate", "Monte Carlo hitting times, CSV");
  rw_sim->add_option("--d", sim_d, "start")->required();
  rw_sim->add_option("--trials", sim_trials, "trials")->required();
  rw_sim->add_option("--seed", sim_seed, "RNG seed")->required();
  rw_sim->add_option("--cap", sim_cap, "step cap (default 2 d^2)");

  try {
    app.parse(argc, argv);

    if (*repair) return run_repair(repair_args);

    if (*exact) {
      dyck::ParenString input =
          load_paren_string(exact_file, exact_format, exact_alphabet);
      if (deletion_only)
        std::printf("deletion-distance: %zu\n",
                    dyck::dyck_deletion_dp(input, exact_cap));
      else
        std::printf("distance: %zu\n", dyck::dyck_edit_dp(input, exact_cap));
      return 0;
    }

    if (*validate_cmd) {
      dyck::ParenString input =
          load_paren_string(validate_file, validate_format, validate_alphabet);
      std::printf("well-formed: %s\n",
                  dyck::is_well_formed(input) ? "true" : "false");
      return 0;
    }

    if (*tvalidate) {
      dyck::Transcript t =
          dyck::parse_transcript(read_file(tv_file), parse_language(tv_lang));
      std::printf("valid: %s\n", dyck::validate(t) ? "true" : "false");
      return 0;
    }
    if (*trepair) {
      dyck::Transcript t =
          dyck::parse_transcript(read_file(tr_file), parse_language(tr_lang));
      dyck::RepairAlgo algo = dyck::RepairAlgo::random;
      if (tr_algo == "refined")
        algo = dyck::RepairAlgo::refined;
      else if (tr_algo == "phased")
        algo = dyck::RepairAlgo::phased;
      else if (tr_algo != "random")
        throw dyck::UsageError("unknown algo: " + tr_algo);
      dyck::TranscriptRepair result = dyck::repair(t, tr_seed, algo, tr_iters);
      if (!dyck::validate(result.transcript))
        throw dyck::InternalError("transcript repair failed to validate");
      std::printf("cost: %zu\n", result.cost);
      std::fputs(dyck::format_transcript(result.transcript).c_str(), stdout);
      return 0;
    }

    if (*gen) {
      dyck::GenResult g = dyck::gen_instance(gen_n, gen_s, gen_k, gen_seed);
      dyck::Format f = gen_s <= 4 ? dyck::Format::compact : dyck::Format::tokens;
      std::printf("%s\n", dyck::render(g.str, f).c_str());
      return 0;
    }
    if (*gent) {
      dyck::Transcript t = dyck::gen_transcript(parse_language(gt_lang), gt_n,
                                                gt_k, gt_seed);
      std::fputs(dyck::format_transcript(t).c_str(), stdout);
      return 0;
    }

    if (*bench) {
      dyck::BenchConfig cfg = dyck::parse_bench_config(read_file(bench_config));
      std::ofstream out(bench_out, std::ios::binary);
      if (!out) throw dyck::UsageError("cannot open output: " + bench_out);
      dyck::run_bench(cfg, out);
      std::printf("rows: %zu\n",
                  cfg.ns.size() * cfg.ks.size() * cfg.algos.size() * cfg.reps);
      return 0;
    }

    if (*rw_pmf) {
      std::printf("%.12g\n", dyck::hitting_pmf(pmf_d, pmf_steps));
      return 0;
    }
    if (*rw_win) {
      std::uint64_t lo = win_lo >= 0 ? static_cast<std::uint64_t>(win_lo)
                                     : win_d * win_d;
      std::uint64_t hi = win_hi >= 0 ? static_cast<std::uint64_t>(win_hi)
                                     : 2 * win_d * win_d;
      std::printf("%.12g\n", dyck::window_prob(win_d, lo, hi));
      return 0;
    }
    if (*rw_sim) {
      if (sim_cap == 0) sim_cap = 2 * sim_d * sim_d;
      dyck::Rng rng(sim_seed);
      dyck::HitHistogram h = dyck::simulate(sim_d, sim_cap, sim_trials, rng);
      std::printf("steps,count\n");
      for (std::size_t d = 0; d < h.counts.size(); ++d)
        if (h.counts[d] > 0) std::printf("%zu,%" PRIu64 "\n", d, h.counts[d]);
      std::printf("censored,%" PRIu64 "\n", h.censored);
      return 0;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const dyck::ParseError& e) {
    std::fprintf(stderr, "parse error: %s (position %zu)\n", e.what(), e.position);
    return 2;
  } catch (const dyck::SizeCapError& e) {
    std::fprintf(stderr, "size cap exceeded: %s (n=%zu cap=%zu)\n", e.what(),
                 e.n, e.cap);
    return 3;
  } catch (const dyck::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 4;
  }
}
