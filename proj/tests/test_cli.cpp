#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "dyck/core.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(DYCK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/dyck_cli_test_") + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("repair subcommand output and determinism", "[cli]") {
  std::string file = write_temp("repair.txt", "(](]((\n");
  for (const char* algo : {"random", "refined", "phased"}) {
    CliResult a = run_cli(std::string("repair --algo ") + algo +
                          " --seed 42 " + file);
    CliResult b = run_cli(std::string("repair --algo ") + algo +
                          " --seed 42 " + file);
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.out == b.out);
    REQUIRE(a.out.rfind("cost: ", 0) == 0);
  }
  CliResult other_seed = run_cli("repair --algo random --seed 43 " + file);
  REQUIRE(other_seed.exit_code == 0);
}

TEST_CASE("emit-script replays to the repaired string", "[cli]") {
  std::string file = write_temp("script.txt", "([)](](\n");
  CliResult r = run_cli("repair --algo phased --seed 7 --emit-script " + file);
  REQUIRE(r.exit_code == 0);

  std::istringstream lines(r.out);
  std::string cost_line, repaired_line, header;
  REQUIRE(std::getline(lines, cost_line));
  REQUIRE(std::getline(lines, repaired_line));
  REQUIRE(std::getline(lines, header));
  REQUIRE(header == "script:");

  dyck::EditScript script;
  std::string op_line;
  while (std::getline(lines, op_line)) {
    std::istringstream fields(op_line);
    std::string kind, symbol;
    std::size_t index;
    fields >> kind >> index;
    if (kind == "D") {
      script.ops.push_back(dyck::delete_op(index));
    } else {
      fields >> symbol;
      dyck::ParenSymbol sym = dyck::parse_compact(symbol)[0];
      script.ops.push_back(kind == "S" ? dyck::substitute_op(index, sym)
                                       : dyck::insert_op(index, sym));
    }
  }
  dyck::ParenString input = dyck::parse_compact("([)](](");
  dyck::ParenString replayed = dyck::apply_script(input, script);
  REQUIRE(dyck::render(replayed, dyck::Format::compact) == repaired_line);
  REQUIRE(dyck::is_well_formed(replayed));
}

TEST_CASE("exact and validate subcommands", "[cli]") {
  std::string file = write_temp("exact.txt", "(]\n");
  CliResult d = run_cli("exact " + file);
  REQUIRE(d.exit_code == 0);
  REQUIRE(d.out == "distance: 1\n");
  CliResult del = run_cli("exact --deletion-only " + file);
  REQUIRE(del.out == "deletion-distance: 2\n");

  CliResult cap = run_cli("exact --cap 1 " + file);
  REQUIRE(cap.exit_code == 3);

  CliResult ok = run_cli("validate " + write_temp("wf.txt", "([])\n"));
  REQUIRE(ok.out == "well-formed: true\n");
  CliResult bad = run_cli("validate " + write_temp("nwf.txt", "([)]\n"));
  REQUIRE(bad.out == "well-formed: false\n");
}

TEST_CASE("parse errors exit with code 2", "[cli]") {
  std::string file = write_temp("bad.txt", "(a)\n");
  REQUIRE(run_cli("validate " + file).exit_code == 2);
  REQUIRE(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("transcript subcommands", "[cli]") {
  std::string file = write_temp("queue.txt", "I a\nI b\nE b\nE a\n");
  CliResult v = run_cli("transcript validate --lang queue " + file);
  REQUIRE(v.out == "valid: false\n");
  CliResult r = run_cli("transcript repair --lang queue --seed 11 " + file);
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.rfind("cost: ", 0) == 0);
  CliResult r2 = run_cli("transcript repair --lang queue --seed 11 " + file);
  REQUIRE(r.out == r2.out);
}

TEST_CASE("gen subcommands are deterministic", "[cli]") {
  CliResult a = run_cli("gen --n 24 --s 2 --k 3 --seed 5");
  CliResult b = run_cli("gen --n 24 --s 2 --k 3 --seed 5");
  REQUIRE(a.exit_code == 0);
  REQUIRE(a.out == b.out);

  CliResult ta = run_cli("gen-transcript --lang pq --n 12 --k 2 --seed 5");
  CliResult tb = run_cli("gen-transcript --lang pq --n 12 --k 2 --seed 5");
  REQUIRE(ta.exit_code == 0);
  REQUIRE(ta.out == tb.out);
}

TEST_CASE("rw subcommands", "[cli]") {
  CliResult pmf = run_cli("rw pmf --d 2 --steps 4");
  REQUIRE(pmf.exit_code == 0);
  REQUIRE(pmf.out == "0.125\n");

  CliResult win = run_cli("rw window --d 1 --lo 1 --hi 1");
  REQUIRE(win.out == "0.5\n");

  CliResult sim_a = run_cli("rw simulate --d 2 --trials 500 --seed 3");
  CliResult sim_b = run_cli("rw simulate --d 2 --trials 500 --seed 3");
  REQUIRE(sim_a.exit_code == 0);
  REQUIRE(sim_a.out == sim_b.out);
  REQUIRE(sim_a.out.rfind("steps,count\n", 0) == 0);
}

TEST_CASE("bench subcommand writes identical CSVs for one seed", "[cli]") {
  std::string cfg = write_temp(
      "bench.cfg", "n = 16\ns = 2\nk = 1\nalgos = random\nreps = 2\nseed = 7\n");
  std::string out1 = "/tmp/dyck_cli_test_bench1.csv";
  std::string out2 = "/tmp/dyck_cli_test_bench2.csv";
  CliResult a = run_cli("bench --config " + cfg + " --out " + out1);
  CliResult b = run_cli("bench --config " + cfg + " --out " + out2);
  REQUIRE(a.exit_code == 0);
  REQUIRE(a.out == "rows: 2\n");
  REQUIRE(a.out == b.out);
  std::ifstream f1(out1), f2(out2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  REQUIRE(s1.str() == s2.str());
  REQUIRE(!s1.str().empty());
}
