#include <catch2/catch_amalgamated.hpp>

#include "dyck/oracle.hpp"
#include "dyck/preprocess.hpp"
#include "helpers.hpp"

using namespace dyck;

namespace {

std::string residual_text(const ParenString& p,
                          const std::vector<std::size_t>& indices) {
  ParenString r;
  r.alphabet_size = p.alphabet_size;
  for (std::size_t i : indices) r.symbols.push_back(p[i]);
  return render(r, Format::compact);
}

ParenString residual_string(const ParenString& p, const BlockDecomposition& dec) {
  ParenString r;
  r.alphabet_size = p.alphabet_size;
  for (const auto& block : dec.blocks) {
    for (std::size_t i : block.opens) r.symbols.push_back(p[i]);
    for (std::size_t i : block.closes) r.symbols.push_back(p[i]);
  }
  return r;
}

}  // namespace

TEST_CASE("greedy match examples", "[preprocess]") {
  auto gm = greedy_match(th::ps("(()]"));
  REQUIRE(gm.matched_pairs ==
          std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}});
  REQUIRE(residual_text(th::ps("(()]"), gm.residual) == "(]");

  auto full = greedy_match(th::ps("([])"));
  REQUIRE(full.residual.empty());
  REQUIRE(full.matched_pairs.size() == 2);
  REQUIRE(full.matched_pairs[0] == std::make_pair<std::size_t, std::size_t>(1, 2));
  REQUIRE(full.matched_pairs[1] == std::make_pair<std::size_t, std::size_t>(0, 3));

  auto none = greedy_match(th::ps(")("));
  REQUIRE(none.matched_pairs.empty());
  REQUIRE(residual_text(th::ps(")("), none.residual) == ")(");
}

TEST_CASE("a residual close blocks matches across it", "[preprocess]") {
  // Greedy removal must only take contiguous well-formed chunks: in "[(])"
  // the ")" may not match "(" across the residual "]".
  auto gm = greedy_match(th::ps("[(])"));
  REQUIRE(gm.matched_pairs.empty());
  REQUIRE(gm.residual.size() == 4);
}

TEST_CASE("decompose examples", "[preprocess]") {
  auto all_forced = decompose(th::ps("))(("));
  REQUIRE(all_forced.z() == 0);
  REQUIRE(all_forced.forced_deletions == std::vector<std::size_t>{0, 1, 2, 3});

  auto one = decompose(th::ps("(]"));
  REQUIRE(one.z() == 1);
  REQUIRE(one.blocks[0].opens == std::vector<std::size_t>{0});
  REQUIRE(one.blocks[0].closes == std::vector<std::size_t>{1});

  auto two = decompose(th::ps("(](]"));
  REQUIRE(two.z() == 2);
  REQUIRE(two.blocks[0].opens == std::vector<std::size_t>{0});
  REQUIRE(two.blocks[0].closes == std::vector<std::size_t>{1});
  REQUIRE(two.blocks[1].opens == std::vector<std::size_t>{2});
  REQUIRE(two.blocks[1].closes == std::vector<std::size_t>{3});
}

TEST_CASE("block structure invariants", "[preprocess]") {
  dyck::Rng rng(23);
  for (int t = 0; t < 300; ++t) {
    ParenString p = th::random_string(rng, rng.below(40), 1 + rng.below(3));
    auto dec = decompose(p);

    std::vector<char> seen(p.size(), 0);
    auto mark = [&](std::size_t i) {
      REQUIRE(i < p.size());
      REQUIRE(!seen[i]);
      seen[i] = 1;
    };
    for (auto [a, b] : dec.matched_pairs) {
      mark(a);
      mark(b);
      REQUIRE(congruent(p[a]) == p[b]);
      REQUIRE(p[a].is_open());
    }
    for (std::size_t i : dec.forced_deletions) mark(i);
    std::size_t prev = 0;
    bool first = true;
    for (const auto& block : dec.blocks) {
      REQUIRE(!block.opens.empty());
      REQUIRE(!block.closes.empty());
      for (std::size_t i : block.opens) {
        REQUIRE(p[i].is_open());
        REQUIRE((first || i > prev));
        first = false;
        prev = i;
        mark(i);
      }
      for (std::size_t i : block.closes) {
        REQUIRE_FALSE(p[i].is_open());
        REQUIRE(i > prev);
        prev = i;
        mark(i);
      }
    }
    for (std::size_t i = 0; i < p.size(); ++i) REQUIRE(seen[i]);
  }
}

TEST_CASE("greedy residual has no adjacent matching pair", "[preprocess]") {
  dyck::Rng rng(29);
  for (int t = 0; t < 300; ++t) {
    ParenString p = th::random_string(rng, rng.below(40), 1 + rng.below(2));
    auto gm = greedy_match(p);
    for (std::size_t i = 0; i + 1 < gm.residual.size(); ++i) {
      const ParenSymbol& a = p[gm.residual[i]];
      const ParenSymbol& b = p[gm.residual[i + 1]];
      REQUIRE_FALSE((a.is_open() && congruent(a) == b));
    }
  }
}

TEST_CASE("deletion-only distance is preserved", "[preprocess]") {
  dyck::Rng rng(37);
  for (int t = 0; t < 400; ++t) {
    ParenString p = th::random_string(rng, rng.below(15), 1 + rng.below(3));
    auto dec = decompose(p);
    ParenString residual = residual_string(p, dec);
    REQUIRE(dyck_deletion_dp(p) ==
            dec.forced_deletions.size() + dyck_deletion_dp(residual));
  }
}

TEST_CASE("z is a lower bound on the residual deletion distance",
          "[preprocess]") {
  dyck::Rng rng(43);
  for (int t = 0; t < 300; ++t) {
    ParenString p = th::random_string(rng, rng.below(16), 1 + rng.below(3));
    auto dec = decompose(p);
    REQUIRE(dec.z() <= dyck_deletion_dp(residual_string(p, dec)));
  }
}
