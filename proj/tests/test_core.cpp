#include <catch2/catch_amalgamated.hpp>

#include "dyck/core.hpp"
#include "helpers.hpp"

using namespace dyck;

TEST_CASE("compact parsing", "[core]") {
  ParenString p = parse_compact("(()())");
  REQUIRE(p.size() == 6);
  REQUIRE(p.alphabet_size == 1);
  for (auto s : p.symbols) REQUIRE(s.type_id == 0);

  REQUIRE(parse_compact("").size() == 0);
  REQUIRE(parse_compact("").alphabet_size == 1);

  ParenString mixed = parse_compact("([)]");
  REQUIRE(mixed.alphabet_size == 2);
  REQUIRE(mixed[0] == open_paren(0));
  REQUIRE(mixed[1] == open_paren(1));
  REQUIRE(mixed[2] == close_paren(0));
  REQUIRE(mixed[3] == close_paren(1));

  REQUIRE(parse_compact(" ( \n) ").size() == 2);
}

TEST_CASE("compact parse errors", "[core]") {
  try {
    parse_compact("(a)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.position == 2);
  }
  REQUIRE_THROWS_AS(parse_compact("([)]", 1u), ParseError);
  REQUIRE_NOTHROW(parse_compact("()", 3u));
}

TEST_CASE("token parsing", "[core]") {
  ParenString p = parse_tokens("a b /b /a");
  REQUIRE(p.size() == 4);
  REQUIRE(p.alphabet_size == 2);
  REQUIRE(p[0] == open_paren(0));
  REQUIRE(p[1] == open_paren(1));
  REQUIRE(p[2] == close_paren(1));
  REQUIRE(p[3] == close_paren(0));

  ParenString q = parse_tokens("a /b");
  REQUIRE(q.alphabet_size == 2);
  REQUIRE(q[0] == open_paren(0));
  REQUIRE(q[1] == close_paren(1));

  // Same symbol pattern as "([)]" up to type renaming.
  ParenString html = parse_tokens("div span /div /span");
  ParenString compact = parse_compact("([)]");
  REQUIRE(html.size() == compact.size());
  for (std::size_t i = 0; i < html.size(); ++i) {
    REQUIRE(html[i].polarity == compact[i].polarity);
    REQUIRE(html[i].type_id == compact[i].type_id);
  }

  REQUIRE_THROWS_AS(parse_tokens("a / b"), ParseError);
}

TEST_CASE("congruent is an involution", "[core]") {
  dyck::Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    ParenSymbol s{static_cast<std::uint32_t>(rng.below(5)),
                  rng.coin() ? Polarity::open : Polarity::close};
    REQUIRE(congruent(congruent(s)) == s);
    REQUIRE(congruent(s).type_id == s.type_id);
    REQUIRE(congruent(s).polarity != s.polarity);
  }
}

TEST_CASE("well-formedness", "[core]") {
  REQUIRE(is_well_formed(th::ps("(()())")));
  REQUIRE_FALSE(is_well_formed(th::ps("((())")));
  REQUIRE(is_well_formed(th::ps("([])")));
  REQUIRE_FALSE(is_well_formed(th::ps("([)]")));
  REQUIRE(is_well_formed(th::ps("")));
}

TEST_CASE("dyck1 distance", "[core]") {
  REQUIRE(dyck1_distance(th::ps("()")) == 0);
  REQUIRE(dyck1_distance(th::ps(")(")) == 2);
  REQUIRE(dyck1_distance(th::ps("((())")) == 1);
  REQUIRE_THROWS_AS(dyck1_distance(th::ps("([])")), UsageError);
}

TEST_CASE("dyck1 distance parity equals n mod 2", "[core]") {
  dyck::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    ParenString p = th::random_string(rng, rng.below(60), 1);
    REQUIRE(dyck1_distance(p) % 2 == p.size() % 2);
  }
}

TEST_CASE("apply_script basics", "[core]") {
  ParenString p = th::ps("((");
  EditScript del1{{delete_op(1)}};
  REQUIRE(render(apply_script(p, del1), Format::compact) == "(");

  EditScript dels{{delete_op(2), delete_op(4)}};
  REQUIRE(render(apply_script(th::ps("([)]"), dels), Format::compact) == "()");

  EditScript ins{{insert_op(1, close_paren(0))}};
  REQUIRE(render(apply_script(th::ps("("), ins), Format::compact) == "()");
}

TEST_CASE("apply_script is order independent", "[core]") {
  ParenString p = th::ps("([)]");
  EditScript a{{delete_op(2), substitute_op(3, close_paren(0)), delete_op(4)}};
  EditScript b{{delete_op(4), delete_op(2), substitute_op(3, close_paren(0))}};
  REQUIRE(render(apply_script(p, a), Format::compact) ==
          render(apply_script(p, b), Format::compact));
}

TEST_CASE("apply_script errors", "[core]") {
  REQUIRE_THROWS_AS(apply_script(th::ps("()"), {{delete_op(3)}}), UsageError);
  REQUIRE_THROWS_AS(apply_script(th::ps("()"), {{delete_op(0)}}), UsageError);
  REQUIRE_THROWS_AS(apply_script(th::ps("()"), {{insert_op(3, open_paren(0))}}),
                    UsageError);
  EditScript clash{{delete_op(1), substitute_op(1, open_paren(0))}};
  REQUIRE_THROWS_AS(apply_script(th::ps("()"), clash), UsageError);
}

TEST_CASE("render round-trips parse_compact bit-exactly", "[core]") {
  dyck::Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    ParenString p = th::random_string(rng, rng.below(40), 4);
    std::string text = render(p, Format::compact);
    REQUIRE(render(parse_compact(text), Format::compact) == text);
  }
  // token format round-trip
  std::string tokens = "a b /b /a c /c";
  REQUIRE(render(parse_tokens(tokens), Format::tokens) == tokens);
}
