#include <doctest.h>

#include <algorithm>

#include "stag/grammar_io.hpp"
#include "stag/parser.hpp"
#include "stag/render.hpp"
#include "support.hpp"

using namespace stag;

namespace {

// Minimal structural check of DOT text: header, balanced braces and quotes.
bool plausible_dot(const std::string& s) {
  if (!s.starts_with("digraph ")) return false;
  int depth = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (quoted) {
      if (c == '\\') ++i;
      else if (c == '"') quoted = false;
      continue;
    }
    if (c == '"') quoted = true;
    else if (c == '{') ++depth;
    else if (c == '}' && --depth < 0) return false;
  }
  return depth == 0 && !quoted;
}

}  // namespace

TEST_CASE("text rendering") {
  auto g = support::fixture("blink.stag");
  const Tree& t = g.at("alpha_blink").right.tree;
  CHECK(to_text(t) == "(F (R blink \"(\") (T↓) \")\")");
  CHECK(to_indented_text(t) == "F\n  R\n    blink\n    (\n  T↓\n  )\n");
  CHECK(to_indented_text(load_tag("tree e (S <eps>);").trees()[0].tree) == "S\n  ε\n");
}

TEST_CASE("dot rendering is total over constructed objects") {
  for (const char* f : {"blink.stag", "eight.stag", "smoke.stag"}) {
    auto g = support::fixture(f);
    for (const auto& p : g.pairs()) {
      CHECK(plausible_dot(to_dot(p)));
      CHECK(plausible_dot(to_dot(p.left.tree, p.name)));
    }
    for (const auto& s : enumerate_sync_derivations(g, 4)) {
      CHECK(plausible_dot(to_dot(s)));
      CHECK(plausible_dot(to_dot(left_derivation(s))));
      auto [l, r] = derived_pair(s, g);
      CHECK(plausible_dot(to_dot(DerivedPairState{l, r, {}})));
    }
    for (const auto& t : rewrite_search(g, 3)) CHECK(plausible_dot(to_dot(t.final_state)));
  }
  Tree odd{Node{Label::nonterminal("a\"b\\"), {}, false, false, false, {{Label::terminal("}"), {}, false, false, false, {}}}}};
  CHECK(plausible_dot(to_dot(odd, "q\"uote")));
}

TEST_CASE("pair rendering draws one dashed edge per link") {
  auto g = support::fixture("blink.stag");
  auto dot = to_dot(g.at("alpha_blink"));
  CHECK(std::count(dot.begin(), dot.end(), '\n') > 10);
  std::size_t dashed = 0;
  for (std::size_t pos = 0; (pos = dot.find("style=dashed", pos)) != std::string::npos; ++pos) ++dashed;
  CHECK(dashed == 3);
}
