#include <doctest.h>

#include "oracles.hpp"
#include "stag/errors.hpp"
#include "stag/grammar_io.hpp"
#include "stag/parser.hpp"
#include "support.hpp"

using namespace stag;

namespace {

void check_load_error(const std::string& text, std::size_t line, const std::string& fragment) {
  try {
    load_grammar(text);
    FAIL("loaded: " << text);
  } catch (const LoadError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() >= 1);
    CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
  }
}

}  // namespace

TEST_CASE("empty documents") {
  auto g = load_grammar("");
  CHECK(g.pairs().empty());
  auto h = load_grammar("% nothing here\ngrammar empty;\n");
  CHECK(h.options().name == "empty");
}

TEST_CASE("node markers") {
  auto doc = parse_document(R"(
    option default-side v;
    pair p {
      left  (S:SA(p, q):OA#1 (NP!) (VP:NA "a b" <eps>))
      right (T#1^ (X↓:SA(q)) %comment
             y)
    }
    pair q { left (S:mod (S*) z) right (T:pred (T*:any) w) }
  )");
  REQUIRE(doc.pairs.size() == 2);
  const auto& p = doc.pairs[0];
  const Node& root = p.left.tree.root;
  CHECK(root.constraint == Constraint::only({"p", "q"}, true));
  CHECK(root.children[0].substitution);
  CHECK(root.children[1].constraint == Constraint::none());
  CHECK(root.children[1].children[0].label == Label::terminal("a b"));
  CHECK(root.children[1].children[1].label == Label::epsilon());
  CHECK(p.right.tree.root.children[0].constraint == Constraint::only({"q"}));
  REQUIRE(p.links.size() == 1);
  CHECK(p.links[0].left_side == Side::bottom);
  CHECK(p.links[0].right_side == Side::top);
  const auto& q = doc.pairs[1];
  CHECK(q.left.cls == AuxClass::modifier);
  CHECK(q.right.cls == AuxClass::predicative);
  CHECK(q.left.tree.at(Address{1}).constraint == Constraint::none());
  CHECK(q.right.tree.at(Address{1}).constraint == Constraint::any());
}

TEST_CASE("load errors carry positions") {
  check_load_error("pair a {\n  left (S#1 x)\n  right (T#3 y)\n}", 2, "dangling diacritic #1");
  check_load_error("pair a { left (S x) right (T y) }\npair a { left (S x) right (T y) }", 2, "duplicate");
  check_load_error("pair a {\n left (S (NP) x) right (T y) }", 1, "neither");
  check_load_error("pair a { left (S (S*) x) right (T y) }", 1, "differ in kind");
  check_load_error("pair a { left (S:SA(zz) x) right (T y) }", 1, "unknown tree");
  check_load_error("pair a { left (S x) right (T y)", 1, "expected");
  check_load_error("\n\n  pair a { left (S:XY x) right (T y) }", 3, "unknown marker");
  check_load_error("option colour red;", 1, "unknown option");
  check_load_error("pair a { left (S \"x) right (T y) }", 1, "unterminated");
  check_load_error("pair a { left (S#1#1 x) right (T#1 y) }", 1, "repeated");
  check_load_error("pair a { left (S:NA:OA x) right (T y) }", 1, "OA");
}

TEST_CASE("mutated fixture with a one-sided diacritic") {
  std::string text = read_file(support::fixture_path("blink.stag"));
  auto pos = text.find("(T↓#3)");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, "(T↓)");
  CHECK_THROWS_AS(load_grammar(text), LoadError);
}

TEST_CASE("serialization round trip") {
  for (const char* f : {"blink.stag", "eight.stag", "smoke.stag"}) {
    auto g = support::fixture(f);
    auto text = serialize(g);
    auto again = load_grammar(text);
    CHECK(again == g);
    CHECK(serialize(again) == text);
    // Projections and reductions reload too.
    Grammar l = project_left(g);
    CHECK(load_tag(serialize(l)).trees() == l.trees());
    auto m = to_mctag(g);
    auto doc = parse_document(serialize(m));
    CHECK(doc.pairs.size() == m.sets.size());
    CHECK(doc.trees == m.start_trees);
  }
  auto sided = load_grammar(R"(
    option default-side v;
    option left-sep "\"";
    pair a { left (S#1^#2 "x y" <eps>) right (T#2#1 (U t)) }
  )");
  CHECK(load_grammar(serialize(sided)) == sided);
}

TEST_CASE("projected grammars keep their language") {
  for (const char* f : {"blink.stag", "eight.stag", "smoke.stag"}) {
    auto g = support::fixture(f);
    Grammar reloaded = load_tag(serialize(project_left(g), "p"));
    std::set<std::string> natural;
    for (const auto& [l, r] : enumerate_natural(g, 6)) natural.insert(l);
    for (const auto& s : natural) {
      auto toks = tokenize(s);
      CHECK_MESSAGE(!parse(reloaded, toks).empty(), s);
    }
    // And nothing shorter is accepted that natural does not produce.
    auto sigma = reloaded.terminals();
    auto strings = oracle::all_strings({sigma.begin(), sigma.end()}, 3);
    for (const auto& w : strings) {
      bool accepted = !parse(reloaded, w).empty();
      CHECK(accepted == natural.contains(join_yield(w, " ")));
    }
  }
}
