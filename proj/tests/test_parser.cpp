#include <doctest.h>

#include <chrono>
#include <map>

#include "oracles.hpp"
#include "stag/errors.hpp"
#include "stag/grammar_io.hpp"
#include "stag/parser.hpp"
#include "support.hpp"

using namespace stag;
using support::words;

namespace {

const char* kCounting = R"(
  option sep " ";
  start S;
  tree alpha (S <eps>);
  tree beta (S:NA a (S b (S*) c) d);
)";

// Brute-force derivations grouped by yield.
std::map<std::vector<std::string>, std::set<DerivationNode>> by_yield(const Grammar& g, std::size_t n, Mode mode) {
  std::map<std::vector<std::string>, std::set<DerivationNode>> out;
  for (const auto& d : oracle::brute_derivations(g, n, mode)) out[interpret(d, g, mode).yield()].insert(d);
  return out;
}

std::vector<std::string> alphabet(const Grammar& g) {
  auto t = g.terminals();
  return {t.begin(), t.end()};
}

}  // namespace

TEST_CASE("blink parses") {
  auto g = support::fixture("blink.stag");
  Grammar left = project_left(g);
  auto f = parse(left, words("John intentionally blinked twice"));
  CHECK(f.count() == 1);
  auto ds = f.enumerate();
  REQUIRE(ds.size() == 1);
  DerivationNode expect{"alpha_blink",
                        {{Address{}, 0, {"beta_twice", {}}},
                         {Address{1}, 0, {"alpha_john", {}}},
                         {Address{2}, 0, {"beta_intentionally", {}}}}};
  CHECK(ds.front() == expect);
  CHECK(parse(left, words("John blinked")).count() == 1);
  CHECK(parse(left, words("blinked John")).empty());
  CHECK(parse(left, {}).empty());
  CHECK_THROWS_AS(parse(left, words("Mary blinked")), LexiconError);
}

TEST_CASE("forest counting") {
  Grammar g = load_tag(kCounting);
  CHECK(parse(g, {}).count() == 1);
  auto f = parse(g, words("a a b b c c d d"));
  CHECK(f.count() == 1);
  CHECK(f.max_size() == 3);
  CHECK(parse(g, words("a b c")).empty());

  // Two modifiers with equal yield: four stacks and four nestings.
  Grammar two = load_tag(R"(
    start S;
    tree r (S x);
    tree m (S:mod (S*) y);
    tree n (S:mod (S*) y);
  )");
  auto ff = parse(two, words("x y y"));
  CHECK(ff.count() == 8);

  // An auxiliary tree with an empty yield makes the forest infinite.
  Grammar loop = load_tag(R"(
    start S;
    tree r (S x);
    tree e (S:mod (S*) <eps>);
  )");
  auto inf = parse(loop, words("x"));
  CHECK(!inf.count());
  CHECK(!inf.max_size());
  CHECK(inf.enumerate(3).size() == 4);
  CHECK_THROWS_AS(inf.enumerate(), DerivationError);
}

TEST_CASE("standard and multi modes") {
  Grammar two = load_tag(R"(
    start S;
    tree r (S x);
    tree m (S:mod (S*) y);
  )");
  auto multi = parse(two, words("x y y"), Mode::multi).enumerate();
  auto standard = parse(two, words("x y y"), Mode::standard).enumerate();
  CHECK(multi.size() == 2);
  CHECK(standard.size() == 1);
  CHECK(standard.front() == DerivationNode{"r", {{Address{}, 0, {"m", {{Address{}, 0, {"m", {}}}}}}}});
}

TEST_CASE("forest enumeration matches brute force") {
  Grammar counting = load_tag(kCounting);
  std::vector<std::pair<std::string, Grammar>> grammars{{"counting", counting}};
  for (const char* f : {"blink.stag", "eight.stag", "smoke.stag"}) {
    auto g = support::fixture(f);
    grammars.emplace_back(std::string(f) + " left", g.left());
    grammars.emplace_back(std::string(f) + " projected", project_left(g));
  }
  for (Mode mode : {Mode::multi, Mode::standard}) {
    for (const auto& [name, g] : grammars) {
      auto expect = by_yield(g, 5, mode);
      std::set<std::vector<std::string>> strings;
      for (const auto& [w, ds] : expect) strings.insert(w);
      for (auto& w : oracle::all_strings(alphabet(g), 3)) strings.insert(w);
      for (const auto& w : strings) {
        auto got = parse(g, w, mode).enumerate(5);
        std::set<DerivationNode> got_set(got.begin(), got.end());
        CHECK(got.size() == got_set.size());
        auto it = expect.find(w);
        CHECK_MESSAGE(got_set == (it == expect.end() ? std::set<DerivationNode>{} : it->second),
                      name << ": " << join_yield(w, " "));
      }
    }
  }
}

TEST_CASE("every enumerated derivation is well formed and yields the input") {
  auto g = support::fixture("blink.stag");
  Grammar left = g.left();
  for (const auto& w : oracle::all_strings(alphabet(left), 5)) {
    for (const auto& d : parse(left, w).enumerate(8)) {
      CHECK(check_well_formed(d, left, Mode::multi));
      CHECK(interpret(d, left).yield() == w);
    }
  }
}

TEST_CASE("recognition time grows polynomially") {
  Grammar g = load_tag(kCounting);
  auto input = [](std::size_t n) {
    std::vector<std::string> w;
    for (const char* c : {"a", "b", "c", "d"})
      for (std::size_t i = 0; i < n; ++i) w.push_back(c);
    return w;
  };
  auto time = [&](std::size_t n) {
    auto start = std::chrono::steady_clock::now();
    auto f = parse(g, input(n));
    CHECK(f.count() == 1);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  time(3);
  double t3 = std::max(time(3), 1e-4), t6 = std::max(time(6), 1e-4), t12 = std::max(time(12), 1e-4);
  MESSAGE("n=3 " << t3 << "s, n=6 " << t6 << "s, n=12 " << t12 << "s");
  // Doubling n multiplies the input length by two; the chart is O(n^6) at
  // worst, so a factor of 2^6 bounds each doubling.
  CHECK(t6 / t3 < 64.0);
  CHECK(t12 / t6 < 64.0);
}

TEST_CASE("map_derivation") {
  auto g = support::fixture("blink.stag");
  auto dl = parse(project_left(g), words("John intentionally blinked twice")).enumerate().front();
  auto rs = map_derivation(dl, g);
  CHECK(rs.size() == 2);
  auto single = map_derivation({"alpha_john", {}}, g);
  CHECK(single == std::vector<DerivationNode>{{"alpha_john", {}}});

  auto eight = support::fixture("eight.stag");
  DerivationNode b{"alpha", {{Address{1}, 0, {"beta1", {}}}}};
  CHECK(map_derivation(b, eight).empty());
  DerivationNode b2{"alpha", {{Address{2}, 0, {"beta2", {}}}}};
  CHECK(map_derivation(b2, eight).empty());
}

TEST_CASE("transduction") {
  auto g = support::fixture("blink.stag");
  CHECK(transduce(g, words("John intentionally blinked twice")) ==
        std::vector<std::string>{"int(twice(blink(john)))", "twice(int(blink(john)))"});
  CHECK(transduce(g, words("John blinked")) == std::vector<std::string>{"blink(john)"});
  CHECK(transduce(g, words("blinked John")).empty());
  CHECK(transduce(g, words("Mary blinked")).empty());
  auto back = swapped(load_grammar(R"(
    option right-sep " ";
    start S T;
    pair hi { left (S hello) right (T bonjour) }
  )"));
  CHECK(transduce(back, words("bonjour")) == std::vector<std::string>{"hello"});
}

TEST_CASE("transduce agrees with the natural enumeration") {
  for (const char* f : {"blink.stag", "eight.stag", "smoke.stag"}) {
    auto g = support::fixture(f);
    // Every elementary pair of these fixtures puts at least one token on the
    // left, except in eight where only alpha survives.
    std::map<std::string, std::set<std::string>> natural;
    for (const auto& [l, r] : enumerate_natural(g, 7)) natural[l].insert(r);
    auto sigma = alphabet(project_left(g));
    for (const auto& w : oracle::all_strings(sigma, 6)) {
      auto out = transduce(g, w);
      std::string key = join_yield(w, g.options().left_separator);
      std::set<std::string> expect;
      if (auto it = natural.find(key); it != natural.end()) expect = it->second;
      CHECK_MESSAGE(std::set<std::string>(out.begin(), out.end()) == expect, f << ": " << key);
    }
  }
}

TEST_CASE("reused parser and transducer match the one-shot calls") {
  for (const char* f : {"blink.stag", "eight.stag"}) {
    auto g = support::fixture(f);
    Grammar l = project_left(g);
    const Parser parser(l);
    const Transducer transducer(g);
    auto t = l.terminals();
    for (const auto& w : oracle::all_strings({t.begin(), t.end()}, 4)) {
      CHECK(parser.parse(w).enumerate(6) == parse(l, w).enumerate(6));
      CHECK(transducer.run(w) == transduce(g, w));
    }
  }
}
