// stag: command-line front end for synchronous TAG grammars.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stag/errors.hpp"
#include "stag/grammar_io.hpp"
#include "stag/parser.hpp"
#include "stag/render.hpp"
#include "stag/rewriting.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kEmpty = 1;
constexpr int kUsage = 2;

std::string shown(const std::string& s) { return s.empty() ? "ε" : s; }

void print_pair(const std::string& l, const std::string& r) {
  std::cout << shown(l) << " ||| " << shown(r) << '\n';
}

// A grammar file holds either tree pairs or plain trees.
struct Loaded {
  stag::GrammarDocument doc;
  std::optional<stag::SynchronousGrammar> sync;
  std::optional<stag::Grammar> tag;
};

Loaded load(const std::string& path) {
  Loaded out;
  std::string text = stag::read_file(path);
  out.doc = stag::parse_document(text);
  if (!out.doc.pairs.empty() || out.doc.trees.empty())
    out.sync = stag::load_grammar(text);
  else
    out.tag = stag::load_tag(text);
  return out;
}

const stag::SynchronousGrammar& need_sync(const Loaded& g) {
  if (!g.sync) throw stag::GrammarError("this command needs a grammar of tree pairs");
  return *g.sync;
}

stag::Mode mode_of(const std::string& m) { return m == "std" ? stag::Mode::standard : stag::Mode::multi; }

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronous tree-adjoining grammar toolkit"};
  app.require_subcommand(1);

  std::string grammar_path;
  std::string mode = "multi";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-g,--grammar", grammar_path, "Grammar file, - for stdin")->required();
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("-m,--mode", mode, "Adjunction regime")->check(CLI::IsMember({"std", "multi"}));
  };

  // parse
  auto* parse_cmd = app.add_subcommand("parse", "Parse a string and list its derivations");
  add_common(parse_cmd);
  add_mode(parse_cmd);
  std::string side = "left";
  std::size_t max_nodes = 12;
  bool raw = false;
  std::vector<std::string> words;
  parse_cmd->add_option("--side", side, "Component of a synchronous grammar")
      ->check(CLI::IsMember({"left", "right"}));
  parse_cmd->add_option("--max-nodes", max_nodes, "Size cap for infinite forests");
  parse_cmd->add_flag("--raw", raw, "Parse the bare component instead of its projection");
  parse_cmd->add_option("tokens", words, "Input tokens");

  // transduce
  auto* transduce_cmd = app.add_subcommand("transduce", "Map left strings to right strings");
  add_common(transduce_cmd);
  add_mode(transduce_cmd);
  bool reverse = false;
  transduce_cmd->add_flag("--reverse", reverse, "Map right strings to left strings");
  transduce_cmd->add_option("tokens", words, "Input tokens; lines of stdin when absent");

  // rewrite
  auto* rewrite_cmd = app.add_subcommand("rewrite", "Run the rewriting semantics");
  add_common(rewrite_cmd);
  std::size_t max_steps = 6;
  bool trace = false;
  rewrite_cmd->add_option("--max-steps", max_steps, "Rewriting step bound")->required();
  rewrite_cmd->add_flag("--trace", trace, "Print the steps leading to each pair");

  // enumerate
  auto* enumerate_cmd = app.add_subcommand("enumerate", "List string pairs up to a bound");
  add_common(enumerate_cmd);
  std::string semantics = "natural";
  std::size_t bound = 6;
  bool standard = false;
  enumerate_cmd->add_option("--mode", semantics, "natural or rewriting")
      ->check(CLI::IsMember({"natural", "rewriting"}));
  enumerate_cmd->add_option("--bound", bound, "Derivation nodes (natural) or steps (rewriting)")
      ->required();
  enumerate_cmd->add_flag("--std", standard, "Standard adjunction for natural enumeration");

  // project
  auto* project_cmd = app.add_subcommand("project", "Emit the constraint-mapped component TAG");
  add_common(project_cmd);
  project_cmd->add_option("--side", side, "left or right")->check(CLI::IsMember({"left", "right"}));

  // to-mctag
  auto* mctag_cmd = app.add_subcommand("to-mctag", "Emit the tree-local MCTAG reduction");
  add_common(mctag_cmd);

  // render
  auto* render_cmd = app.add_subcommand("render", "Render pairs, derived trees or derivations");
  add_common(render_cmd);
  add_mode(render_cmd);
  std::string what = "pair";
  std::string name;
  bool dot = false;
  render_cmd->add_option("--what", what, "pair, derived or derivation")
      ->check(CLI::IsMember({"pair", "derived", "derivation"}));
  render_cmd->add_option("--name", name, "Pair or tree name (pair)");
  render_cmd->add_flag("--dot", dot, "Graphviz output");
  render_cmd->add_option("tokens", words, "Input tokens (derived, derivation)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const stag::Mode m = mode_of(mode);
  Loaded g;
  try {
    g = load(grammar_path);
  } catch (const stag::Error& e) {
    std::cerr << "stag: " << grammar_path << ": " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*parse_cmd) {
      auto tokens = stag::tokenize(join(words));
      stag::Grammar tag;
      if (g.tag) {
        tag = *g.tag;
      } else if (raw) {
        tag = side == "left" ? g.sync->left() : g.sync->right();
      } else {
        tag = side == "left" ? stag::project_left(*g.sync) : stag::project_right(*g.sync);
      }
      stag::DerivationForest forest;
      try {
        forest = stag::parse(tag, tokens, m);
      } catch (const stag::LexiconError& e) {
        std::cerr << "stag: " << e.what() << '\n';
        return kEmpty;
      }
      auto count = forest.count();
      std::cout << "derivations: " << (count ? std::to_string(*count) : "infinite") << '\n';
      auto bound_nodes = forest.max_size();
      for (const auto& d : forest.enumerate(bound_nodes ? *bound_nodes : max_nodes))
        std::cout << stag::to_string(d) << '\n';
      return forest.empty() ? kEmpty : kOk;
    }

    if (*transduce_cmd) {
      stag::SynchronousGrammar sg = reverse ? stag::swapped(need_sync(g)) : need_sync(g);
      std::vector<std::string> inputs;
      if (!words.empty()) {
        inputs.push_back(join(words));
      } else {
        for (std::string line; std::getline(std::cin, line);) inputs.push_back(line);
      }
      const stag::Transducer transducer(sg, {m});
      bool any = false;
      for (const auto& input : inputs) {
        auto tokens = stag::tokenize(input);
        auto outputs = transducer.run(tokens);
        for (const auto& r : outputs) print_pair(stag::join_yield(tokens, sg.options().left_separator), r);
        any = any || !outputs.empty();
      }
      return any ? kOk : kEmpty;
    }

    if (*rewrite_cmd) {
      const auto& sg = need_sync(g);
      auto traces = stag::rewrite_search(sg, max_steps);
      for (const auto& t : traces) {
        const auto& s = t.final_state;
        print_pair(stag::join_yield(s.left.yield(), sg.options().left_separator),
                   stag::join_yield(s.right.yield(), sg.options().right_separator));
        if (trace) {
          std::cout << "  start " << t.initial_pair << '\n';
          for (const auto& step : t.steps)
            std::cout << "  " << step.pair << " at " << step.link.left.str() << side_char(step.link.left_side)
                      << " ~ " << step.link.right.str() << side_char(step.link.right_side) << '\n';
        }
      }
      return traces.empty() ? kEmpty : kOk;
    }

    if (*enumerate_cmd) {
      const auto& sg = need_sync(g);
      auto pairs = semantics == "natural"
                       ? stag::enumerate_natural(sg, bound, standard ? stag::Mode::standard : stag::Mode::multi)
                       : stag::enumerate_rewriting(sg, bound);
      for (const auto& [l, r] : pairs) print_pair(l, r);
      return pairs.empty() ? kEmpty : kOk;
    }

    if (*project_cmd) {
      const auto& sg = need_sync(g);
      auto tag = side == "left" ? stag::project_left(sg) : stag::project_right(sg);
      std::string base = sg.options().name.empty() ? "grammar" : sg.options().name;
      std::cout << stag::serialize(tag, base + "_" + side);
      return kOk;
    }

    if (*mctag_cmd) {
      std::cout << stag::serialize(stag::to_mctag(need_sync(g)));
      return kOk;
    }

    if (*render_cmd) {
      if (what == "pair") {
        bool found = false;
        {
          for (const auto& t : g.doc.trees) {
            if (!name.empty() && t.name != name) continue;
            found = true;
            if (dot) std::cout << stag::to_dot(t.tree, t.name);
            else std::cout << t.name << '\n' << stag::to_indented_text(t.tree);
          }
        }
        if (g.sync) {
          for (const auto& p : g.sync->pairs()) {
            if (!name.empty() && p.name != name) continue;
            found = true;
            if (dot) {
              std::cout << stag::to_dot(p);
            } else {
              std::cout << p.name << "\n  left  " << stag::to_text(p.left.tree) << "\n  right "
                        << stag::to_text(p.right.tree) << '\n';
              for (const auto& l : p.links)
                std::cout << "  link " << l.left.str() << side_char(l.left_side) << " ~ " << l.right.str()
                          << side_char(l.right_side) << '\n';
            }
          }
        }
        if (!found) {
          std::cerr << "stag: no tree named " << name << '\n';
          return kEmpty;
        }
        return kOk;
      }

      auto tokens = stag::tokenize(join(words));
      stag::Grammar tag = g.tag ? *g.tag : stag::project_left(*g.sync);
      stag::DerivationForest forest;
      try {
        forest = stag::parse(tag, tokens, m);
      } catch (const stag::LexiconError& e) {
        std::cerr << "stag: " << e.what() << '\n';
        return kEmpty;
      }
      auto bound_nodes = forest.max_size();
      auto derivations = forest.enumerate(bound_nodes ? *bound_nodes : max_nodes);
      std::size_t index = 0;
      for (const auto& d : derivations) {
        if (g.tag) {
          std::string graph = "derivation" + std::to_string(++index);
          if (what == "derivation")
            std::cout << (dot ? stag::to_dot(d, graph) : stag::to_string(d) + "\n");
          else {
            auto tree = stag::interpret(d, tag, m);
            std::cout << (dot ? stag::to_dot(tree, graph) : stag::to_text(tree) + "\n");
          }
          continue;
        }
        for (const auto& s : stag::map_synchronous(d, *g.sync, m)) {
          std::string graph = "derivation" + std::to_string(++index);
          if (what == "derivation") {
            std::cout << (dot ? stag::to_dot(s, graph) : stag::to_string(s) + "\n");
          } else {
            auto [l, r] = stag::derived_pair(s, *g.sync, m);
            if (dot) {
              std::cout << stag::to_dot(stag::DerivedPairState{l, r, {}}, graph);
            } else {
              std::cout << stag::to_text(l) << "\n" << stag::to_text(r) << "\n\n";
            }
          }
        }
      }
      return index == 0 ? kEmpty : kOk;
    }
  } catch (const stag::Error& e) {
    std::cerr << "stag: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
