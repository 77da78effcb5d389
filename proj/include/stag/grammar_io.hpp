#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "stag/synchronous.hpp"

namespace stag {

/// Parsed form of a grammar file: header options, synchronous pairs and
/// plain trees.
///
///   grammar blink;
///   option left-sep " ";
///   option default-side ^;
///   start S F;
///   pair beta_twice {
///     left  (S:mod (S*) (Adv twice))
///     right (F:mod twice "(" (F*) ")")
///   }
///   tree alpha (S (NP↓) (VP (V slept)));
///
/// Node heads take markers: ↓ (or !) substitution, * foot, :NA, :OA,
/// :SA(a,b), :mod, :pred, and #k link diacritics with optional ^ or v side.
/// `<eps>` is an empty leaf, `%` starts a comment.
struct GrammarDocument {
  GrammarOptions options;
  std::vector<TreePair> pairs;
  std::vector<ElementaryTree> trees;
  std::string separator = " ";  // for plain trees
};

GrammarDocument parse_document(std::string_view text);  // throws LoadError

SynchronousGrammar load_grammar(std::string_view text);
Grammar load_tag(std::string_view text);

std::string serialize(const SynchronousGrammar& g);
std::string serialize(const Grammar& g, std::string_view name = "");
std::string serialize(const MCTagGrammar& g);

/// One tree as an s-expression; `diacritics` maps addresses to link marks
/// such as "#1" or "#2v".
std::string serialize_tree(const Tree& t, AuxClass cls = AuxClass::predicative,
                           const std::multimap<Address, std::string>& diacritics = {});

std::string read_file(const std::string& path);  // "-" reads stdin

}  // namespace stag
