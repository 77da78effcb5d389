#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stag/derivation.hpp"
#include "stag/tree.hpp"

namespace stag {

/// A correspondence between a node of the left tree and a node of the right
/// tree of one pair. Sides only matter to the rewriting semantics.
struct Link {
  Address left;
  Side left_side = Side::top;
  Address right;
  Side right_side = Side::top;

  auto operator<=>(const Link&) const = default;
};

/// An elementary tree pair. Both halves carry the pair's name, so SA
/// constraints and derivation nodes refer to pairs directly.
struct TreePair {
  std::string name;
  ElementaryTree left;
  ElementaryTree right;
  std::vector<Link> links;

  /// Checks kind agreement and that every link end resolves. Throws
  /// GrammarError.
  static TreePair make(std::string name, Tree left, Tree right, std::vector<Link> links,
                       AuxClass left_class = AuxClass::predicative,
                       AuxClass right_class = AuxClass::predicative);

  bool is_auxiliary() const { return left.is_auxiliary(); }

  bool operator==(const TreePair&) const = default;
};

struct GrammarOptions {
  std::string name;
  std::string left_separator = " ";
  std::string right_separator = " ";
  Side default_side = Side::top;
  std::optional<std::string> left_start;
  std::optional<std::string> right_start;

  bool operator==(const GrammarOptions&) const = default;
};

class SynchronousGrammar {
 public:
  SynchronousGrammar() = default;
  explicit SynchronousGrammar(std::vector<TreePair> pairs, GrammarOptions options = {});

  const std::vector<TreePair>& pairs() const { return pairs_; }
  const TreePair* find(std::string_view name) const;
  const TreePair& at(std::string_view name) const;  // throws GrammarError

  const GrammarOptions& options() const { return options_; }

  /// Component TAGs G_L and G_R.
  const Grammar& left() const { return left_; }
  const Grammar& right() const { return right_; }

  /// Initial pairs allowed to root a synchronous derivation.
  bool can_root(const TreePair& p) const;

  bool operator==(const SynchronousGrammar& o) const {
    return pairs_ == o.pairs_ && options_ == o.options_;
  }

 private:
  std::vector<TreePair> pairs_;
  GrammarOptions options_;
  Grammar left_;
  Grammar right_;
};

/// Exchanges the halves of every pair (and of every link).
SynchronousGrammar swapped(const SynchronousGrammar& g);

// ---------------------------------------------------------------------------
// Synchronous derivations

struct SyncArc;

/// A synchronous derivation stored as a single tree of pair names. The
/// isomorphism between the two component derivations is implicit.
struct SyncNode {
  std::string pair;
  std::vector<SyncArc> children;

  std::size_t size() const;
  std::strong_ordering operator<=>(const SyncNode&) const;
  bool operator==(const SyncNode&) const;
};

struct SyncArc {
  Address left_addr;
  Address right_addr;
  unsigned left_order = 0;
  unsigned right_order = 0;
  SyncNode child;

  std::strong_ordering operator<=>(const SyncArc&) const = default;
  bool operator==(const SyncArc&) const = default;
};

inline std::strong_ordering SyncNode::operator<=>(const SyncNode& o) const {
  if (auto c = pair <=> o.pair; c != 0) return c;
  return children <=> o.children;
}
inline bool SyncNode::operator==(const SyncNode& o) const {
  return pair == o.pair && children == o.children;
}

DerivationNode left_derivation(const SyncNode& s);
DerivationNode right_derivation(const SyncNode& s);
SyncNode swapped(const SyncNode& s);
SyncNode canonicalize(SyncNode s);
std::string to_string(const SyncNode& s);

/// Path of child indices from the root of a derivation tree.
using NodePath = std::vector<std::size_t>;

/// A synchronous derivation in its explicit form: two derivations and the
/// node bijection f, given as (left path, right path) pairs.
struct SyncDerivation {
  DerivationNode left;
  DerivationNode right;
  std::vector<std::pair<NodePath, NodePath>> mapping;
};

/// Converts to the explicit form with the canonical bijection.
SyncDerivation explicit_form(const SyncNode& s);

struct SyncVerdict {
  bool ok = true;
  int condition = 0;  // first violated condition (1-4), 0 when ok
  std::string message;

  explicit operator bool() const { return ok; }
};

/// (1) left derivation well formed over G_L, (2) right over G_R,
/// (3) f is a parent-preserving bijection, (4) matched nodes name one pair and
/// matched arcs are linked in the parent pair.
SyncVerdict check_sync_derivation(const SyncNode& s, const SynchronousGrammar& g, Mode mode);
SyncVerdict check_sync_derivation(const SyncDerivation& sd, const SynchronousGrammar& g,
                                  Mode mode);

/// Converts the explicit form when f is a parent-preserving bijection.
std::optional<SyncNode> to_sync_tree(const SyncDerivation& sd, std::string* why = nullptr);

/// (interpret(left), interpret(right)). Throws DerivationError when the
/// synchronous derivation is ill formed.
std::pair<Tree, Tree> derived_pair(const SyncNode& s, const SynchronousGrammar& g,
                                   Mode mode = Mode::multi);

using StringPair = std::pair<std::string, std::string>;

/// All valid synchronous derivations with at most `max_nodes` nodes, rooted
/// in a start pair. Canonical and sorted.
std::vector<SyncNode> enumerate_sync_derivations(const SynchronousGrammar& g,
                                                 std::size_t max_nodes,
                                                 Mode mode = Mode::multi);

/// Yields of derived_pair over enumerate_sync_derivations.
std::set<StringPair> enumerate_natural(const SynchronousGrammar& g, std::size_t max_nodes,
                                       Mode mode = Mode::multi);

/// Pair names q whose left half can operate at the link's left end in
/// p.left and whose right half can operate at its right end in p.right.
std::set<std::string> operable_pairs(const SynchronousGrammar& g, const TreePair& p,
                                     const Link& link);

/// Pairs that can appear in some complete synchronous derivation, judged
/// locally: every OA node and substitution site on either side must be
/// reachable through a link some other live pair can operate on.
std::set<std::string> live_pairs(const SynchronousGrammar& g);

/// Left component TAG with right-side constraints mapped onto linked left
/// nodes. Dead pairs are dropped.
Grammar project_left(const SynchronousGrammar& g);
Grammar project_right(const SynchronousGrammar& g);

// ---------------------------------------------------------------------------
// Multicomponent reduction

struct TreeSet {
  std::string name;
  ElementaryTree left;
  ElementaryTree right;

  bool operator==(const TreeSet&) const = default;
};

struct MCTagGrammar {
  std::vector<TreeSet> sets;
  std::vector<ElementaryTree> start_trees;
  std::string start_symbol;
  std::string left_prefix = "L_";
  std::string right_prefix = "R_";
};

/// Tree-set-local MCTAG: labels renamed apart, an SA constraint on every
/// node listing the sets that can operate on a link at that node, and one
/// start tree per distinct pair of initial root labels.
MCTagGrammar to_mctag(const SynchronousGrammar& g);

}  // namespace stag
