#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stag/address.hpp"
#include "stag/tree.hpp"

namespace stag {

struct DerivationArc;

/// A node of a TAG derivation tree: the elementary tree it names and the
/// operations performed on that tree.
struct DerivationNode {
  std::string tree;
  std::vector<DerivationArc> children;

  std::size_t size() const;

  std::strong_ordering operator<=>(const DerivationNode&) const;
  bool operator==(const DerivationNode&) const;
};

/// An operation at `addr` of the parent's elementary tree. Arcs sharing an
/// address are stacked by `order`: lower orders end up higher in the derived
/// tree.
struct DerivationArc {
  Address addr;
  unsigned order = 0;
  DerivationNode child;

  std::strong_ordering operator<=>(const DerivationArc&) const = default;
  bool operator==(const DerivationArc&) const = default;
};

inline std::strong_ordering DerivationNode::operator<=>(const DerivationNode& o) const {
  if (auto c = tree <=> o.tree; c != 0) return c;
  return children <=> o.children;
}
inline bool DerivationNode::operator==(const DerivationNode& o) const {
  return tree == o.tree && children == o.children;
}

enum class Mode {
  standard,  // at most one operation per address
  multi,     // any number of modifiers plus at most one predicative per address
};

/// Sorts every child list by (addr, order) and renumbers same-address orders
/// to 0..k-1, recursively.
DerivationNode canonicalize(DerivationNode d);

std::string to_string(const DerivationNode& d);

/// Throws GrammarError for tree names missing from the grammar.
bool check_well_formed(const DerivationNode& d, const Grammar& g, Mode mode);

/// First violation found, or nullopt if well formed.
std::optional<std::string> diagnose(const DerivationNode& d, const Grammar& g, Mode mode);

/// Checks only the arcs leaving the root of `d`.
std::optional<std::string> diagnose_local(const DerivationNode& d, const Grammar& g, Mode mode);

/// The derived tree a well-formed derivation specifies. Throws
/// DerivationError when the derivation is ill formed in `mode`.
Tree interpret(const DerivationNode& d, const Grammar& g, Mode mode = Mode::multi);

struct StackedTree {
  Tree tree;
  AuxClass cls = AuxClass::modifier;
};

/// Adjoins `stack` at `site`: stack[0] outermost, each following tree at the
/// previous one's foot, and the original subtree under the last foot.
/// Throws MultiAdjunctionError on two predicative entries or a predicative
/// entry that is not first, and AdjunctionError on label mismatch.
Tree interpret_multi(const Tree& host, const Address& site,
                     std::span<const StackedTree> stack);

}  // namespace stag
