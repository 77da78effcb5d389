#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stag/address.hpp"

namespace stag {

enum class LabelKind { nonterminal, terminal, epsilon };

struct Label {
  LabelKind kind = LabelKind::nonterminal;
  std::string symbol;

  static Label nonterminal(std::string s) { return {LabelKind::nonterminal, std::move(s)}; }
  static Label terminal(std::string s) { return {LabelKind::terminal, std::move(s)}; }
  static Label epsilon() { return {LabelKind::epsilon, {}}; }

  bool is_nonterminal() const { return kind == LabelKind::nonterminal; }

  auto operator<=>(const Label&) const = default;
};

/// Adjoining constraint carried by a node: NA, SA(names) or unrestricted,
/// plus the OA flag. SA names refer to elementary tree names, which are unique
/// within a grammar.
struct Constraint {
  enum class Allowed { any, none, set };

  Allowed allowed = Allowed::any;
  std::set<std::string> names;
  bool obligatory = false;

  static Constraint any() { return {}; }
  static Constraint none() { return {Allowed::none, {}, false}; }
  static Constraint only(std::set<std::string> names, bool obligatory = false) {
    return {Allowed::set, std::move(names), obligatory};
  }

  bool permits(std::string_view name) const;
  bool valid() const { return !(obligatory && allowed == Allowed::none); }
  bool is_default() const { return allowed == Allowed::any && !obligatory; }

  auto operator<=>(const Constraint&) const = default;
};

struct Node {
  Label label;
  Constraint constraint;
  bool substitution = false;
  bool foot = false;
  // Set on a node that has had an auxiliary tree adjoined above it in a
  // derived tree. Only used to judge OA discharge during rewriting.
  bool adjoined = false;
  std::vector<Node> children;

  bool is_leaf() const { return children.empty(); }

  std::strong_ordering operator<=>(const Node&) const = default;
  bool operator==(const Node&) const = default;
};

/// A labeled ordered tree. Elementary and derived trees share this
/// representation; a derived auxiliary tree still has exactly one foot.
struct Tree {
  Node root;

  const Node* find(const Address& a) const;
  Node* find(const Address& a);
  const Node& at(const Address& a) const;  // throws AddressError

  bool contains(const Address& a) const { return find(a) != nullptr; }
  std::optional<Address> foot_address() const;

  /// All node addresses in preorder.
  std::vector<Address> addresses() const;
  std::size_t size() const;

  /// Terminal symbols left to right; epsilon leaves contribute nothing.
  std::vector<std::string> yield() const;

  auto operator<=>(const Tree&) const = default;
};

std::string join_yield(const std::vector<std::string>& tokens, std::string_view sep);

enum class TreeKind { initial, auxiliary };
enum class AuxClass { predicative, modifier };

struct ElementaryTree {
  std::string name;
  TreeKind kind = TreeKind::initial;
  AuxClass cls = AuxClass::predicative;
  Tree tree;
  Address foot;  // meaningful for auxiliary trees only

  /// Validates the structural invariants and infers kind and foot.
  /// Throws GrammarError.
  static ElementaryTree make(std::string name, Tree tree,
                             AuxClass cls = AuxClass::predicative);

  bool is_auxiliary() const { return kind == TreeKind::auxiliary; }
  const Label& root_label() const { return tree.root.label; }

  bool operator==(const ElementaryTree&) const = default;
};

/// A plain TAG: a set of uniquely named elementary trees, an optional start
/// symbol restricting which initial trees may root a derivation, and the
/// separator used to render yields.
class Grammar {
 public:
  Grammar() = default;
  explicit Grammar(std::vector<ElementaryTree> trees,
                   std::optional<std::string> start = std::nullopt,
                   std::string separator = " ");

  const std::vector<ElementaryTree>& trees() const { return trees_; }
  const ElementaryTree* find(std::string_view name) const;
  const ElementaryTree& at(std::string_view name) const;  // throws GrammarError

  const std::optional<std::string>& start() const { return start_; }
  const std::string& separator() const { return separator_; }

  bool can_root(const ElementaryTree& t) const;
  std::set<std::string> terminals() const;

 private:
  std::vector<ElementaryTree> trees_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::optional<std::string> start_;
  std::string separator_ = " ";
};

}  // namespace stag
