#include "stag/tree.hpp"

#include <functional>

#include "stag/errors.hpp"

namespace stag {

bool Constraint::permits(std::string_view name) const {
  switch (allowed) {
    case Allowed::any:
      return true;
    case Allowed::none:
      return false;
    case Allowed::set:
      return names.contains(std::string(name));
  }
  return false;
}

namespace {

template <class N>
N* find_node(N& root, const Address& a) {
  N* cur = &root;
  for (auto idx : a.path()) {
    if (idx == 0 || idx > cur->children.size()) return nullptr;
    cur = &cur->children[idx - 1];
  }
  return cur;
}

void collect(const Node& n, Address& here, std::vector<Address>& out) {
  out.push_back(here);
  for (std::uint32_t i = 0; i < n.children.size(); ++i) {
    Address child = here.child(i + 1);
    collect(n.children[i], child, out);
  }
}

}  // namespace

const Node* Tree::find(const Address& a) const { return find_node(root, a); }
Node* Tree::find(const Address& a) { return find_node(root, a); }

const Node& Tree::at(const Address& a) const {
  const Node* n = find(a);
  if (!n) throw AddressError("address " + a.str() + " does not resolve");
  return *n;
}

std::optional<Address> Tree::foot_address() const {
  std::optional<Address> found;
  std::function<void(const Node&, const Address&)> walk = [&](const Node& n, const Address& a) {
    if (found) return;
    if (n.foot) {
      found = a;
      return;
    }
    for (std::uint32_t i = 0; i < n.children.size(); ++i) walk(n.children[i], a.child(i + 1));
  };
  walk(root, Address{});
  return found;
}

std::vector<Address> Tree::addresses() const {
  std::vector<Address> out;
  Address here;
  collect(root, here, out);
  return out;
}

std::size_t Tree::size() const {
  std::function<std::size_t(const Node&)> count = [&](const Node& n) {
    std::size_t s = 1;
    for (const auto& c : n.children) s += count(c);
    return s;
  };
  return count(root);
}

std::vector<std::string> Tree::yield() const {
  std::vector<std::string> out;
  std::function<void(const Node&)> walk = [&](const Node& n) {
    if (n.label.kind == LabelKind::terminal) out.push_back(n.label.symbol);
    for (const auto& c : n.children) walk(c);
  };
  walk(root);
  return out;
}

std::string join_yield(const std::vector<std::string>& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

ElementaryTree ElementaryTree::make(std::string name, Tree tree, AuxClass cls) {
  std::vector<Address> feet;
  std::function<void(const Node&, const Address&)> check = [&](const Node& n, const Address& a) {
    const std::string where = "tree " + name + " at " + a.str();
    if (!n.label.is_nonterminal() && !n.is_leaf())
      throw GrammarError(where + ": terminal or empty node has children");
    if (n.substitution) {
      if (!n.label.is_nonterminal() || !n.is_leaf())
        throw GrammarError(where + ": substitution node must be a nonterminal leaf");
      if (n.foot) throw GrammarError(where + ": substitution node marked as foot");
    }
    if (n.foot) {
      if (!n.label.is_nonterminal() || !n.is_leaf())
        throw GrammarError(where + ": foot must be a nonterminal leaf");
      feet.push_back(a);
    }
    if (n.label.is_nonterminal() && n.is_leaf() && !n.substitution && !n.foot)
      throw GrammarError(where + ": nonterminal leaf is neither a foot nor a substitution site");
    if (!n.constraint.valid())
      throw GrammarError(where + ": obligatory adjunction with NA constraint");
    for (std::uint32_t i = 0; i < n.children.size(); ++i) check(n.children[i], a.child(i + 1));
  };
  check(tree.root, Address{});
  if (!tree.root.label.is_nonterminal())
    throw GrammarError("tree " + name + ": root must be a nonterminal");
  if (feet.size() > 1) throw GrammarError("tree " + name + ": more than one foot");

  ElementaryTree e;
  e.name = std::move(name);
  e.cls = cls;
  if (feet.empty()) {
    e.kind = TreeKind::initial;
  } else {
    e.kind = TreeKind::auxiliary;
    e.foot = feet.front();
    if (tree.at(e.foot).label != tree.root.label)
      throw GrammarError("tree " + e.name + ": foot label differs from root label");
  }
  e.tree = std::move(tree);
  return e;
}

Grammar::Grammar(std::vector<ElementaryTree> trees, std::optional<std::string> start,
                 std::string separator)
    : trees_(std::move(trees)), start_(std::move(start)), separator_(std::move(separator)) {
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    if (!index_.emplace(trees_[i].name, i).second)
      throw GrammarError("duplicate tree name " + trees_[i].name);
  }
}

const ElementaryTree* Grammar::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &trees_[it->second];
}

const ElementaryTree& Grammar::at(std::string_view name) const {
  const auto* t = find(name);
  if (!t) throw GrammarError("unknown tree " + std::string(name));
  return *t;
}

bool Grammar::can_root(const ElementaryTree& t) const {
  if (t.is_auxiliary()) return false;
  return !start_ || t.root_label().symbol == *start_;
}

std::set<std::string> Grammar::terminals() const {
  std::set<std::string> out;
  for (const auto& t : trees_)
    for (auto& w : t.tree.yield()) out.insert(w);
  return out;
}

}  // namespace stag
