#include "stag/derivation.hpp"

#include <algorithm>
#include <map>

#include "stag/errors.hpp"
#include "stag/operations.hpp"

namespace stag {

std::size_t DerivationNode::size() const {
  std::size_t s = 1;
  for (const auto& a : children) s += a.child.size();
  return s;
}

DerivationNode canonicalize(DerivationNode d) {
  for (auto& a : d.children) a.child = canonicalize(std::move(a.child));
  std::sort(d.children.begin(), d.children.end(), [](const auto& x, const auto& y) {
    if (x.addr != y.addr) return x.addr < y.addr;
    if (x.order != y.order) return x.order < y.order;
    return x.child < y.child;
  });
  for (std::size_t i = 0; i < d.children.size();) {
    std::size_t j = i;
    unsigned next = 0;
    while (j < d.children.size() && d.children[j].addr == d.children[i].addr)
      d.children[j++].order = next++;
    i = j;
  }
  return d;
}

std::string to_string(const DerivationNode& d) {
  std::string out = d.tree;
  if (d.children.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    const auto& a = d.children[i];
    if (i) out += ", ";
    out += a.addr.str();
    if (a.order) out += "#" + std::to_string(a.order);
    out += ':';
    out += to_string(a.child);
  }
  out += ')';
  return out;
}

namespace {

std::optional<std::string> diagnose_node(const DerivationNode& d, const Grammar& g, Mode mode,
                                         bool recursive = true) {
  const ElementaryTree& host = g.at(d.tree);
  std::map<Address, std::vector<const DerivationArc*>> by_addr;
  for (const auto& a : d.children) {
    const ElementaryTree& op = g.at(a.child.tree);
    if (!check_site(host.tree, op, a.addr))
      return op.name + " cannot operate at " + a.addr.str() + " of " + host.name;
    by_addr[a.addr].push_back(&a);
  }

  for (const auto& [addr, arcs] : by_addr) {
    const Node& n = host.tree.at(addr);
    if (n.substitution) {
      if (arcs.size() != 1)
        return "substitution site " + addr.str() + " of " + host.name + " has " +
               std::to_string(arcs.size()) + " operations";
      continue;
    }
    if (mode == Mode::standard) {
      if (arcs.size() > 1)
        return "multiple adjunctions at " + addr.str() + " of " + host.name;
      continue;
    }
    std::vector<unsigned> orders;
    const DerivationArc* pred = nullptr;
    for (const auto* a : arcs) {
      orders.push_back(a->order);
      if (g.at(a->child.tree).cls == AuxClass::predicative) {
        if (pred) return "two predicative trees adjoined at " + addr.str() + " of " + host.name;
        pred = a;
      }
    }
    std::sort(orders.begin(), orders.end());
    if (std::adjacent_find(orders.begin(), orders.end()) != orders.end())
      return "repeated order index at " + addr.str() + " of " + host.name;
    if (pred && pred->order != orders.front())
      return "predicative tree is not outermost at " + addr.str() + " of " + host.name;
  }

  for (const auto& addr : host.tree.addresses()) {
    const Node& n = host.tree.at(addr);
    if (n.substitution && !by_addr.contains(addr))
      return "open substitution site " + addr.str() + " of " + host.name;
    if (n.constraint.obligatory && !by_addr.contains(addr))
      return "obligatory adjunction unmet at " + addr.str() + " of " + host.name;
  }

  if (recursive)
    for (const auto& a : d.children)
      if (auto why = diagnose_node(a.child, g, mode)) return why;
  return std::nullopt;
}

Tree build(const DerivationNode& d, const Grammar& g) {
  Tree result = g.at(d.tree).tree;
  std::map<Address, std::vector<const DerivationArc*>> by_addr;
  for (const auto& a : d.children) by_addr[a.addr].push_back(&a);
  // Descending address order keeps every remaining elementary address valid:
  // descendants are rewritten before their ancestors, and siblings to the
  // right before siblings to the left.
  for (auto it = by_addr.rbegin(); it != by_addr.rend(); ++it) {
    auto& [addr, arcs] = *it;
    if (result.at(addr).substitution) {
      result = detail::splice_substitute(result, build(arcs.front()->child, g), addr);
      continue;
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const auto* x, const auto* y) { return x->order < y->order; });
    std::vector<StackedTree> stack;
    for (const auto* a : arcs) stack.push_back({build(a->child, g), g.at(a->child.tree).cls});
    result = interpret_multi(result, addr, stack);
  }
  return result;
}

}  // namespace

std::optional<std::string> diagnose(const DerivationNode& d, const Grammar& g, Mode mode) {
  return diagnose_node(d, g, mode);
}

std::optional<std::string> diagnose_local(const DerivationNode& d, const Grammar& g, Mode mode) {
  return diagnose_node(d, g, mode, false);
}

bool check_well_formed(const DerivationNode& d, const Grammar& g, Mode mode) {
  return !diagnose_node(d, g, mode);
}

Tree interpret(const DerivationNode& d, const Grammar& g, Mode mode) {
  if (auto why = diagnose(d, g, mode)) throw DerivationError("ill-formed derivation: " + *why);
  return build(d, g);
}

Tree interpret_multi(const Tree& host, const Address& site, std::span<const StackedTree> stack) {
  const Node& n = host.at(site);
  for (std::size_t i = 0; i < stack.size(); ++i) {
    if (stack[i].cls == AuxClass::predicative && i != 0)
      throw MultiAdjunctionError("predicative tree must be outermost at " + site.str());
    if (stack[i].tree.root.label != n.label)
      throw AdjunctionError("label mismatch in stack at " + site.str());
  }
  Tree result = host;
  for (auto it = stack.rbegin(); it != stack.rend(); ++it)
    result = detail::splice_adjoin(result, it->tree, site);
  return result;
}

}  // namespace stag
