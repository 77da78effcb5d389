#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "stag/operations.hpp"

namespace oracle {

using namespace stag;

namespace {

void leaves(const Node& n, const Address& a, std::vector<std::pair<Address, std::string>>& out) {
  if (n.label.kind == LabelKind::terminal) out.emplace_back(a, n.label.symbol);
  for (std::uint32_t i = 0; i < n.children.size(); ++i) leaves(n.children[i], a.child(i + 1), out);
}

}  // namespace

std::vector<std::string> splice_yield(const Tree& host, const Tree& aux, const Address& site) {
  std::vector<std::pair<Address, std::string>> h, x;
  leaves(host.root, Address{}, h);
  leaves(aux.root, Address{}, x);
  const Address foot = *aux.foot_address();
  std::vector<std::string> before, inside, after, aux_before, aux_after;
  for (const auto& [a, s] : h) {
    if (site.is_prefix_of(a)) inside.push_back(s);
    else if (a < site) before.push_back(s);
    else after.push_back(s);
  }
  for (const auto& [a, s] : x) (a < foot ? aux_before : aux_after).push_back(s);
  std::vector<std::string> out = before;
  for (auto* part : {&aux_before, &inside, &aux_after, &after}) out.insert(out.end(), part->begin(), part->end());
  return out;
}

Tree compose(const DerivationNode& d, const Grammar& g, std::mt19937& rng) {
  Tree result = g.at(d.tree).tree;
  struct Op {
    unsigned order;
    Tree tree;
  };
  std::map<Address, std::vector<Op>> pending;
  for (const auto& a : d.children) pending[a.addr].push_back({a.order, compose(a.child, g, rng)});
  // Within one site the innermost (highest order) goes first, so later
  // adjunctions land above it.
  for (auto& [addr, ops] : pending)
    std::sort(ops.begin(), ops.end(), [](const Op& x, const Op& y) { return x.order > y.order; });
  std::map<Address, Address> where;
  for (const auto& [addr, ops] : pending) where[addr] = addr;
  std::map<Address, std::size_t> next;
  std::vector<Address> open;
  for (const auto& [addr, ops] : pending) open.push_back(addr);
  while (!open.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    std::size_t k = pick(rng);
    Address orig = open[k];
    Op& op = pending[orig][next[orig]++];
    if (next[orig] == pending[orig].size()) open.erase(open.begin() + static_cast<long>(k));
    Address at = where[orig];
    if (auto foot = op.tree.foot_address()) {
      result = detail::splice_adjoin(result, op.tree, at);
      for (auto& [o, cur] : where)
        if (o != orig) cur = map_address(at, *foot, cur);
    } else {
      result = detail::splice_substitute(result, op.tree, at);
    }
  }
  return result;
}

bool can_operate(const Node& site, const ElementaryTree& op) {
  if (!site.label.is_nonterminal() || site.label != op.tree.root.label) return false;
  if (op.is_auxiliary() == site.substitution) return false;
  switch (site.constraint.allowed) {
    case Constraint::Allowed::any: return true;
    case Constraint::Allowed::none: return false;
    case Constraint::Allowed::set: return site.constraint.names.contains(op.name);
  }
  return false;
}

namespace {

class Brute {
 public:
  Brute(const Grammar& g, Mode mode) : g_(g), mode_(mode) {}

  const std::vector<DerivationNode>& rooted(const ElementaryTree& t, std::size_t budget) {
    auto key = std::make_pair(t.name, budget);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::set<DerivationNode> out;
    if (budget >= 1) {
      std::vector<Address> sites;
      for (const auto& a : t.tree.addresses())
        if (t.tree.at(a).label.is_nonterminal()) sites.push_back(a);
      DerivationNode node{t.name, {}};
      expand_site(t, sites, 0, 0, budget - 1, node, out);
    }
    return memo_[key] = std::vector<DerivationNode>(out.begin(), out.end());
  }

 private:
  // Position `pos` of the operation sequence at sites[si].
  void expand_site(const ElementaryTree& t, const std::vector<Address>& sites, std::size_t si, unsigned pos,
                   std::size_t budget, DerivationNode& node, std::set<DerivationNode>& out) {
    if (si == sites.size()) {
      out.insert(canonicalize(node));
      return;
    }
    const Address& a = sites[si];
    const Node& n = t.tree.at(a);
    bool must = n.substitution || n.constraint.obligatory;
    unsigned limit = (n.substitution || mode_ == Mode::standard) ? 1 : ~0u;
    if (pos > 0 || !must) expand_site(t, sites, si + 1, 0, budget, node, out);
    if (pos >= limit || budget == 0) return;
    for (const auto& op : g_.trees()) {
      if (!can_operate(n, op)) continue;
      if (mode_ == Mode::multi && op.is_auxiliary() && op.cls == AuxClass::predicative && pos > 0) continue;
      for (const auto& sub : rooted(op, budget)) {
        std::size_t size = sub.size();
        if (size > budget) continue;
        node.children.push_back({a, pos, sub});
        expand_site(t, sites, si, pos + 1, budget - size, node, out);
        node.children.pop_back();
      }
    }
  }

  const Grammar& g_;
  Mode mode_;
  std::map<std::pair<std::string, std::size_t>, std::vector<DerivationNode>> memo_;
};

}  // namespace

std::set<DerivationNode> brute_derivations(const Grammar& g, std::size_t max_nodes, Mode mode) {
  Brute b(g, mode);
  std::set<DerivationNode> out;
  for (const auto& t : g.trees()) {
    if (t.is_auxiliary() || !g.can_root(t)) continue;
    for (const auto& d : b.rooted(t, max_nodes)) out.insert(d);
  }
  return out;
}

namespace {

std::optional<DerivationNode> random_rooted(const Grammar& g, const ElementaryTree& t, std::mt19937& rng,
                                            Mode mode, int depth) {
  DerivationNode node{t.name, {}};
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (const auto& a : t.tree.addresses()) {
    const Node& n = t.tree.at(a);
    if (!n.label.is_nonterminal()) continue;
    std::vector<const ElementaryTree*> ops;
    for (const auto& op : g.trees())
      if (can_operate(n, op)) ops.push_back(&op);
    if (ops.empty()) {
      if (n.substitution || n.constraint.obligatory) return std::nullopt;
      continue;
    }
    unsigned count = 0;
    if (n.substitution) {
      count = 1;
    } else {
      double r = coin(rng);
      count = depth <= 0 ? 0 : r < 0.5 ? 0 : r < 0.85 ? 1 : r < 0.97 ? 2 : 3;
      if (n.constraint.obligatory) count = std::max(count, 1u);
      if (mode == Mode::standard) count = std::min(count, 1u);
    }
    std::vector<DerivationNode> stack;
    for (unsigned i = 0; i < count; ++i) {
      std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
      const ElementaryTree* op = ops[pick(rng)];
      auto sub = random_rooted(g, *op, rng, mode, depth - 1);
      if (!sub) return std::nullopt;
      // A predicative tree goes outermost.
      if (op->is_auxiliary() && op->cls == AuxClass::predicative)
        stack.insert(stack.begin(), std::move(*sub));
      else
        stack.push_back(std::move(*sub));
    }
    for (unsigned i = 0; i < stack.size(); ++i) node.children.push_back({a, i, std::move(stack[i])});
  }
  return node;
}

}  // namespace

std::optional<DerivationNode> random_derivation(const Grammar& g, std::mt19937& rng, Mode mode, int depth) {
  std::vector<const ElementaryTree*> roots;
  for (const auto& t : g.trees())
    if (!t.is_auxiliary() && g.can_root(t)) roots.push_back(&t);
  if (roots.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
  auto d = random_rooted(g, *roots[pick(rng)], rng, mode, depth);
  if (d) *d = canonicalize(std::move(*d));
  return d;
}

std::vector<std::vector<std::string>> all_strings(const std::vector<std::string>& alphabet, std::size_t max_len) {
  std::vector<std::vector<std::string>> out{{}};
  std::size_t from = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i) {
      for (const auto& a : alphabet) {
        auto w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    from = to;
  }
  return out;
}

namespace {

void labels(const Node& n, std::set<std::string>& out) {
  if (n.label.is_nonterminal()) out.insert(n.label.symbol);
  for (const auto& c : n.children) labels(c, out);
}

Node plain(Node n, const std::string& strip) {
  if (n.label.is_nonterminal() && n.label.symbol.starts_with(strip)) n.label.symbol.erase(0, strip.size());
  n.constraint = {};
  for (auto& c : n.children) c = plain(std::move(c), strip);
  return n;
}

std::set<std::string> alive_pairs(const SynchronousGrammar& g) {
  std::set<std::string> alive;
  for (const auto& p : g.pairs()) alive.insert(p.name);
  auto satisfiable = [&](const TreePair& p, const Address& a, bool left) {
    for (const auto& l : p.links) {
      if ((left ? l.left : l.right) != a) continue;
      for (const auto& q : g.pairs())
        if (alive.contains(q.name) && can_operate(p.left.tree.at(l.left), q.left) &&
            can_operate(p.right.tree.at(l.right), q.right))
          return true;
    }
    return false;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.pairs()) {
      if (!alive.contains(p.name)) continue;
      bool ok = true;
      for (int side = 0; side < 2 && ok; ++side) {
        const Tree& t = side == 0 ? p.left.tree : p.right.tree;
        for (const auto& a : t.addresses()) {
          const Node& n = t.at(a);
          if ((n.substitution || n.constraint.obligatory) && !satisfiable(p, a, side == 0)) ok = false;
        }
      }
      if (!ok) {
        alive.erase(p.name);
        changed = true;
      }
    }
  }
  return alive;
}

}  // namespace

std::vector<std::string> audit_mctag(const SynchronousGrammar& g, const MCTagGrammar& m) {
  std::vector<std::string> bad;
  std::set<std::string> left_labels, right_labels;
  for (const auto& s : m.sets) {
    labels(s.left.tree.root, left_labels);
    labels(s.right.tree.root, right_labels);
  }
  for (const auto& l : left_labels)
    if (!l.starts_with(m.left_prefix)) bad.push_back("left label " + l + " lacks the left prefix");
  for (const auto& r : right_labels)
    if (!r.starts_with(m.right_prefix)) bad.push_back("right label " + r + " lacks the right prefix");
  for (const auto& l : left_labels)
    if (right_labels.contains(l)) bad.push_back("label " + l + " on both sides");
  if (left_labels.contains(m.start_symbol) || right_labels.contains(m.start_symbol))
    bad.push_back("start symbol is not fresh");

  const auto alive = alive_pairs(g);
  std::set<std::string> set_names;
  for (const auto& s : m.sets) set_names.insert(s.name);
  if (set_names != alive) bad.push_back("tree sets differ from the live pairs");

  for (const auto& s : m.sets) {
    const TreePair* p = g.find(s.name);
    if (!p) {
      bad.push_back("set " + s.name + " has no pair");
      continue;
    }
    if (plain(s.left.tree.root, m.left_prefix) != plain(p->left.tree.root, "") ||
        plain(s.right.tree.root, m.right_prefix) != plain(p->right.tree.root, ""))
      bad.push_back("set " + s.name + " changes tree shape");
    if (s.left.kind != p->left.kind || s.left.cls != p->left.cls || s.right.cls != p->right.cls)
      bad.push_back("set " + s.name + " changes tree kind or class");
    for (int side = 0; side < 2; ++side) {
      const Tree& orig = side == 0 ? p->left.tree : p->right.tree;
      const Tree& made = side == 0 ? s.left.tree : s.right.tree;
      for (const auto& a : orig.addresses()) {
        std::set<std::string> expect;
        for (const auto& l : p->links) {
          if ((side == 0 ? l.left : l.right) != a) continue;
          for (const auto& q : g.pairs())
            if (alive.contains(q.name) && can_operate(p->left.tree.at(l.left), q.left) &&
                can_operate(p->right.tree.at(l.right), q.right))
              expect.insert(q.name);
        }
        const Constraint& c = made.at(a).constraint;
        std::string where = "set " + s.name + (side == 0 ? " left " : " right ") + a.str();
        if (expect.empty()) {
          if (c.allowed != Constraint::Allowed::none) bad.push_back(where + " should allow nothing");
        } else if (c.allowed != Constraint::Allowed::set || c.names != expect) {
          bad.push_back(where + " has the wrong SA entry");
        }
        if (c.obligatory != orig.at(a).constraint.obligatory) bad.push_back(where + " changes OA");
      }
    }
  }

  std::set<std::pair<std::string, std::string>> roots;
  for (const auto& p : g.pairs())
    if (alive.contains(p.name) && !p.is_auxiliary() && g.can_root(p))
      roots.emplace(m.left_prefix + p.left.tree.root.label.symbol, m.right_prefix + p.right.tree.root.label.symbol);
  std::set<std::pair<std::string, std::string>> seen;
  std::set<std::string> names = set_names;
  for (const auto& t : m.start_trees) {
    if (!names.insert(t.name).second) bad.push_back("start tree name " + t.name + " clashes");
    const Node& r = t.tree.root;
    if (r.label != Label::nonterminal(m.start_symbol) || r.children.size() != 2 ||
        r.constraint.allowed != Constraint::Allowed::none) {
      bad.push_back("start tree " + t.name + " is malformed");
      continue;
    }
    for (const auto& c : r.children)
      if (!c.substitution) bad.push_back("start tree " + t.name + " child is not a substitution site");
    seen.emplace(r.children[0].label.symbol, r.children[1].label.symbol);
  }
  if (seen != roots || seen.size() != m.start_trees.size())
    bad.push_back("start trees do not match the start-eligible root label pairs");
  return bad;
}

}  // namespace oracle
