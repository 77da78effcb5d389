#include "stag/synchronous.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "stag/errors.hpp"
#include "stag/operations.hpp"

namespace stag {

TreePair TreePair::make(std::string name, Tree left, Tree right, std::vector<Link> links,
                        AuxClass left_class, AuxClass right_class) {
  TreePair p;
  p.left = ElementaryTree::make(name, std::move(left), left_class);
  p.right = ElementaryTree::make(name, std::move(right), right_class);
  if (p.left.kind != p.right.kind)
    throw GrammarError("pair " + name + ": left and right trees differ in kind");
  for (const auto& l : links) {
    if (!p.left.tree.contains(l.left))
      throw GrammarError("pair " + name + ": link end " + l.left.str() + " not in left tree");
    if (!p.right.tree.contains(l.right))
      throw GrammarError("pair " + name + ": link end " + l.right.str() + " not in right tree");
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  p.links = std::move(links);
  p.name = std::move(name);
  return p;
}

SynchronousGrammar::SynchronousGrammar(std::vector<TreePair> pairs, GrammarOptions options)
    : pairs_(std::move(pairs)), options_(std::move(options)) {
  std::vector<ElementaryTree> left, right;
  for (const auto& p : pairs_) {
    if (p.left.name != p.name || p.right.name != p.name)
      throw GrammarError("pair " + p.name + ": halves must carry the pair name");
    left.push_back(p.left);
    right.push_back(p.right);
  }
  left_ = Grammar(std::move(left), options_.left_start, options_.left_separator);
  right_ = Grammar(std::move(right), options_.right_start, options_.right_separator);
}

const TreePair* SynchronousGrammar::find(std::string_view name) const {
  for (const auto& p : pairs_)
    if (p.name == name) return &p;
  return nullptr;
}

const TreePair& SynchronousGrammar::at(std::string_view name) const {
  const auto* p = find(name);
  if (!p) throw GrammarError("unknown pair " + std::string(name));
  return *p;
}

bool SynchronousGrammar::can_root(const TreePair& p) const {
  return left_.can_root(p.left) && right_.can_root(p.right);
}

SynchronousGrammar swapped(const SynchronousGrammar& g) {
  std::vector<TreePair> pairs;
  for (const auto& p : g.pairs()) {
    TreePair q = p;
    std::swap(q.left, q.right);
    for (auto& l : q.links) {
      std::swap(l.left, l.right);
      std::swap(l.left_side, l.right_side);
    }
    std::sort(q.links.begin(), q.links.end());
    pairs.push_back(std::move(q));
  }
  GrammarOptions o = g.options();
  std::swap(o.left_separator, o.right_separator);
  std::swap(o.left_start, o.right_start);
  return SynchronousGrammar(std::move(pairs), std::move(o));
}

// ---------------------------------------------------------------------------

std::size_t SyncNode::size() const {
  std::size_t s = 1;
  for (const auto& a : children) s += a.child.size();
  return s;
}

DerivationNode left_derivation(const SyncNode& s) {
  DerivationNode d{s.pair, {}};
  for (const auto& a : s.children) d.children.push_back({a.left_addr, a.left_order, left_derivation(a.child)});
  return d;
}

DerivationNode right_derivation(const SyncNode& s) {
  DerivationNode d{s.pair, {}};
  for (const auto& a : s.children)
    d.children.push_back({a.right_addr, a.right_order, right_derivation(a.child)});
  return d;
}

SyncNode swapped(const SyncNode& s) {
  SyncNode out{s.pair, {}};
  for (const auto& a : s.children)
    out.children.push_back({a.right_addr, a.left_addr, a.right_order, a.left_order, swapped(a.child)});
  return out;
}

namespace {

template <class Key>
void renumber(std::vector<SyncArc>& arcs, Key key) {
  // key(arc) -> pair<Address&, unsigned&>
  std::map<Address, std::vector<SyncArc*>> groups;
  for (auto& a : arcs) groups[key(a).first].push_back(&a);
  for (auto& [addr, group] : groups) {
    std::sort(group.begin(), group.end(),
              [&](SyncArc* x, SyncArc* y) { return key(*x).second < key(*y).second; });
    unsigned next = 0;
    for (auto* a : group) key(*a).second = next++;
  }
}

}  // namespace

SyncNode canonicalize(SyncNode s) {
  for (auto& a : s.children) a.child = canonicalize(std::move(a.child));
  renumber(s.children, [](SyncArc& a) { return std::pair<Address&, unsigned&>(a.left_addr, a.left_order); });
  renumber(s.children, [](SyncArc& a) { return std::pair<Address&, unsigned&>(a.right_addr, a.right_order); });
  std::sort(s.children.begin(), s.children.end());
  return s;
}

std::string to_string(const SyncNode& s) {
  std::string out = s.pair;
  if (s.children.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < s.children.size(); ++i) {
    const auto& a = s.children[i];
    if (i) out += ", ";
    out += a.left_addr.str();
    if (a.left_order) out += "#" + std::to_string(a.left_order);
    out += "~";
    out += a.right_addr.str();
    if (a.right_order) out += "#" + std::to_string(a.right_order);
    out += ':';
    out += to_string(a.child);
  }
  out += ')';
  return out;
}

SyncDerivation explicit_form(const SyncNode& s) {
  SyncDerivation sd{left_derivation(s), right_derivation(s), {}};
  std::function<void(const SyncNode&, NodePath&)> walk = [&](const SyncNode& n, NodePath& path) {
    sd.mapping.emplace_back(path, path);
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      path.push_back(i);
      walk(n.children[i].child, path);
      path.pop_back();
    }
  };
  NodePath root;
  walk(s, root);
  return sd;
}

namespace {

const DerivationNode* node_at(const DerivationNode& d, const NodePath& path) {
  const DerivationNode* cur = &d;
  for (auto i : path) {
    if (i >= cur->children.size()) return nullptr;
    cur = &cur->children[i].child;
  }
  return cur;
}

const DerivationArc* arc_at(const DerivationNode& d, const NodePath& path) {
  if (path.empty()) return nullptr;
  NodePath parent(path.begin(), path.end() - 1);
  const DerivationNode* p = node_at(d, parent);
  if (!p || path.back() >= p->children.size()) return nullptr;
  return &p->children[path.back()];
}

void all_paths(const DerivationNode& d, NodePath& path, std::vector<NodePath>& out) {
  out.push_back(path);
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    path.push_back(i);
    all_paths(d.children[i].child, path, out);
    path.pop_back();
  }
}

SyncVerdict fail(int condition, std::string message) { return {false, condition, std::move(message)}; }

// Checks f and returns it as a map, or the reason it is not a
// parent-preserving bijection.
std::optional<std::map<NodePath, NodePath>> bijection(const SyncDerivation& sd, std::string& why) {
  std::vector<NodePath> lp, rp;
  NodePath tmp;
  all_paths(sd.left, tmp, lp);
  all_paths(sd.right, tmp, rp);
  std::map<NodePath, NodePath> f;
  std::map<NodePath, NodePath> inverse;
  for (const auto& [l, r] : sd.mapping) {
    if (!node_at(sd.left, l) || !node_at(sd.right, r)) {
      why = "mapping names a node that does not exist";
      return std::nullopt;
    }
    if (!f.emplace(l, r).second || !inverse.emplace(r, l).second) {
      why = "mapping is not one-to-one";
      return std::nullopt;
    }
  }
  if (f.size() != lp.size() || inverse.size() != rp.size()) {
    why = "mapping is not total and onto";
    return std::nullopt;
  }
  for (const auto& [l, r] : f) {
    if (l.empty() != r.empty()) {
      why = "mapping does not send root to root";
      return std::nullopt;
    }
    if (l.empty()) continue;
    NodePath lparent(l.begin(), l.end() - 1), rparent(r.begin(), r.end() - 1);
    if (f.at(lparent) != rparent) {
      why = "mapping does not preserve parents";
      return std::nullopt;
    }
  }
  return f;
}

}  // namespace

std::optional<SyncNode> to_sync_tree(const SyncDerivation& sd, std::string* why) {
  std::string reason;
  auto f = bijection(sd, reason);
  if (!f) {
    if (why) *why = reason;
    return std::nullopt;
  }
  std::function<std::optional<SyncNode>(const NodePath&)> build =
      [&](const NodePath& l) -> std::optional<SyncNode> {
    const NodePath& r = f->at(l);
    const DerivationNode* ln = node_at(sd.left, l);
    const DerivationNode* rn = node_at(sd.right, r);
    if (ln->tree != rn->tree) {
      if (why) *why = "matched nodes name different pairs";
      return std::nullopt;
    }
    SyncNode out{ln->tree, {}};
    for (std::size_t i = 0; i < ln->children.size(); ++i) {
      NodePath lc = l;
      lc.push_back(i);
      const DerivationArc* la = arc_at(sd.left, lc);
      const DerivationArc* ra = arc_at(sd.right, f->at(lc));
      auto child = build(lc);
      if (!child) return std::nullopt;
      out.children.push_back({la->addr, ra->addr, la->order, ra->order, std::move(*child)});
    }
    return out;
  };
  return build({});
}

SyncVerdict check_sync_derivation(const SyncDerivation& sd, const SynchronousGrammar& g, Mode mode) {
  try {
    if (auto why = diagnose(sd.left, g.left(), mode)) return fail(1, "left derivation: " + *why);
  } catch (const GrammarError& e) {
    return fail(1, e.what());
  }
  try {
    if (auto why = diagnose(sd.right, g.right(), mode)) return fail(2, "right derivation: " + *why);
  } catch (const GrammarError& e) {
    return fail(2, e.what());
  }
  std::string why;
  auto f = bijection(sd, why);
  if (!f) return fail(3, why);
  for (const auto& [l, r] : *f) {
    const DerivationNode* ln = node_at(sd.left, l);
    const DerivationNode* rn = node_at(sd.right, r);
    if (ln->tree != rn->tree || !g.find(ln->tree))
      return fail(4, ln->tree + " and " + rn->tree + " are not halves of one pair");
    if (l.empty()) continue;
    NodePath lparent(l.begin(), l.end() - 1);
    const TreePair& parent = g.at(node_at(sd.left, lparent)->tree);
    const DerivationArc* la = arc_at(sd.left, l);
    const DerivationArc* ra = arc_at(sd.right, r);
    bool linked = std::any_of(parent.links.begin(), parent.links.end(), [&](const Link& k) {
      return k.left == la->addr && k.right == ra->addr;
    });
    if (!linked)
      return fail(4, "addresses " + la->addr.str() + " and " + ra->addr.str() +
                         " are not linked in " + parent.name);
  }
  return {};
}

SyncVerdict check_sync_derivation(const SyncNode& s, const SynchronousGrammar& g, Mode mode) {
  return check_sync_derivation(explicit_form(s), g, mode);
}

std::pair<Tree, Tree> derived_pair(const SyncNode& s, const SynchronousGrammar& g, Mode mode) {
  auto verdict = check_sync_derivation(s, g, mode);
  if (!verdict) throw DerivationError("ill-formed synchronous derivation: " + verdict.message);
  return {interpret(left_derivation(s), g.left(), mode),
          interpret(right_derivation(s), g.right(), mode)};
}

// ---------------------------------------------------------------------------

std::set<std::string> operable_pairs(const SynchronousGrammar& g, const TreePair& p,
                                     const Link& link) {
  std::set<std::string> out;
  for (const auto& q : g.pairs())
    if (check_site(p.left.tree, q.left, link.left) && check_site(p.right.tree, q.right, link.right))
      out.insert(q.name);
  return out;
}

namespace {

std::set<std::string> allowed_at(const SynchronousGrammar& g, const TreePair& p, const Address& a,
                                 bool left_side, const std::set<std::string>& alive) {
  std::set<std::string> out;
  for (const auto& l : p.links) {
    if ((left_side ? l.left : l.right) != a) continue;
    for (auto& q : operable_pairs(g, p, l))
      if (alive.contains(q)) out.insert(q);
  }
  return out;
}

bool pair_is_live(const SynchronousGrammar& g, const TreePair& p, const std::set<std::string>& alive) {
  for (int side = 0; side < 2; ++side) {
    const Tree& t = side == 0 ? p.left.tree : p.right.tree;
    for (const auto& a : t.addresses()) {
      const Node& n = t.at(a);
      if ((n.substitution || n.constraint.obligatory) && allowed_at(g, p, a, side == 0, alive).empty())
        return false;
    }
  }
  return true;
}

void rename_labels(Node& n, const std::string& prefix) {
  if (n.label.is_nonterminal()) n.label.symbol = prefix + n.label.symbol;
  for (auto& c : n.children) rename_labels(c, prefix);
}

}  // namespace

std::set<std::string> live_pairs(const SynchronousGrammar& g) {
  std::set<std::string> alive;
  for (const auto& p : g.pairs()) alive.insert(p.name);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.pairs()) {
      if (alive.contains(p.name) && !pair_is_live(g, p, alive)) {
        alive.erase(p.name);
        changed = true;
      }
    }
  }
  return alive;
}

Grammar project_left(const SynchronousGrammar& g) {
  const auto alive = live_pairs(g);
  std::vector<ElementaryTree> trees;
  for (const auto& p : g.pairs()) {
    if (!alive.contains(p.name)) continue;
    ElementaryTree t = p.left;
    for (const auto& a : p.left.tree.addresses()) {
      bool linked = std::any_of(p.links.begin(), p.links.end(), [&](const Link& l) { return l.left == a; });
      if (!linked) continue;
      Node& n = *t.tree.find(a);
      auto allowed = allowed_at(g, p, a, true, alive);
      bool obligatory = n.constraint.obligatory;
      for (const auto& l : p.links) {
        if (l.left != a || !p.right.tree.at(l.right).constraint.obligatory) continue;
        // A right OA node forces this left node only if every link at the
        // right node ends here.
        bool only_here = std::all_of(p.links.begin(), p.links.end(), [&](const Link& k) {
          return k.right != l.right || k.left == a;
        });
        obligatory = obligatory || only_here;
      }
      if (n.substitution)
        n.constraint = Constraint::only(std::move(allowed));
      else if (allowed.empty())
        n.constraint = Constraint::none();
      else
        n.constraint = Constraint::only(std::move(allowed), obligatory);
    }
    trees.push_back(std::move(t));
  }
  return Grammar(std::move(trees), g.options().left_start, g.options().left_separator);
}

Grammar project_right(const SynchronousGrammar& g) { return project_left(swapped(g)); }

MCTagGrammar to_mctag(const SynchronousGrammar& g) {
  const auto alive = live_pairs(g);
  MCTagGrammar m;
  m.start_symbol = "START";
  std::set<std::pair<std::string, std::string>> roots;
  for (const auto& p : g.pairs()) {
    if (!alive.contains(p.name)) continue;
    TreeSet set{p.name, p.left, p.right};
    for (int side = 0; side < 2; ++side) {
      ElementaryTree& t = side == 0 ? set.left : set.right;
      for (const auto& a : t.tree.addresses()) {
        Node& n = *t.tree.find(a);
        if (!n.label.is_nonterminal()) {
          n.constraint = Constraint::none();
          continue;
        }
        auto allowed = allowed_at(g, p, a, side == 0, alive);
        if (allowed.empty())
          n.constraint = Constraint::none();
        else
          n.constraint = Constraint::only(std::move(allowed), n.constraint.obligatory);
      }
      rename_labels(t.tree.root, side == 0 ? m.left_prefix : m.right_prefix);
    }
    if (!p.is_auxiliary() && g.can_root(p))
      roots.emplace(set.left.root_label().symbol, set.right.root_label().symbol);
    m.sets.push_back(std::move(set));
  }
  std::size_t i = 0;
  for (const auto& [l, r] : roots) {
    Node root{Label::nonterminal(m.start_symbol), Constraint::none(), false, false, false, {}};
    root.children.push_back({Label::nonterminal(l), Constraint::any(), true, false, false, {}});
    root.children.push_back({Label::nonterminal(r), Constraint::any(), true, false, false, {}});
    m.start_trees.push_back(ElementaryTree::make("start" + std::to_string(++i), Tree{std::move(root)}));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Bounded enumeration of synchronous derivations

namespace {

struct Candidate {
  Link link;
  const TreePair* pair;
};

struct Chosen {
  std::size_t candidate;
  const SyncNode* subtree;
  std::size_t key;  // identical keys are interchangeable
};

class SyncEnumerator {
 public:
  SyncEnumerator(const SynchronousGrammar& g, Mode mode) : g_(g), mode_(mode) {}

  const std::vector<SyncNode>& generate(const TreePair& p, std::size_t budget) {
    auto key = std::make_pair(p.name, budget);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::set<SyncNode> found;
    if (budget >= 1) {
      std::vector<Candidate> cands;
      for (const auto& l : p.links)
        for (const auto& q : operable_pairs(g_, p, l)) cands.push_back({l, &g_.at(q)});
      std::vector<Chosen> chosen;
      choose(p, cands, 0, budget - 1, chosen, found);
    }
    return memo_[key] = std::vector<SyncNode>(found.begin(), found.end());
  }

 private:
  void choose(const TreePair& p, const std::vector<Candidate>& cands, std::size_t index,
              std::size_t budget, std::vector<Chosen>& chosen, std::set<SyncNode>& found) {
    if (index == cands.size()) {
      emit(p, cands, chosen, found);
      return;
    }
    // Skip this candidate entirely.
    choose(p, cands, index + 1, budget, chosen, found);
    // Take one or more copies, subtrees in non-decreasing position.
    add_copies(p, cands, index, budget, 0, chosen, found);
  }

  void add_copies(const TreePair& p, const std::vector<Candidate>& cands, std::size_t index,
                  std::size_t budget, std::size_t min_pos, std::vector<Chosen>& chosen,
                  std::set<SyncNode>& found) {
    if (budget == 0) return;
    const auto& subs = generate(*cands[index].pair, budget);
    for (std::size_t pos = min_pos; pos < subs.size(); ++pos) {
      std::size_t sz = subs[pos].size();
      if (sz > budget) continue;
      chosen.push_back({index, &subs[pos], index * 100000 + pos});
      choose(p, cands, index + 1, budget - sz, chosen, found);
      if (repeatable(p, cands[index])) add_copies(p, cands, index, budget - sz, pos, chosen, found);
      chosen.pop_back();
    }
  }

  bool repeatable(const TreePair& p, const Candidate& c) const {
    if (mode_ == Mode::standard || !c.pair->is_auxiliary()) return false;
    (void)p;
    return true;
  }

  void emit(const TreePair& p, const std::vector<Candidate>& cands, const std::vector<Chosen>& chosen,
            std::set<SyncNode>& found) {
    SyncNode node{p.name, {}};
    for (const auto& c : chosen)
      node.children.push_back({cands[c.candidate].link.left, cands[c.candidate].link.right, 0, 0, *c.subtree});

    auto groups = [&](bool left) {
      std::map<Address, std::vector<std::size_t>> out;
      for (std::size_t i = 0; i < chosen.size(); ++i)
        out[left ? node.children[i].left_addr : node.children[i].right_addr].push_back(i);
      std::vector<std::vector<std::size_t>> v;
      for (auto& [a, idx] : out) v.push_back(std::move(idx));
      return v;
    };
    auto lgroups = groups(true);
    auto rgroups = groups(false);
    std::vector<std::vector<std::size_t>> all = lgroups;
    all.insert(all.end(), rgroups.begin(), rgroups.end());
    permute(p, node, chosen, all, lgroups.size(), 0, found);
  }

  // Assigns orders group by group, covering each distinct permutation once.
  void permute(const TreePair& p, SyncNode& node, const std::vector<Chosen>& chosen,
               const std::vector<std::vector<std::size_t>>& groups, std::size_t left_count,
               std::size_t gi, std::set<SyncNode>& found) {
    if (gi == groups.size()) {
      if (locally_valid(node)) found.insert(canonicalize(node));
      return;
    }
    const auto& group = groups[gi];
    bool left = gi < left_count;
    std::vector<std::size_t> keys;
    for (auto i : group) keys.push_back(chosen[i].key);
    std::sort(keys.begin(), keys.end());
    do {
      std::vector<bool> used(group.size(), false);
      for (std::size_t pos = 0; pos < keys.size(); ++pos) {
        for (std::size_t k = 0; k < group.size(); ++k) {
          if (used[k] || chosen[group[k]].key != keys[pos]) continue;
          used[k] = true;
          auto& arc = node.children[group[k]];
          (left ? arc.left_order : arc.right_order) = static_cast<unsigned>(pos);
          break;
        }
      }
      permute(p, node, chosen, groups, left_count, gi + 1, found);
    } while (std::next_permutation(keys.begin(), keys.end()));
  }

  bool locally_valid(const SyncNode& node) const {
    DerivationNode l{node.pair, {}}, r{node.pair, {}};
    for (const auto& a : node.children) {
      l.children.push_back({a.left_addr, a.left_order, {a.child.pair, {}}});
      r.children.push_back({a.right_addr, a.right_order, {a.child.pair, {}}});
    }
    return !diagnose_local(l, g_.left(), mode_) && !diagnose_local(r, g_.right(), mode_);
  }

  const SynchronousGrammar& g_;
  Mode mode_;
  std::map<std::pair<std::string, std::size_t>, std::vector<SyncNode>> memo_;
};

}  // namespace

std::vector<SyncNode> enumerate_sync_derivations(const SynchronousGrammar& g, std::size_t max_nodes,
                                                 Mode mode) {
  SyncEnumerator e(g, mode);
  std::set<SyncNode> out;
  for (const auto& p : g.pairs()) {
    if (p.is_auxiliary() || !g.can_root(p)) continue;
    for (const auto& s : e.generate(p, max_nodes)) out.insert(s);
  }
  return {out.begin(), out.end()};
}

std::set<StringPair> enumerate_natural(const SynchronousGrammar& g, std::size_t max_nodes, Mode mode) {
  std::set<StringPair> out;
  for (const auto& s : enumerate_sync_derivations(g, max_nodes, mode)) {
    auto [l, r] = derived_pair(s, g, mode);
    out.emplace(join_yield(l.yield(), g.options().left_separator),
                join_yield(r.yield(), g.options().right_separator));
  }
  return out;
}

}  // namespace stag
