#include "stag/parser.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "stag/errors.hpp"
#include "stag/operations.hpp"

namespace stag {
namespace detail {

// One node of one elementary tree.
struct NodeInfo {
  std::size_t tree = 0;
  Address addr;
  const Node* node = nullptr;
  int parent = -1;
  unsigned position = 0;  // 1-based index among the parent's children
  std::vector<int> children;
  bool adjoinable = false;
};

enum class Kind : std::uint8_t { dot, bot, mod, top };

// DOT: first k children of a node recognized. BOT: the node's subtree with
// nothing adjoined at the node itself. MOD: BOT under a (possibly empty)
// stack of modifiers; flag records whether the stack is non-empty. TOP: the
// node as seen by its parent.
struct Item {
  Kind kind;
  int node;
  std::uint8_t k;
  std::uint8_t i, j, p, q;  // span [i, j), foot gap [p, q) or p == q == kNoGap
  bool flag;
};

constexpr std::uint8_t kNoGap = 255;

enum class Rule : std::uint8_t {
  terminal,
  epsilon,
  foot,
  dot_first,
  dot_next,
  bot_from_dot,
  mod_empty,
  mod_adjoin,
  top_from_mod,
  top_pred,
  top_from_bot,
  top_std_adjoin,
  top_subst,
};

struct Edge {
  Rule rule;
  int a = -1;
  int b = -1;
  int next = -1;  // next edge of the same item
};

// Grammar-side tables shared by every chart of one parser.
struct GrammarIndex {
  Grammar grammar;
  std::set<std::string> alphabet;
  std::vector<NodeInfo> nodes;
  std::vector<int> roots;        // root node id per tree
  std::vector<int> dot_offset;   // first DOT slot of each node
  std::size_t dot_slots = 0;
  std::vector<std::vector<char>> compat;  // [aux tree][node]: adjunction allowed
  std::vector<std::vector<int>> subst;    // [initial tree]: substitution nodes accepting it

  explicit GrammarIndex(const Grammar& g);
};

struct Chart {
  std::shared_ptr<const GrammarIndex> index;
  Mode mode = Mode::multi;
  std::vector<Item> items;
  std::vector<Edge> edges;
  std::vector<int> first_edge;  // per item

  template <class F>
  void for_edges(int item, F&& f) const {
    for (int e = first_edge[item]; e >= 0; e = edges[e].next) f(edges[e]);
  }
  std::vector<int> goals;
};

GrammarIndex::GrammarIndex(const Grammar& g) : grammar(g), alphabet(g.terminals()) {
  const auto& trees = grammar.trees();
  for (std::size_t t = 0; t < trees.size(); ++t) {
    std::function<int(const Node&, const Address&, int, unsigned)> walk =
        [&](const Node& n, const Address& a, int parent, unsigned pos) {
          int id = static_cast<int>(nodes.size());
          nodes.push_back({t, a, &n, parent, pos, {}, false});
          nodes[id].adjoinable = n.label.is_nonterminal() && !n.substitution;
          for (std::uint32_t i = 0; i < n.children.size(); ++i) {
            int child = walk(n.children[i], a.child(i + 1), id, i + 1);
            nodes[id].children.push_back(child);
          }
          return id;
        };
    roots.push_back(walk(trees[t].tree.root, Address{}, -1, 0));
  }
  for (const auto& info : nodes) {
    dot_offset.push_back(static_cast<int>(dot_slots));
    dot_slots += info.children.size() + 1;
  }
  compat.resize(trees.size());
  subst.resize(trees.size());
  for (std::size_t t = 0; t < trees.size(); ++t) {
    if (trees[t].is_auxiliary()) compat[t].resize(nodes.size(), 0);
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      const auto& info = nodes[id];
      const Tree& host = trees[info.tree].tree;
      if (trees[t].is_auxiliary()) {
        if (info.adjoinable && check_site(host, trees[t], info.addr)) compat[t][id] = 1;
      } else if (info.node->substitution && check_site(host, trees[t], info.addr)) {
        subst[t].push_back(static_cast<int>(id));
      }
    }
  }
}

namespace {

std::uint64_t pack(const Item& it) {
  std::uint64_t key = static_cast<std::uint64_t>(it.node);
  key = key << 2 | static_cast<std::uint64_t>(it.kind);
  key = key << 8 | it.k;
  key = key << 8 | it.i;
  key = key << 8 | it.j;
  key = key << 8 | it.p;
  key = key << 8 | it.q;
  key = key << 1 | (it.flag ? 1u : 0u);
  return key;
}

bool has_gap(const Item& it) { return it.p != kNoGap; }

class Builder {
 public:
  Builder(Chart& chart, std::span<const std::string> tokens)
      : c_(chart), g_(*chart.index), w_(tokens), n1_(tokens.size() + 1) {
    top_by_start_.resize(g_.nodes.size() * n1_);
    dot_by_end_.resize(g_.dot_slots * n1_);
    lower_.resize(n1_ * n1_);
    aux_by_gap_.resize(n1_ * n1_);
    ids_.reserve(1024);
  }

  void run() {
    seed();
    while (!agenda_.empty()) {
      int id = agenda_.back();
      agenda_.pop_back();
      process(id);
    }
    const auto n = static_cast<std::uint8_t>(w_.size());
    for (std::size_t t = 0; t < g_.grammar.trees().size(); ++t) {
      const auto& tree = g_.grammar.trees()[t];
      if (!g_.grammar.can_root(tree)) continue;
      Item goal{Kind::top, g_.roots[t], 0, 0, n, kNoGap, kNoGap, false};
      if (auto it = ids_.find(pack(goal)); it != ids_.end()) c_.goals.push_back(it->second);
    }
  }

 private:
  void seed() {
    const auto n = static_cast<std::uint8_t>(w_.size());
    for (std::size_t id = 0; id < g_.nodes.size(); ++id) {
      const auto& info = g_.nodes[id];
      const Node& node = *info.node;
      int nid = static_cast<int>(id);
      switch (node.label.kind) {
        case LabelKind::terminal:
          for (std::uint8_t i = 0; i < n; ++i)
            if (w_[i] == node.label.symbol)
              add({Kind::top, nid, 0, i, static_cast<std::uint8_t>(i + 1), kNoGap, kNoGap, false},
                  {Rule::terminal});
          break;
        case LabelKind::epsilon:
          for (std::uint8_t i = 0; i <= n; ++i)
            add({Kind::top, nid, 0, i, i, kNoGap, kNoGap, false}, {Rule::epsilon});
          break;
        case LabelKind::nonterminal:
          if (node.foot)
            for (std::uint8_t p = 0; p <= n; ++p)
              for (std::uint8_t q = p; q <= n; ++q) add({Kind::bot, nid, 0, p, q, p, q, false}, {Rule::foot});
          break;
      }
    }
  }

  int add(const Item& it, Edge e) {
    auto key = pack(it);
    auto [pos, fresh] = ids_.emplace(key, static_cast<int>(c_.items.size()));
    if (fresh) {
      c_.items.push_back(it);
      c_.first_edge.push_back(-1);
      agenda_.push_back(pos->second);
    }
    e.next = c_.first_edge[pos->second];
    c_.first_edge[pos->second] = static_cast<int>(c_.edges.size());
    c_.edges.push_back(e);
    return pos->second;
  }

  std::vector<int>& tops(int node, std::size_t i) { return top_by_start_[node * n1_ + i]; }
  std::vector<int>& dots(int node, std::size_t k, std::size_t j) {
    return dot_by_end_[(g_.dot_offset[node] + k) * n1_ + j];
  }
  std::vector<int>& lowers(std::size_t i, std::size_t j) { return lower_[i * n1_ + j]; }
  std::vector<int>& auxes(std::size_t p, std::size_t q) { return aux_by_gap_[p * n1_ + q]; }

  bool obligatory(int node) const { return g_.nodes[node].node->constraint.obligatory; }
  bool is_root_of_aux(int node) const {
    const auto& info = g_.nodes[node];
    return info.parent < 0 && g_.grammar.trees()[info.tree].is_auxiliary();
  }

  void combine_dot(int dot_id, int top_id) {
    const Item d = c_.items[dot_id];
    const Item t = c_.items[top_id];
    if (has_gap(d) && has_gap(t)) return;
    std::uint8_t p = has_gap(d) ? d.p : t.p;
    std::uint8_t q = has_gap(d) ? d.q : t.q;
    add({Kind::dot, d.node, static_cast<std::uint8_t>(d.k + 1), d.i, t.j, p, q, false},
        {Rule::dot_next, dot_id, top_id});
  }

  // aux: TOP item of an auxiliary root; lower: BOT (standard) or MOD (multi)
  // item spanning exactly the aux item's gap.
  void combine_adjoin(int aux_id, int lower_id) {
    const Item a = c_.items[aux_id];
    const Item y = c_.items[lower_id];
    const auto& tree = g_.grammar.trees()[g_.nodes[a.node].tree];
    if (!g_.compat[g_.nodes[a.node].tree][y.node]) return;
    if (c_.mode == Mode::standard) {
      add({Kind::top, y.node, 0, a.i, a.j, y.p, y.q, false}, {Rule::top_std_adjoin, aux_id, lower_id});
    } else if (tree.cls == AuxClass::modifier) {
      add({Kind::mod, y.node, 0, a.i, a.j, y.p, y.q, true}, {Rule::mod_adjoin, aux_id, lower_id});
    } else {
      add({Kind::top, y.node, 0, a.i, a.j, y.p, y.q, false}, {Rule::top_pred, aux_id, lower_id});
    }
  }

  void process(int id) {
    const Item it = c_.items[id];
    const auto& info = g_.nodes[it.node];
    switch (it.kind) {
      case Kind::top: {
        if (info.parent < 0) {
          const auto& tree = g_.grammar.trees()[info.tree];
          if (tree.is_auxiliary()) {
            if (has_gap(it)) {
              for (int y : lowers(it.p, it.q)) combine_adjoin(id, y);
              auxes(it.p, it.q).push_back(id);
            }
          } else {
            for (int sid : g_.subst[info.tree])
              add({Kind::top, sid, 0, it.i, it.j, kNoGap, kNoGap, false}, {Rule::top_subst, id});
          }
        } else if (info.position == 1) {
          add({Kind::dot, info.parent, 1, it.i, it.j, it.p, it.q, false}, {Rule::dot_first, id});
        } else {
          for (int d : dots(info.parent, info.position - 1, it.i)) combine_dot(d, id);
        }
        tops(it.node, it.i).push_back(id);
        break;
      }
      case Kind::dot: {
        if (it.k == info.children.size()) {
          add({Kind::bot, it.node, 0, it.i, it.j, it.p, it.q, false}, {Rule::bot_from_dot, id});
        } else {
          int next = info.children[it.k];
          for (int t : tops(next, it.j)) combine_dot(id, t);
        }
        dots(it.node, it.k, it.j).push_back(id);
        break;
      }
      case Kind::bot: {
        if (!info.adjoinable || c_.mode == Mode::standard) {
          if (!obligatory(it.node))
            add({Kind::top, it.node, 0, it.i, it.j, it.p, it.q, false}, {Rule::top_from_bot, id});
          if (info.adjoinable) enter_lower(id);
        } else {
          add({Kind::mod, it.node, 0, it.i, it.j, it.p, it.q, false}, {Rule::mod_empty, id});
        }
        break;
      }
      case Kind::mod: {
        if (it.flag || !obligatory(it.node))
          add({Kind::top, it.node, 0, it.i, it.j, it.p, it.q, false}, {Rule::top_from_mod, id});
        enter_lower(id);
        break;
      }
    }
  }

  void enter_lower(int id) {
    const Item it = c_.items[id];
    for (int a : auxes(it.i, it.j)) combine_adjoin(a, id);
    lowers(it.i, it.j).push_back(id);
  }

  Chart& c_;
  const GrammarIndex& g_;
  std::span<const std::string> w_;
  std::size_t n1_;
  std::unordered_map<std::uint64_t, int> ids_;
  std::vector<int> agenda_;
  std::vector<std::vector<int>> top_by_start_;
  std::vector<std::vector<int>> dot_by_end_;
  std::vector<std::vector<int>> lower_;
  std::vector<std::vector<int>> aux_by_gap_;
};

// ---------------------------------------------------------------------------
// Forest traversal

struct Partial {
  std::vector<DerivationArc> arcs;
  std::vector<DerivationNode> stack;  // innermost first
  std::size_t size = 0;
};

class Extractor {
 public:
  explicit Extractor(const Chart& c) : c_(c) {}

  const std::vector<Partial>& values(int item, std::size_t budget) {
    auto key = std::make_pair(item, budget);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Partial> out;
    c_.for_edges(item, [&](const Edge& e) { expand(item, e, budget, out); });
    return memo_[key] = std::move(out);
  }

  std::vector<DerivationNode> goal_values(int goal, std::size_t max_nodes) {
    std::vector<DerivationNode> out;
    if (max_nodes == 0) return out;
    for (const auto& v : values(goal, max_nodes - 1)) out.push_back(as_node(goal, v));
    return out;
  }

 private:
  DerivationNode as_node(int root_item, const Partial& v) const {
    const auto& info = c_.index->nodes[c_.items[root_item].node];
    return DerivationNode{c_.index->grammar.trees()[info.tree].name, v.arcs};
  }

  const Address& addr_of(int item) const { return c_.index->nodes[c_.items[item].node].addr; }

  void expand(int item, const Edge& e, std::size_t budget, std::vector<Partial>& out) {
    switch (e.rule) {
      case Rule::terminal:
      case Rule::epsilon:
      case Rule::foot:
        out.push_back({});
        return;
      case Rule::dot_first:
      case Rule::bot_from_dot:
      case Rule::mod_empty:
      case Rule::top_from_bot:
        for (const auto& v : values(e.a, budget)) out.push_back(v);
        return;
      case Rule::dot_next:
        for (const auto& left : values(e.a, budget)) {
          for (const auto& right : values(e.b, budget - left.size)) {
            Partial p = left;
            p.arcs.insert(p.arcs.end(), right.arcs.begin(), right.arcs.end());
            p.size += right.size;
            out.push_back(std::move(p));
          }
        }
        return;
      case Rule::top_subst:
        if (budget == 0) return;
        for (const auto& v : values(e.a, budget - 1)) {
          Partial p;
          p.arcs.push_back({addr_of(item), 0, as_node(e.a, v)});
          p.size = v.size + 1;
          out.push_back(std::move(p));
        }
        return;
      case Rule::mod_adjoin:
      case Rule::top_pred:
      case Rule::top_std_adjoin:
        if (budget == 0) return;
        for (const auto& a : values(e.a, budget - 1)) {
          DerivationNode aux = as_node(e.a, a);
          for (const auto& y : values(e.b, budget - 1 - a.size)) {
            Partial p;
            p.size = y.size + a.size + 1;
            p.arcs = y.arcs;
            if (e.rule == Rule::mod_adjoin) {
              p.stack = y.stack;
              p.stack.push_back(aux);
            } else {
              const Address& at = addr_of(item);
              p.arcs.push_back({at, 0, aux});
              auto k = static_cast<unsigned>(y.stack.size());
              for (unsigned i = 0; i < k; ++i) p.arcs.push_back({at, k - i, y.stack[i]});
            }
            out.push_back(std::move(p));
          }
        }
        return;
      case Rule::top_from_mod:
        for (const auto& v : values(e.a, budget)) {
          Partial p;
          p.arcs = v.arcs;
          p.size = v.size;
          const Address& at = addr_of(item);
          auto k = static_cast<unsigned>(v.stack.size());
          for (unsigned i = 0; i < k; ++i) p.arcs.push_back({at, k - 1 - i, v.stack[i]});
          out.push_back(std::move(p));
        }
        return;
    }
  }

  const Chart& c_;
  std::map<std::pair<int, std::size_t>, std::vector<Partial>> memo_;
};

bool adds_node(Rule r) {
  return r == Rule::top_subst || r == Rule::mod_adjoin || r == Rule::top_pred ||
         r == Rule::top_std_adjoin;
}

struct Measure {
  bool unbounded = false;
  std::uint64_t value = 0;
};

// Folds the and/or graph reachable from the goals. `combine` merges the
// antecedent measures of one edge; `choose` merges alternative edges.
template <class Combine, class Choose>
Measure fold(const Chart& c, Combine combine, Choose choose, Measure goal_extra,
             std::function<Measure(Measure, Measure)> over_goals) {
  std::vector<int> state(c.items.size(), 0);
  std::vector<Measure> memo(c.items.size());
  std::function<Measure(int)> visit = [&](int id) -> Measure {
    if (state[id] == 2) return memo[id];
    if (state[id] == 1) return {true, 0};
    state[id] = 1;
    std::optional<Measure> acc;
    c.for_edges(id, [&](const Edge& e) {
      Measure a = e.a >= 0 ? visit(e.a) : Measure{};
      Measure b = e.b >= 0 ? visit(e.b) : Measure{};
      Measure m = combine(e, a, b);
      acc = acc ? choose(*acc, m) : m;
    });
    state[id] = 2;
    return memo[id] = acc.value_or(Measure{});
  };
  Measure total{};
  bool first = true;
  for (int g : c.goals) {
    Measure m = visit(g);
    m = Measure{m.unbounded || goal_extra.unbounded, m.value + goal_extra.value};
    total = first ? m : over_goals(total, m);
    first = false;
  }
  return total;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > std::numeric_limits<std::uint64_t>::max() / b ? std::numeric_limits<std::uint64_t>::max() : a * b;
}

}  // namespace
}  // namespace detail

// ---------------------------------------------------------------------------

DerivationForest::DerivationForest() = default;
DerivationForest::DerivationForest(std::shared_ptr<const detail::Chart> chart)
    : chart_(std::move(chart)) {}

bool DerivationForest::empty() const { return !chart_ || chart_->goals.empty(); }

std::size_t DerivationForest::item_count() const { return chart_ ? chart_->items.size() : 0; }

std::optional<std::uint64_t> DerivationForest::count() const {
  using namespace detail;
  if (empty()) return 0;
  auto m = fold(
      *chart_,
      [](const Edge& e, Measure a, Measure b) {
        Measure m{a.unbounded || b.unbounded, 1};
        if (e.a >= 0) m.value = sat_mul(m.value, a.value);
        if (e.b >= 0) m.value = sat_mul(m.value, b.value);
        return m;
      },
      [](Measure x, Measure y) { return Measure{x.unbounded || y.unbounded, sat_add(x.value, y.value)}; },
      Measure{}, [](Measure x, Measure y) {
        return Measure{x.unbounded || y.unbounded, sat_add(x.value, y.value)};
      });
  if (m.unbounded) return std::nullopt;
  return m.value;
}

std::optional<std::size_t> DerivationForest::max_size() const {
  using namespace detail;
  if (empty()) return 0;
  auto m = fold(
      *chart_,
      [](const Edge& e, Measure a, Measure b) {
        std::uint64_t v = (e.a >= 0 ? a.value : 0) + (e.b >= 0 ? b.value : 0) + (adds_node(e.rule) ? 1 : 0);
        return Measure{a.unbounded || b.unbounded, v};
      },
      [](Measure x, Measure y) { return Measure{x.unbounded || y.unbounded, std::max(x.value, y.value)}; },
      Measure{false, 1}, [](Measure x, Measure y) {
        return Measure{x.unbounded || y.unbounded, std::max(x.value, y.value)};
      });
  if (m.unbounded) return std::nullopt;
  return static_cast<std::size_t>(m.value);
}

std::vector<DerivationNode> DerivationForest::enumerate(std::size_t max_nodes) const {
  if (empty()) return {};
  detail::Extractor x(*chart_);
  std::set<DerivationNode> out;
  for (int g : chart_->goals)
    for (auto& d : x.goal_values(g, max_nodes)) out.insert(canonicalize(std::move(d)));
  return {out.begin(), out.end()};
}

std::vector<DerivationNode> DerivationForest::enumerate() const {
  auto bound = max_size();
  if (!bound) throw DerivationError("forest has infinitely many derivations");
  return enumerate(*bound);
}

void DerivationForest::for_each(std::size_t max_nodes,
                                const std::function<bool(const DerivationNode&)>& visit) const {
  for (const auto& d : enumerate(max_nodes))
    if (!visit(d)) return;
}

Parser::Parser(const Grammar& g, Mode mode)
    : index_(std::make_shared<detail::GrammarIndex>(g)), mode_(mode) {}

DerivationForest Parser::parse(std::span<const std::string> tokens) const {
  if (tokens.size() >= detail::kNoGap) throw LexiconError("input too long");
  for (const auto& t : tokens)
    if (!index_->alphabet.contains(t)) throw LexiconError("unknown token '" + t + "'");
  auto chart = std::make_shared<detail::Chart>();
  chart->index = index_;
  chart->mode = mode_;
  detail::Builder(*chart, tokens).run();
  return DerivationForest(std::move(chart));
}

DerivationForest parse(const Grammar& g, std::span<const std::string> tokens, Mode mode) {
  return Parser(g, mode).parse(tokens);
}

// ---------------------------------------------------------------------------
// Synchronous mapping

namespace {

class Mapper {
 public:
  Mapper(const SynchronousGrammar& g, Mode mode) : g_(g), mode_(mode) {}

  std::vector<SyncNode> map(const DerivationNode& left) {
    const TreePair* p = g_.find(left.tree);
    if (!p) return {};
    // Per arc: alternatives (right address, mapped child).
    std::vector<std::vector<std::pair<Address, SyncNode>>> options;
    for (const auto& arc : left.children) {
      auto children = map(arc.child);
      std::vector<std::pair<Address, SyncNode>> alts;
      for (const auto& l : p->links) {
        if (l.left != arc.addr) continue;
        for (const auto& c : children) alts.emplace_back(l.right, c);
      }
      if (alts.empty()) return {};
      std::sort(alts.begin(), alts.end());
      alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
      options.push_back(std::move(alts));
    }
    std::set<SyncNode> out;
    std::vector<std::size_t> pick(options.size(), 0);
    SyncNode node{left.tree, {}};
    product(left, options, 0, node, out);
    return {out.begin(), out.end()};
  }

 private:
  void product(const DerivationNode& left,
               const std::vector<std::vector<std::pair<Address, SyncNode>>>& options, std::size_t i,
               SyncNode& node, std::set<SyncNode>& out) {
    if (i == options.size()) {
      order_right(node, out);
      return;
    }
    for (const auto& [addr, child] : options[i]) {
      const auto& arc = left.children[i];
      node.children.push_back({arc.addr, addr, arc.order, 0, child});
      product(left, options, i + 1, node, out);
      node.children.pop_back();
    }
  }

  void order_right(SyncNode node, std::set<SyncNode>& out) {
    std::map<Address, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < node.children.size(); ++i) groups[node.children[i].right_addr].push_back(i);
    std::vector<std::vector<std::size_t>> gv;
    for (auto& [a, idx] : groups) gv.push_back(std::move(idx));
    permute(node, gv, 0, out);
  }

  void permute(SyncNode& node, const std::vector<std::vector<std::size_t>>& groups, std::size_t gi,
               std::set<SyncNode>& out) {
    if (gi == groups.size()) {
      DerivationNode r{node.pair, {}};
      for (const auto& a : node.children) r.children.push_back({a.right_addr, a.right_order, {a.child.pair, {}}});
      if (!diagnose_local(r, g_.right(), mode_)) out.insert(canonicalize(node));
      return;
    }
    const auto& group = groups[gi];
    std::vector<std::size_t> perm(group.size());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    std::set<std::vector<SyncArc>> seen;
    do {
      for (std::size_t pos = 0; pos < perm.size(); ++pos)
        node.children[group[perm[pos]]].right_order = static_cast<unsigned>(pos);
      permute(node, groups, gi + 1, out);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  const SynchronousGrammar& g_;
  Mode mode_;
};

}  // namespace

std::vector<SyncNode> map_synchronous(const DerivationNode& left, const SynchronousGrammar& g, Mode mode) {
  std::vector<SyncNode> out;
  for (auto& s : Mapper(g, mode).map(canonicalize(left)))
    if (check_sync_derivation(s, g, mode)) out.push_back(std::move(s));
  return out;
}

std::vector<DerivationNode> map_derivation(const DerivationNode& left, const SynchronousGrammar& g,
                                           Mode mode) {
  std::set<DerivationNode> out;
  for (const auto& s : map_synchronous(left, g, mode)) out.insert(canonicalize(right_derivation(s)));
  return {out.begin(), out.end()};
}

Transducer::Transducer(const SynchronousGrammar& g, const TransduceOptions& options)
    : grammar_(g), options_(options), parser_(project_left(g), options.mode) {}

std::vector<std::string> Transducer::run(std::span<const std::string> tokens) const {
  DerivationForest forest;
  try {
    forest = parser_.parse(tokens);
  } catch (const LexiconError&) {
    return {};
  }
  auto bound = forest.max_size();
  auto lefts = forest.enumerate(bound ? *bound : options_.infinite_forest_cap);
  std::set<std::string> out;
  for (const auto& dl : lefts) {
    for (const auto& s : map_synchronous(dl, grammar_, options_.mode)) {
      Tree right = interpret(right_derivation(s), grammar_.right(), options_.mode);
      out.insert(join_yield(right.yield(), grammar_.options().right_separator));
    }
  }
  return {out.begin(), out.end()};
}

std::vector<std::string> transduce(const SynchronousGrammar& g, std::span<const std::string> tokens,
                                   const TransduceOptions& options) {
  return Transducer(g, options).run(tokens);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace stag
