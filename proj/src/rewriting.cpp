#include "stag/rewriting.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "stag/errors.hpp"
#include "stag/operations.hpp"

namespace stag {

namespace {

void encode(const Node& n, std::string& out) {
  out += '(';
  out += n.label.kind == LabelKind::terminal ? 't' : n.label.kind == LabelKind::epsilon ? 'e' : 'n';
  out += n.label.symbol;
  out += '|';
  out += n.constraint.allowed == Constraint::Allowed::any    ? 'A'
         : n.constraint.allowed == Constraint::Allowed::none ? 'N'
                                                             : 'S';
  for (const auto& name : n.constraint.names) out += name + ",";
  if (n.constraint.obligatory) out += 'O';
  if (n.substitution) out += '!';
  if (n.foot) out += '*';
  if (n.adjoined) out += '+';
  for (const auto& c : n.children) encode(c, out);
  out += ')';
}

bool has_open_obligation(const Node& n) {
  if (n.substitution) return true;
  if (n.constraint.obligatory && !n.adjoined) return true;
  return std::any_of(n.children.begin(), n.children.end(), has_open_obligation);
}

}  // namespace

std::string DerivedPairState::key() const {
  std::string out;
  encode(left.root, out);
  out += "||";
  encode(right.root, out);
  for (const auto& l : links)
    out += "|" + l.left.str() + side_char(l.left_side) + l.right.str() + side_char(l.right_side);
  return out;
}

DerivedPairState init_state(const TreePair& p) {
  if (p.is_auxiliary()) throw StateError("pair " + p.name + " is auxiliary");
  DerivedPairState s{p.left.tree, p.right.tree, p.links};
  std::sort(s.links.begin(), s.links.end());
  return s;
}

DerivedPairState rewrite_step(const DerivedPairState& s, const Link& link, const TreePair& p) {
  auto chosen = std::find(s.links.begin(), s.links.end(), link);
  if (chosen == s.links.end())
    throw LinkError("link " + link.left.str() + "~" + link.right.str() + " is not in the state");

  DerivedPairState next;
  const bool aux = p.is_auxiliary();
  if (aux) {
    next.left = adjoin(s.left, p.left, link.left);
    next.right = adjoin(s.right, p.right, link.right);
  } else {
    next.left = substitute(s.left, p.left, link.left);
    next.right = substitute(s.right, p.right, link.right);
  }

  for (auto it = s.links.begin(); it != s.links.end(); ++it) {
    if (it == chosen) continue;
    Link moved = *it;
    if (aux) {
      moved.left = map_address(link.left, p.left.foot, it->left, it->left_side);
      moved.right = map_address(link.right, p.right.foot, it->right, it->right_side);
    }
    next.links.push_back(moved);
  }
  for (const auto& l : p.links)
    next.links.push_back({link.left + l.left, l.left_side, link.right + l.right, l.right_side});
  std::sort(next.links.begin(), next.links.end());
  return next;
}

bool is_complete(const DerivedPairState& s) {
  return !has_open_obligation(s.left.root) && !has_open_obligation(s.right.root);
}

DerivedPairState replay(const RewriteTrace& trace, const SynchronousGrammar& g) {
  DerivedPairState s = init_state(g.at(trace.initial_pair));
  for (const auto& step : trace.steps) s = rewrite_step(s, step.link, g.at(step.pair));
  return s;
}

std::vector<RewriteTrace> rewrite_search(const SynchronousGrammar& g, std::size_t max_steps) {
  struct Entry {
    DerivedPairState state;
    std::shared_ptr<const RewriteTrace> trace;
  };
  std::map<std::string, std::size_t> seen;  // key -> depth first reached
  std::map<std::string, RewriteTrace> complete;
  std::vector<Entry> frontier;

  for (const auto& p : g.pairs()) {
    if (p.is_auxiliary() || !g.can_root(p)) continue;
    Entry e{init_state(p), std::make_shared<RewriteTrace>(RewriteTrace{p.name, {}, {}})};
    if (seen.emplace(e.state.key(), 0).second) frontier.push_back(std::move(e));
  }

  for (std::size_t depth = 0;; ++depth) {
    for (const auto& e : frontier) {
      if (!is_complete(e.state)) continue;
      auto key = e.state.key();
      if (!complete.contains(key)) {
        RewriteTrace t = *e.trace;
        t.final_state = e.state;
        complete.emplace(std::move(key), std::move(t));
      }
    }
    if (depth == max_steps) break;
    std::vector<Entry> next;
    for (const auto& e : frontier) {
      for (const auto& link : e.state.links) {
        for (const auto& p : g.pairs()) {
          if (!check_site(e.state.left, p.left, link.left) ||
              !check_site(e.state.right, p.right, link.right))
            continue;
          DerivedPairState s = rewrite_step(e.state, link, p);
          if (!seen.emplace(s.key(), depth + 1).second) continue;
          auto t = std::make_shared<RewriteTrace>(*e.trace);
          t->steps.push_back({link, p.name});
          next.push_back({std::move(s), std::move(t)});
        }
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }

  std::vector<RewriteTrace> out;
  for (auto& [key, t] : complete) out.push_back(std::move(t));
  return out;
}

std::set<StringPair> enumerate_rewriting(const SynchronousGrammar& g, std::size_t max_steps) {
  std::set<StringPair> out;
  for (const auto& t : rewrite_search(g, max_steps))
    out.emplace(join_yield(t.final_state.left.yield(), g.options().left_separator),
                join_yield(t.final_state.right.yield(), g.options().right_separator));
  return out;
}

}  // namespace stag
