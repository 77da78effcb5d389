#include "stag/render.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "stag/grammar_io.hpp"

namespace stag {
namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string node_label(const Node& n) {
  switch (n.label.kind) {
    case LabelKind::epsilon: return "ε";
    case LabelKind::terminal: return n.label.symbol;
    case LabelKind::nonterminal: break;
  }
  std::string s = n.label.symbol;
  if (n.substitution) s += "↓";
  if (n.foot) s += "*";
  if (n.constraint.obligatory) s += " OA";
  if (!n.foot && n.constraint.allowed == Constraint::Allowed::none) s += " NA";
  if (n.constraint.allowed == Constraint::Allowed::set) {
    s += " SA(";
    bool first = true;
    for (const auto& name : n.constraint.names) {
      s += (first ? "" : ",") + name;
      first = false;
    }
    s += ")";
  }
  return s;
}

// Emits the nodes and edges of a tree; returns the id of each address.
std::map<Address, std::string> tree_body(std::ostream& out, const Tree& t, const std::string& prefix) {
  std::map<Address, std::string> ids;
  std::size_t counter = 0;
  std::function<void(const Node&, const Address&)> walk = [&](const Node& n, const Address& a) {
    std::string id = prefix + std::to_string(counter++);
    ids[a] = id;
    out << "  " << id << " [label=\"" << escape(node_label(n)) << "\"";
    if (!n.label.is_nonterminal()) out << ", fontname=\"Helvetica-Oblique\"";
    out << "];\n";
    for (std::uint32_t i = 0; i < n.children.size(); ++i) {
      Address c = a.child(i + 1);
      walk(n.children[i], c);
      out << "  " << id << " -> " << ids[c] << ";\n";
    }
  };
  walk(t.root, Address{});
  return ids;
}

std::string link_dot(const Tree& left, const Tree& right, const std::vector<Link>& links,
                     std::string_view name) {
  std::ostringstream out;
  out << "digraph \"" << escape(name) << "\" {\n  node [shape=plaintext];\n";
  out << "  subgraph cluster_left {\n  label=\"left\";\n";
  auto l = tree_body(out, left, "l");
  out << "  }\n  subgraph cluster_right {\n  label=\"right\";\n";
  auto r = tree_body(out, right, "r");
  out << "  }\n";
  for (const auto& k : links) {
    out << "  " << l.at(k.left) << " -> " << r.at(k.right)
        << " [style=dashed, dir=none, constraint=false, color=gray40, label=\"" << side_char(k.left_side)
        << side_char(k.right_side) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string to_text(const Tree& t) { return serialize_tree(t); }

std::string to_indented_text(const Tree& t) {
  std::ostringstream out;
  std::function<void(const Node&, std::size_t)> walk = [&](const Node& n, std::size_t depth) {
    out << std::string(2 * depth, ' ') << node_label(n) << '\n';
    for (const auto& c : n.children) walk(c, depth + 1);
  };
  walk(t.root, 0);
  return out.str();
}

std::string to_dot(const Tree& t, std::string_view graph_name) {
  std::ostringstream out;
  out << "digraph \"" << escape(graph_name) << "\" {\n  node [shape=plaintext];\n";
  tree_body(out, t, "n");
  out << "}\n";
  return out.str();
}

std::string to_dot(const DerivationNode& d, std::string_view graph_name) {
  std::ostringstream out;
  out << "digraph \"" << escape(graph_name) << "\" {\n  node [shape=box];\n";
  std::size_t counter = 0;
  std::function<std::string(const DerivationNode&)> walk = [&](const DerivationNode& n) {
    std::string id = "d" + std::to_string(counter++);
    out << "  " << id << " [label=\"" << escape(n.tree) << "\"];\n";
    for (const auto& a : n.children) {
      std::string child = walk(a.child);
      out << "  " << id << " -> " << child << " [label=\"" << escape(a.addr.str());
      if (a.order > 0) out << " #" << a.order;
      out << "\"];\n";
    }
    return id;
  };
  walk(d);
  out << "}\n";
  return out.str();
}

std::string to_dot(const SyncNode& d, std::string_view graph_name) {
  std::ostringstream out;
  out << "digraph \"" << escape(graph_name) << "\" {\n  node [shape=box];\n";
  std::size_t counter = 0;
  std::function<std::string(const SyncNode&)> walk = [&](const SyncNode& n) {
    std::string id = "d" + std::to_string(counter++);
    out << "  " << id << " [label=\"" << escape(n.pair) << "\"];\n";
    for (const auto& a : n.children) {
      std::string child = walk(a.child);
      out << "  " << id << " -> " << child << " [label=\"" << escape(a.left_addr.str()) << '/' << a.left_order
          << " | " << escape(a.right_addr.str()) << '/' << a.right_order << "\"];\n";
    }
    return id;
  };
  walk(d);
  out << "}\n";
  return out.str();
}

std::string to_dot(const TreePair& p) { return link_dot(p.left.tree, p.right.tree, p.links, p.name); }

std::string to_dot(const DerivedPairState& s, std::string_view graph_name) {
  return link_dot(s.left, s.right, s.links, graph_name);
}

}  // namespace stag
