#include "stag/operations.hpp"

#include "stag/errors.hpp"

namespace stag {

Address map_address(const Address& site, const Address& foot, const Address& u, Side side) {
  auto rest = site.suffix_of(u);
  if (!rest) return u;
  if (rest->is_root()) return side == Side::top ? site : site + foot;
  return site + foot + *rest;
}

Address map_address(const Tree& host, const Address& site, const Address& foot,
                    const Address& u, Side side) {
  if (!host.contains(u)) throw AddressError("address " + u.str() + " does not resolve");
  if (!host.contains(site)) throw AddressError("site " + site.str() + " does not resolve");
  return map_address(site, foot, u, side);
}

namespace detail {

Tree splice_adjoin(const Tree& host, const Tree& aux, const Address& site) {
  auto foot = aux.foot_address();
  if (!foot) throw AdjunctionError("adjoined tree has no foot");
  Tree out = host;
  Node* target = out.find(site);
  if (!target) throw AddressError("site " + site.str() + " does not resolve");
  Node excised = std::move(*target);
  excised.adjoined = true;
  *target = aux.root;
  Node* foot_node = target;
  for (auto idx : foot->path()) foot_node = &foot_node->children[idx - 1];
  *foot_node = std::move(excised);
  return out;
}

Tree splice_substitute(const Tree& host, const Tree& init, const Address& site) {
  Tree out = host;
  Node* target = out.find(site);
  if (!target) throw AddressError("site " + site.str() + " does not resolve");
  *target = init.root;
  return out;
}

}  // namespace detail

namespace {

void require_adjoinable(const Tree& host, const Tree& aux, std::string_view name,
                        const Address& site) {
  const Node& n = host.at(site);
  if (n.substitution) throw SiteError("cannot adjoin at substitution site " + site.str());
  if (!n.label.is_nonterminal())
    throw AdjunctionError("cannot adjoin at non-nonterminal node " + site.str());
  if (!aux.foot_address()) throw AdjunctionError(std::string(name) + " is not auxiliary");
  if (n.label != aux.root.label)
    throw AdjunctionError("label mismatch adjoining " + std::string(name) + " (" +
                          aux.root.label.symbol + ") at " + site.str() + " (" +
                          n.label.symbol + ")");
  if (!n.constraint.permits(name))
    throw ConstraintError("constraint at " + site.str() + " forbids " + std::string(name));
}

void require_substitutable(const Tree& host, const Tree& init, std::string_view name,
                           const Address& site) {
  const Node& n = host.at(site);
  if (!n.substitution) throw SiteError(site.str() + " is not a substitution site");
  if (init.foot_address()) throw SiteError(std::string(name) + " is not an initial tree");
  if (n.label != init.root.label)
    throw SiteError("label mismatch substituting " + std::string(name) + " at " + site.str());
  if (n.constraint.allowed == Constraint::Allowed::set && !n.constraint.permits(name))
    throw ConstraintError("constraint at " + site.str() + " forbids " + std::string(name));
}

}  // namespace

Tree adjoin(const Tree& host, const Tree& aux, std::string_view aux_name, const Address& site) {
  require_adjoinable(host, aux, aux_name, site);
  return detail::splice_adjoin(host, aux, site);
}

Tree adjoin(const Tree& host, const ElementaryTree& aux, const Address& site) {
  return adjoin(host, aux.tree, aux.name, site);
}

Tree substitute(const Tree& host, const Tree& init, std::string_view init_name,
                const Address& site) {
  require_substitutable(host, init, init_name, site);
  return detail::splice_substitute(host, init, site);
}

Tree substitute(const Tree& host, const ElementaryTree& init, const Address& site) {
  return substitute(host, init.tree, init.name, site);
}

bool check_site(const Tree& host, const Tree& op, TreeKind kind, std::string_view op_name,
                const Address& site) {
  const Node* n = host.find(site);
  if (!n || !n->label.is_nonterminal() || n->label != op.root.label) return false;
  if (kind == TreeKind::auxiliary)
    return !n->substitution && n->constraint.permits(op_name);
  return n->substitution &&
         (n->constraint.allowed != Constraint::Allowed::set || n->constraint.permits(op_name));
}

bool check_site(const Tree& host, const ElementaryTree& op, const Address& site) {
  return check_site(host, op.tree, op.kind, op.name, site);
}

}  // namespace stag
