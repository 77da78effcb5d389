#pragma once

#include <string_view>

#include "stag/address.hpp"
#include "stag/tree.hpp"

namespace stag {

/// Image of host address `u` after adjoining, at `site`, a tree whose foot is
/// at `foot`. Addresses outside the site's subtree are unchanged, addresses
/// strictly below it are pushed under the foot, and the site itself goes to
/// the adjoined root (top) or to the foot image (bottom).
Address map_address(const Address& site, const Address& foot, const Address& u,
                    Side side = Side::top);

/// As above, but first checks that `u` resolves in `host` (AddressError).
Address map_address(const Tree& host, const Address& site, const Address& foot,
                    const Address& u, Side side = Side::top);

/// host[aux/site]. Throws AddressError, SiteError, AdjunctionError or
/// ConstraintError when the preconditions fail.
Tree adjoin(const Tree& host, const ElementaryTree& aux, const Address& site);
Tree adjoin(const Tree& host, const Tree& aux, std::string_view aux_name,
            const Address& site);

/// Replaces the substitution leaf at `site` by `init`. Throws AddressError,
/// SiteError or ConstraintError.
Tree substitute(const Tree& host, const ElementaryTree& init, const Address& site);
Tree substitute(const Tree& host, const Tree& init, std::string_view init_name,
                const Address& site);

/// True iff adjoin (auxiliary) or substitute (initial) would succeed.
bool check_site(const Tree& host, const ElementaryTree& op, const Address& site);
bool check_site(const Tree& host, const Tree& op, TreeKind kind,
                std::string_view op_name, const Address& site);

namespace detail {

// Structural splices with no label or constraint checks.
Tree splice_adjoin(const Tree& host, const Tree& aux, const Address& site);
Tree splice_substitute(const Tree& host, const Tree& init, const Address& site);

}  // namespace detail
}  // namespace stag
