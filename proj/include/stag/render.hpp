#pragma once

#include <string>

#include "stag/derivation.hpp"
#include "stag/rewriting.hpp"
#include "stag/synchronous.hpp"

namespace stag {

std::string to_text(const Tree& t);           // one-line bracketing
std::string to_indented_text(const Tree& t);  // one node per line

std::string to_dot(const Tree& t, std::string_view graph_name = "tree");
std::string to_dot(const DerivationNode& d, std::string_view graph_name = "derivation");
std::string to_dot(const SyncNode& d, std::string_view graph_name = "derivation");

/// Both trees side by side with links drawn as dashed edges.
std::string to_dot(const TreePair& p);
std::string to_dot(const DerivedPairState& s, std::string_view graph_name = "state");

}  // namespace stag
