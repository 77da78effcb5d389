#pragma once

#include <set>
#include <string>
#include <vector>

#include "stag/synchronous.hpp"

namespace stag {

/// The current derived tree pair of the flat rewriting process, with the
/// link relation over derived-tree addresses.
struct DerivedPairState {
  Tree left;
  Tree right;
  std::vector<Link> links;  // kept sorted

  /// Canonical text encoding; equal states have equal keys.
  std::string key() const;

  bool operator==(const DerivedPairState&) const = default;
};

struct RewriteStep {
  Link link;
  std::string pair;
};

struct RewriteTrace {
  std::string initial_pair;
  std::vector<RewriteStep> steps;
  DerivedPairState final_state;
};

/// Throws StateError for auxiliary pairs.
DerivedPairState init_state(const TreePair& p);

/// Operates with both halves of `p` at the two ends of `link`, which is
/// consumed. Surviving links and the links of `p` are re-addressed. Throws
/// LinkError when the link is absent, and the tree operation errors when a
/// half cannot operate at its end.
DerivedPairState rewrite_step(const DerivedPairState& s, const Link& link, const TreePair& p);

/// True iff no OA node lacks an adjunction and no substitution leaf is open.
bool is_complete(const DerivedPairState& s);

/// Replays a trace from its initial pair.
DerivedPairState replay(const RewriteTrace& trace, const SynchronousGrammar& g);

/// One shortest trace per distinct complete state reachable within
/// `max_steps` steps, in canonical order.
std::vector<RewriteTrace> rewrite_search(const SynchronousGrammar& g, std::size_t max_steps);

std::set<StringPair> enumerate_rewriting(const SynchronousGrammar& g, std::size_t max_steps);

}  // namespace stag
