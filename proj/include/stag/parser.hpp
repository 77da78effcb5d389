#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stag/derivation.hpp"
#include "stag/synchronous.hpp"

namespace stag {

namespace detail {
struct Chart;
struct GrammarIndex;
}

/// Packed and/or graph of the derivations of one string. Items are shared
/// by (tree node, span, foot gap); cycles are possible when auxiliary trees
/// have empty yields.
class DerivationForest {
 public:
  DerivationForest();
  explicit DerivationForest(std::shared_ptr<const detail::Chart> chart);

  bool empty() const;

  /// Number of derivations, or nullopt when infinite. Saturates at
  /// UINT64_MAX.
  std::optional<std::uint64_t> count() const;

  /// Largest derivation size in nodes, or nullopt when unbounded.
  std::optional<std::size_t> max_size() const;

  /// Canonical derivations with at most `max_nodes` nodes, sorted.
  std::vector<DerivationNode> enumerate(std::size_t max_nodes) const;

  /// All derivations; requires a finite forest (throws DerivationError).
  std::vector<DerivationNode> enumerate() const;

  /// Visits derivations in canonical order until `visit` returns false.
  void for_each(std::size_t max_nodes,
                const std::function<bool(const DerivationNode&)>& visit) const;

  /// Chart statistics.
  std::size_t item_count() const;

 private:
  std::shared_ptr<const detail::Chart> chart_;
};

/// Bottom-up chart recognition over elementary tree nodes. Throws
/// LexiconError for tokens that no tree contains.
class Parser {
 public:
  explicit Parser(const Grammar& g, Mode mode = Mode::multi);
  DerivationForest parse(std::span<const std::string> tokens) const;

 private:
  std::shared_ptr<const detail::GrammarIndex> index_;
  Mode mode_;
};

/// One-shot form of Parser::parse.
DerivationForest parse(const Grammar& g, std::span<const std::string> tokens,
                       Mode mode = Mode::multi);

/// Right derivations isomorphic to `left` under the grammar's links,
/// including every ordering of same-address right stacks.
std::vector<SyncNode> map_synchronous(const DerivationNode& left, const SynchronousGrammar& g,
                                      Mode mode = Mode::multi);
std::vector<DerivationNode> map_derivation(const DerivationNode& left,
                                           const SynchronousGrammar& g,
                                           Mode mode = Mode::multi);

struct TransduceOptions {
  Mode mode = Mode::multi;
  // Derivation size cap used only when the left forest is infinite.
  std::size_t infinite_forest_cap = 16;
};

/// Parses with the constraint-mapped left projection, maps each derivation to
/// the right and reads off the right yields. Sorted, deduplicated.
class Transducer {
 public:
  explicit Transducer(const SynchronousGrammar& g, const TransduceOptions& options = {});
  std::vector<std::string> run(std::span<const std::string> tokens) const;

 private:
  SynchronousGrammar grammar_;
  TransduceOptions options_;
  Parser parser_;
};

/// One-shot form of Transducer::run.
std::vector<std::string> transduce(const SynchronousGrammar& g,
                                   std::span<const std::string> tokens,
                                   const TransduceOptions& options = {});

std::vector<std::string> tokenize(std::string_view text);

}  // namespace stag
