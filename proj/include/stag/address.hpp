#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stag {

/// Gorn address of a tree node. Child indices are 1-based; the empty path is
/// the root. Ordering is lexicographic, so a prefix sorts before its
/// extensions.
class Address {
 public:
  Address() = default;
  Address(std::initializer_list<std::uint32_t> path) : path_(path) {}
  explicit Address(std::vector<std::uint32_t> path) : path_(std::move(path)) {}

  std::span<const std::uint32_t> path() const { return path_; }
  std::size_t depth() const { return path_.size(); }
  bool is_root() const { return path_.empty(); }

  bool is_prefix_of(const Address& other) const;

  /// Suffix v such that other == *this . v, if *this is a prefix of other.
  std::optional<Address> suffix_of(const Address& other) const;

  Address child(std::uint32_t index) const;
  Address parent() const;
  Address operator+(const Address& tail) const;

  std::string str() const;

  /// Accepts "ε", "e", "" or a dotted path such as "2.1".
  static std::optional<Address> parse(std::string_view text);

  auto operator<=>(const Address&) const = default;
  bool operator==(const Address&) const = default;

 private:
  std::vector<std::uint32_t> path_;
};

/// Which half of a node a link impinges on.
enum class Side { top, bottom };

inline char side_char(Side s) { return s == Side::top ? '^' : 'v'; }

}  // namespace stag
