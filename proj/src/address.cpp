#include "stag/address.hpp"

#include <algorithm>
#include <charconv>

namespace stag {

bool Address::is_prefix_of(const Address& other) const {
  return path_.size() <= other.path_.size() &&
         std::equal(path_.begin(), path_.end(), other.path_.begin());
}

std::optional<Address> Address::suffix_of(const Address& other) const {
  if (!is_prefix_of(other)) return std::nullopt;
  return Address(std::vector<std::uint32_t>(other.path_.begin() + path_.size(), other.path_.end()));
}

Address Address::child(std::uint32_t index) const {
  Address a = *this;
  a.path_.push_back(index);
  return a;
}

Address Address::parent() const {
  Address a = *this;
  if (!a.path_.empty()) a.path_.pop_back();
  return a;
}

Address Address::operator+(const Address& tail) const {
  Address a = *this;
  a.path_.insert(a.path_.end(), tail.path_.begin(), tail.path_.end());
  return a;
}

std::string Address::str() const {
  if (path_.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path_[i]);
  }
  return out;
}

std::optional<Address> Address::parse(std::string_view text) {
  if (text.empty() || text == "ε" || text == "e") return Address{};
  std::vector<std::uint32_t> path;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto dot = text.find('.', pos);
    auto part = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || p != part.data() + part.size() || v == 0) return std::nullopt;
    path.push_back(v);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return Address(std::move(path));
}

}  // namespace stag
