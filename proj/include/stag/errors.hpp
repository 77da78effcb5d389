#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stag {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define STAG_DEFINE_ERROR(Name)        \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  };

STAG_DEFINE_ERROR(AddressError)
STAG_DEFINE_ERROR(AdjunctionError)
STAG_DEFINE_ERROR(ConstraintError)
STAG_DEFINE_ERROR(SiteError)
STAG_DEFINE_ERROR(GrammarError)
STAG_DEFINE_ERROR(DerivationError)
STAG_DEFINE_ERROR(MultiAdjunctionError)
STAG_DEFINE_ERROR(StateError)
STAG_DEFINE_ERROR(LinkError)
STAG_DEFINE_ERROR(LexiconError)

#undef STAG_DEFINE_ERROR

// Grammar text that fails to load. Line and column are 1-based.
class LoadError : public Error {
 public:
  LoadError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace stag
