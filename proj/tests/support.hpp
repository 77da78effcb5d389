#pragma once

#include <string>
#include <vector>

#include "stag/grammar_io.hpp"
#include "stag/parser.hpp"

namespace support {

inline std::string fixture_path(const std::string& name) {
  return std::string(STAG_FIXTURE_DIR) + "/" + name;
}

inline stag::SynchronousGrammar fixture(const std::string& name) {
  return stag::load_grammar(stag::read_file(fixture_path(name)));
}

inline std::vector<std::string> words(const std::string& s) { return stag::tokenize(s); }

}  // namespace support
