#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "wturan/errors.hpp"

namespace wturan {

// line-based reader that keeps track of positions for error messages
struct LineReader {
  std::istream& in;
  int lineno = 0;
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++lineno;
      size_t pos = line.find_first_not_of(" \t\r");
      if (pos != std::string::npos && line[pos] != '#') return true;  // skip blanks and comments
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error("line " + std::to_string(lineno) + ": " + msg);
  }
};

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

inline long to_long(const std::string& s, LineReader& rd) {
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    rd.fail("bad integer '" + s + "'");
  }
  if (pos != s.size()) rd.fail("bad integer '" + s + "'");
  return v;
}

}  // namespace wturan
