#pragma once

#include <stdexcept>
#include <string>

namespace wturan {

// Input that fails validation: malformed files, out-of-range values, bad names.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance exceeds an explicit size guard. Guards exist so worst cases are a
// visible error rather than a silent hang; callers can raise them knowingly.
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wturan
