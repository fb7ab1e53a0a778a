#pragma once

#include <stdexcept>
#include <string>

namespace wth {

/// Invalid configuration or parameter values (CLI exit code 2).
class config_error : public std::invalid_argument {
 public:
  explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A precondition or enumeration cap was violated (CLI exit code 3).
class precondition_error : public std::runtime_error {
 public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wth
