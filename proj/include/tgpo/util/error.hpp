#pragma once

#include <stdexcept>
#include <string>

namespace tgpo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Textual syntax error; position is a byte offset into the input.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"), pos(position) {}
  std::size_t pos;
};

// Formula cannot be evaluated on the given trajectory (window past the horizon).
struct MonitorError : Error {
  using Error::Error;
};

// Formula outside the fragment supported by subgoal decomposition.
struct DecomposeError : Error {
  using Error::Error;
};

// Time assignment infeasible (out of domain or window past the horizon).
struct GroundError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace tgpo
