#pragma once

#include <stdexcept>
#include <string>

namespace palette {

// Parameters outside the range an exact procedure supports.
struct UnsupportedParameters : std::invalid_argument {
  explicit UnsupportedParameters(const std::string& what) : std::invalid_argument(what) {}
};

// A documented precondition of an operation does not hold for the given input.
struct PreconditionError : std::invalid_argument {
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace palette
