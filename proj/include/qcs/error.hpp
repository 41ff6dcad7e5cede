#pragma once

#include <stdexcept>
#include <string>

namespace qcs {

// Invalid constructor or configuration argument.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Operation is not defined for the given signal model.
class UnsupportedModel : public std::logic_error {
 public:
  explicit UnsupportedModel(const std::string& what) : std::logic_error(what) {}
};

// Requested work exceeds a configured resource cap.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qcs
