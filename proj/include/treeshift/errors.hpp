#pragma once

#include <stdexcept>
#include <string>

namespace treeshift {

/// Base class for every error raised by the library. `kind()` is a stable
/// machine-readable tag used in CLI error documents.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// A level or vertex lies outside the materialized region.
class DepthError : public Error {
 public:
  explicit DepthError(const std::string& what) : Error("out_of_depth", what) {}
};

/// Materialization would exceed the configured storage cap.
class ResourceLimitError : public Error {
 public:
  explicit ResourceLimitError(const std::string& what)
      : Error("resource_limit", what) {}
};

/// A declared property (e.g. a leafless claim) is contradicted by the data.
class ContradictionError : public Error {
 public:
  explicit ContradictionError(const std::string& what)
      : Error("contradiction", what) {}
};

/// Caller supplied a value outside an operation's domain.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error("invalid_argument", what) {}
};

}  // namespace treeshift
