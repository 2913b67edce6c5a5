#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace orthoplex {

// Domain error with a short machine-readable code ("regime", "dimension", ...)
// next to the human-readable message. The CLI maps code() into its JSON
// error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct ArgumentError : Error {
  explicit ArgumentError(const std::string& what) : Error("argument", what) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& what) : Error("dimension", what) {}
};

struct RegimeError : Error {
  explicit RegimeError(const std::string& what) : Error("regime", what) {}
};

struct NoPartitionError : Error {
  explicit NoPartitionError(const std::string& what) : Error("no_partition", what) {}
};

struct NotSphericalCodeError : Error {
  explicit NotSphericalCodeError(const std::string& what)
      : Error("not_spherical_code", what) {}
};

struct DecompositionError : Error {
  explicit DecompositionError(const std::string& what)
      : Error("decomposition_failure", what) {}
};

struct DivergenceError : Error {
  explicit DivergenceError(const std::string& what) : Error("divergence", what) {}
};

struct SearchError : Error {
  explicit SearchError(const std::string& what) : Error("search", what) {}
};

}  // namespace orthoplex
