#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regret_route {

enum class ErrorKind {
  kInvalidInstance,
  kMalformedPath,
  kInvalidArgument,
  kOracleUnavailable,
  kInfeasible,
  kNumerical,
  kInternal,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInstance: return "invalid_instance";
    case ErrorKind::kMalformedPath: return "malformed_path";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kOracleUnavailable: return "oracle_unavailable";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kNumerical: return "numerical";
    case ErrorKind::kInternal: return "internal";
  }
  return "unknown";
}

// Every failure raised by the library carries a kind so callers (and the CLI)
// can react without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a node cannot be served at all (e.g. D_v > D in DVRP).
class InfeasibleError : public Error {
 public:
  InfeasibleError(int node, const std::string& what)
      : Error(ErrorKind::kInfeasible, what), node_(node) {}

  int node() const noexcept { return node_; }

 private:
  int node_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void check(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace detail
}  // namespace regret_route
