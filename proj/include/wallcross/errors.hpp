#pragma once

#include <stdexcept>
#include <string>

namespace wallcross {

/// Caller passed arguments outside an operation's contract
/// (mismatched groups, mixed bases, malformed words, ...).
struct UsageError : std::invalid_argument {
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested configuration is not supported (unknown series letter,
/// rank out of range, ...).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant failed.  Signals a bug or a tampered build,
/// never bad user input.
struct ConsistencyError : std::logic_error {
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

inline void check_usage(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

inline void check_consistent(bool ok, const std::string& what) {
  if (!ok) throw ConsistencyError(what);
}

}  // namespace wallcross
