#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mubforge {

// A named verification failure.  `check` is a short stable identifier
// (e.g. "gram", "orthogonality") that the CLI reports verbatim.
class IntegrityError : public std::runtime_error {
public:
  IntegrityError(std::string check, const std::string& message)
      : std::runtime_error(check + ": " + message), check_(std::move(check)) {}

  const std::string& check() const { return check_; }

private:
  std::string check_;
};

// Malformed input file (bad JSON, bad text layout, wrong value types).
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& message) : std::runtime_error(message) {}
};

// Filesystem failure (unreadable input, unwritable output).
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // expected/actual summary, empty when uninteresting
};

using Report = std::vector<CheckResult>;

inline bool all_passed(const Report& report) {
  for (const auto& row : report)
    if (!row.passed) return false;
  return true;
}

}  // namespace mubforge
