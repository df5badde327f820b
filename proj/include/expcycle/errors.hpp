#pragma once

#include <stdexcept>
#include <string>

namespace expcycle {

/// Thrown when an operation would exceed a configured memory or step
/// budget. Distinct from std::invalid_argument so callers (notably the
/// CLI) can map budget refusals to their own exit code.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace expcycle
