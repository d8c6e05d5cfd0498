#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcplan {

enum class ErrorKind {
  InvalidNode,
  DuplicateEdge,
  InvalidAction,
  RewardRange,
  UndefinedValue,
  Leaf,
  NoParent,
  InvalidPlan,
  DegeneratePlan,
  EmptyTree,
  TreeTooLarge,
  InvalidGeometry,
  DomainFault,
  Config,
  Io,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` identifies the failure.
class PlanningError : public std::runtime_error {
 public:
  PlanningError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mcplan
