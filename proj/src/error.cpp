#include "mcplan/error.hpp"

namespace mcplan {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidNode: return "invalid-node";
    case ErrorKind::DuplicateEdge: return "duplicate-edge";
    case ErrorKind::InvalidAction: return "invalid-action";
    case ErrorKind::RewardRange: return "reward-range";
    case ErrorKind::UndefinedValue: return "undefined-value";
    case ErrorKind::Leaf: return "leaf";
    case ErrorKind::NoParent: return "no-parent";
    case ErrorKind::InvalidPlan: return "invalid-plan";
    case ErrorKind::DegeneratePlan: return "degenerate-plan";
    case ErrorKind::EmptyTree: return "empty-tree";
    case ErrorKind::TreeTooLarge: return "tree-too-large";
    case ErrorKind::InvalidGeometry: return "invalid-geometry";
    case ErrorKind::DomainFault: return "domain-fault";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace mcplan
