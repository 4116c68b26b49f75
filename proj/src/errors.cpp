#include "gspline/errors.hpp"

namespace gspline {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Format: return "FormatError";
    case ErrorKind::Topology: return "TopologyError";
    case ErrorKind::Empty: return "EmptyError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::DegenerateBasis: return "DegenerateBasisError";
    case ErrorKind::InfeasibleConstraint: return "InfeasibleConstraintError";
    case ErrorKind::SingularParameterization: return "SingularParameterizationError";
    case ErrorKind::Resource: return "ResourceError";
    case ErrorKind::Lumping: return "LumpingError";
    case ErrorKind::Eigensolver: return "EigensolverError";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Format:
    case ErrorKind::Empty:
      return 2;
    case ErrorKind::Topology:
      return 3;
    case ErrorKind::InfeasibleConstraint:
      return 4;
    default:
      return 5;
  }
}

}  // namespace gspline
