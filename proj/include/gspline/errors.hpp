#pragma once

#include <stdexcept>
#include <string>

namespace gspline {

/// Failure categories. The CLI maps each onto a process exit code.
enum class ErrorKind {
  Format,
  Topology,
  Empty,
  Domain,
  DegenerateBasis,
  InfeasibleConstraint,
  SingularParameterization,
  Resource,
  Lumping,
  Eigensolver,
  Internal,
};

const char* to_string(ErrorKind kind);

/// Exit code used by the command line front-end for a given failure kind.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

#define GSPLINE_DEFINE_ERROR(Name, Kind)                                       \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {}   \
  };

GSPLINE_DEFINE_ERROR(FormatError, Format)
GSPLINE_DEFINE_ERROR(TopologyError, Topology)
GSPLINE_DEFINE_ERROR(EmptyError, Empty)
GSPLINE_DEFINE_ERROR(DomainError, Domain)
GSPLINE_DEFINE_ERROR(DegenerateBasisError, DegenerateBasis)
GSPLINE_DEFINE_ERROR(InfeasibleConstraintError, InfeasibleConstraint)
GSPLINE_DEFINE_ERROR(SingularParameterizationError, SingularParameterization)
GSPLINE_DEFINE_ERROR(ResourceError, Resource)
GSPLINE_DEFINE_ERROR(LumpingError, Lumping)
GSPLINE_DEFINE_ERROR(EigensolverError, Eigensolver)
GSPLINE_DEFINE_ERROR(InternalError, Internal)

#undef GSPLINE_DEFINE_ERROR

}  // namespace gspline
