#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace foliq {

enum class ErrorKind {
  TableNotSymmetric,
  UnitRowMissing,
  EnclosureInconsistent,
  ContextMismatch,
  NotInvertible,
  Undecidable,
  DomainMismatch,
  ShapeMismatch,
  UnsupportedType,
  InvalidLabel,
  NotWeylSymmetric,
  ReconstructionMismatch,
  Unbounded,
  NotSimple,
  Empty,
  PiNotSurjective,
  OutsidePolytope,
  EmptySlice,
  NotTransverse,
  NotDelzant,
  NonIntegralVertex,
  IrrationalInput,
  NonGenericBeta,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the named kinds above;
/// the CLI reports the name verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace foliq
