#include "foliq/error.hpp"

namespace foliq {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TableNotSymmetric: return "TableNotSymmetric";
    case ErrorKind::UnitRowMissing: return "UnitRowMissing";
    case ErrorKind::EnclosureInconsistent: return "EnclosureInconsistent";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::Undecidable: return "Undecidable";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnsupportedType: return "UnsupportedType";
    case ErrorKind::InvalidLabel: return "InvalidLabel";
    case ErrorKind::NotWeylSymmetric: return "NotWeylSymmetric";
    case ErrorKind::ReconstructionMismatch: return "ReconstructionMismatch";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::PiNotSurjective: return "PiNotSurjective";
    case ErrorKind::OutsidePolytope: return "OutsidePolytope";
    case ErrorKind::EmptySlice: return "EmptySlice";
    case ErrorKind::NotTransverse: return "NotTransverse";
    case ErrorKind::NotDelzant: return "NotDelzant";
    case ErrorKind::NonIntegralVertex: return "NonIntegralVertex";
    case ErrorKind::IrrationalInput: return "IrrationalInput";
    case ErrorKind::NonGenericBeta: return "NonGenericBeta";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace foliq
