#include "fuzzalg/error.hpp"

namespace fuzzalg {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotPartialOrder: return "NotPartialOrder";
    case ErrorKind::NoMeetOrJoin: return "NoMeetOrJoin";
    case ErrorKind::NotDistributive: return "NotDistributive";
    case ErrorKind::FrameMismatch: return "FrameMismatch";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NameClash: return "NameClash";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::OpNotCompatible: return "OpNotCompatible";
    case ErrorKind::MissingConstInterpretation: return "MissingConstInterpretation";
    case ErrorKind::EmptyCarrierWithConstants: return "EmptyCarrierWithConstants";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::NotAFuzzyMap: return "NotAFuzzyMap";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::FrameOrSignatureMismatch: return "FrameOrSignatureMismatch";
    case ErrorKind::InvalidCongruence: return "InvalidCongruence";
    case ErrorKind::NotEpi: return "NotEpi";
    case ErrorKind::NotGenerated: return "NotGenerated";
    case ErrorKind::SupportNotEmpty: return "SupportNotEmpty";
    case ErrorKind::ContainsSub: return "ContainsSub";
    case ErrorKind::SizeBoundExceeded: return "SizeBoundExceeded";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::BadSideData: return "BadSideData";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Error";
}

}  // namespace fuzzalg
