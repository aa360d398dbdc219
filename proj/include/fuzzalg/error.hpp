#pragma once

#include <stdexcept>
#include <string>

namespace fuzzalg {

// Failure categories surfaced by validators, parsers and constructors.
// Tests and the CLI dispatch on the kind; the message carries the witness.
enum class ErrorKind {
  ParseError,
  NotPartialOrder,
  NoMeetOrJoin,
  NotDistributive,
  FrameMismatch,
  UnknownName,
  ArityMismatch,
  NameClash,
  UnboundVariable,
  OpNotCompatible,
  MissingConstInterpretation,
  EmptyCarrierWithConstants,
  NotAHomomorphism,
  NotAFuzzyMap,
  SignatureMismatch,
  FrameOrSignatureMismatch,
  InvalidCongruence,
  NotEpi,
  NotGenerated,
  SupportNotEmpty,
  ContainsSub,
  SizeBoundExceeded,
  BudgetExhausted,
  BadSideData,
  BadInput,
};

const char* to_string(ErrorKind k);

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg)
      : std::runtime_error(std::string(to_string(k)) + ": " + msg), kind(k) {}
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

}  // namespace fuzzalg
