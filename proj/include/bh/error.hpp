#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bh {

enum class Errc {
  NotPrime,
  ReducibleModulus,
  NotASubfieldOrder,
  ArityMismatch,
  ZeroDenominator,
  FieldTooSmall,
  SearchFieldTooSmall,
  SingularInput,
  ExhaustionBoundExceeded,
  NotADivisor,
  NotRationalOverFq2,
  WitnessUnavailable,
  IdenticalCurves,
  NotMinusPPower,
  Parse,
  InvalidArgument,
};

constexpr std::string_view to_string(Errc c) noexcept {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::NotASubfieldOrder: return "NotASubfieldOrder";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::FieldTooSmall: return "FieldTooSmall";
    case Errc::SearchFieldTooSmall: return "SearchFieldTooSmall";
    case Errc::SingularInput: return "SingularInput";
    case Errc::ExhaustionBoundExceeded: return "ExhaustionBoundExceeded";
    case Errc::NotADivisor: return "NotADivisor";
    case Errc::NotRationalOverFq2: return "NotRationalOverFq2";
    case Errc::WitnessUnavailable: return "WitnessUnavailable";
    case Errc::IdenticalCurves: return "IdenticalCurves";
    case Errc::NotMinusPPower: return "NotMinusPPower";
    case Errc::Parse: return "Parse";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bh
