#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace idemsum {

enum class Errc {
  NotHermitian,
  NotPSD,
  NotFound,
  NotUnique,
  Pole,
  BadParameter,
  CasimirMismatch,
  NotInLambda4bd,
  Truncated,
  DimensionMismatch,
  NotIrreducible,
  NoPDSolution,
  BadLambda,
  BadSubstitution,
  KindMismatch,
  Parse,
};

inline std::string_view to_string(Errc code) noexcept;

// Every failure the library reports carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotPSD: return "NotPSD";
    case Errc::NotFound: return "NotFound";
    case Errc::NotUnique: return "NotUnique";
    case Errc::Pole: return "Pole";
    case Errc::BadParameter: return "BadParameter";
    case Errc::CasimirMismatch: return "CasimirMismatch";
    case Errc::NotInLambda4bd: return "NotInLambda4bd";
    case Errc::Truncated: return "Truncated";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NoPDSolution: return "NoPDSolution";
    case Errc::BadLambda: return "BadLambda";
    case Errc::BadSubstitution: return "BadSubstitution";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace idemsum
