#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ttideal {

enum class ErrorKind {
  Parse,
  NotPrime,
  ZeroElement,
  UnsupportedRing,
  InfiniteSpectrum,
  NotMaximal,
  RingMismatch,
  InvalidComplex,
  SizeBudgetExceeded,
  NotArtinian,
  UnknownIdentity,
  NotCompactDescriptor,
  UnsupportedCombination,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
  case ErrorKind::Parse: return "ParseError";
  case ErrorKind::NotPrime: return "NotPrime";
  case ErrorKind::ZeroElement: return "ZeroElement";
  case ErrorKind::UnsupportedRing: return "UnsupportedRing";
  case ErrorKind::InfiniteSpectrum: return "InfiniteSpectrum";
  case ErrorKind::NotMaximal: return "NotMaximal";
  case ErrorKind::RingMismatch: return "RingMismatch";
  case ErrorKind::InvalidComplex: return "InvalidComplex";
  case ErrorKind::SizeBudgetExceeded: return "SizeBudgetExceeded";
  case ErrorKind::NotArtinian: return "NotArtinian";
  case ErrorKind::UnknownIdentity: return "UnknownIdentity";
  case ErrorKind::NotCompactDescriptor: return "NotCompactDescriptor";
  case ErrorKind::UnsupportedCombination: return "UnsupportedCombination";
  }
  return "Error";
}

/// Every failure raised by the library. `kind()` is the stable category;
/// `what()` carries a human readable detail prefixed with the category name.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &detail) {
  throw Error(kind, detail);
}

} // namespace ttideal
