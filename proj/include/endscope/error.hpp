#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace endscope {

enum class Errc {
  invalid_key,
  invalid_argument,
  window_mismatch,
  horizon_escape,
  radius_too_large,
  not_nested,
  unresolvable,
  not_in_algebra,
  depth_insufficient,
  not_automorphism,
  domain_mismatch,
  inconclusive,
  degree_overflow,
  budget_exceeded,
  parse_error,
  io_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_key: return "InvalidKey";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::window_mismatch: return "WindowMismatch";
    case Errc::horizon_escape: return "HorizonEscape";
    case Errc::radius_too_large: return "RadiusTooLarge";
    case Errc::not_nested: return "NotNested";
    case Errc::unresolvable: return "Unresolvable";
    case Errc::not_in_algebra: return "NotInAlgebra";
    case Errc::depth_insufficient: return "DepthInsufficient";
    case Errc::not_automorphism: return "NotAutomorphism";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::inconclusive: return "Inconclusive";
    case Errc::degree_overflow: return "DegreeOverflow";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IoError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// Resource-style failures map to CLI exit 3, everything else to exit 2.
  bool is_budget() const noexcept {
    return code_ == Errc::budget_exceeded || code_ == Errc::degree_overflow ||
           code_ == Errc::io_error;
  }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace endscope
