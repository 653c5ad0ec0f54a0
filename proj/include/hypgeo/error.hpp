#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypgeo {

enum class ErrorCode {
  InvalidC,        // c is a nonpositive integer
  RadiusExceeded,  // |z| beyond the series radius cap
  NoConvergence,   // series hit max_terms
  ZeroOfF,         // F(z) vanished, z f'/f undefined
  InvalidParams,
  PrecondFailed,
  NonFinite,
  OracleInconclusive,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidC: return "InvalidC";
    case ErrorCode::RadiusExceeded: return "RadiusExceeded";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ZeroOfF: return "ZeroOfF";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::PrecondFailed: return "PrecondFailed";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::OracleInconclusive: return "OracleInconclusive";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hypgeo
