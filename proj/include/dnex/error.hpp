#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dnex {

enum class ErrorCode {
  // core_model
  UnknownSubfield,
  UnknownCountry,
  CitationTooLow,
  UnknownField,
  UnknownRegion,
  // name_match
  EmptyName,
  InvalidThreshold,
  // dne
  MissingCount,
  ZeroDenominator,
  UnknownSeed,
  // llm_probe
  InvalidSpec,
  NoNamesFound,
  TransportError,
  // harvest
  NoProfileFound,
  AmbiguousProfile,
  RateLimited,
  Unresolvable,
  // stats_report
  InsufficientSample,
  // cli_pipeline
  StaleInput,
  MissingUpstream,
  BadConfig,
  BadInput,
  IoError,
};

constexpr std::string_view to_string(ErrorCode c) noexcept {
  switch (c) {
    case ErrorCode::UnknownSubfield: return "UnknownSubfield";
    case ErrorCode::UnknownCountry: return "UnknownCountry";
    case ErrorCode::CitationTooLow: return "CitationTooLow";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::UnknownRegion: return "UnknownRegion";
    case ErrorCode::EmptyName: return "EmptyName";
    case ErrorCode::InvalidThreshold: return "InvalidThreshold";
    case ErrorCode::MissingCount: return "MissingCount";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::UnknownSeed: return "UnknownSeed";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NoNamesFound: return "NoNamesFound";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::NoProfileFound: return "NoProfileFound";
    case ErrorCode::AmbiguousProfile: return "AmbiguousProfile";
    case ErrorCode::RateLimited: return "RateLimited";
    case ErrorCode::Unresolvable: return "Unresolvable";
    case ErrorCode::InsufficientSample: return "InsufficientSample";
    case ErrorCode::StaleInput: return "StaleInput";
    case ErrorCode::MissingUpstream: return "MissingUpstream";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dnex
