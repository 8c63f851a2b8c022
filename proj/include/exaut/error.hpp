#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace exaut {

enum class ErrorKind {
  DegreeMismatch,
  PointOutOfRange,
  OrderBoundExceeded,
  NotASubgroup,
  NotNormal,
  NotSetwiseInvariant,
  InvalidTable,
  SignatureMismatch,
  NotAMember,
  SpecNotAmalgamating,
  NotASubgroupOfAutK,
  NotAnAutomorphism,
  NoMinimalStabilizerMatch,
  AmbiguousMatch,
  NotGenerating,
  IdentityGenerator,
  Parse,
  Usage,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::PointOutOfRange: return "PointOutOfRange";
    case ErrorKind::OrderBoundExceeded: return "OrderBoundExceeded";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotSetwiseInvariant: return "NotSetwiseInvariant";
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::NotAMember: return "NotAMember";
    case ErrorKind::SpecNotAmalgamating: return "SpecNotAmalgamating";
    case ErrorKind::NotASubgroupOfAutK: return "NotASubgroupOfAutK";
    case ErrorKind::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorKind::NoMinimalStabilizerMatch: return "NoMinimalStabilizerMatch";
    case ErrorKind::AmbiguousMatch: return "AmbiguousMatch";
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::IdentityGenerator: return "IdentityGenerator";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
  : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
  {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace exaut
