#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

namespace exaut {

using json = nlohmann::json;

/// exact-* statements must hold on every finite instance; empirical-*
/// statements are only expected to hold in the limit and are reported.
enum class Status { ExactPass, ExactFail, EmpiricalPass, EmpiricalFail, Error };

constexpr std::string_view to_string(Status s)
{
  switch (s) {
    case Status::ExactPass: return "exact-pass";
    case Status::ExactFail: return "exact-fail";
    case Status::EmpiricalPass: return "empirical-pass";
    case Status::EmpiricalFail: return "empirical-fail";
    case Status::Error: return "error";
  }
  return "error";
}

inline Status exact(bool ok) { return ok ? Status::ExactPass : Status::ExactFail; }
inline Status empirical(bool ok) { return ok ? Status::EmpiricalPass : Status::EmpiricalFail; }

struct CheckReport {
  std::string check;
  std::string playground;
  json parameters = json::object();
  Status status = Status::ExactPass;
  json witnesses = json::array();
  /// Counts and other check-specific numbers.
  json summary = json::object();

  bool passed() const { return status == Status::ExactPass || status == Status::EmpiricalPass; }
  bool exact_failure() const { return status == Status::ExactFail || status == Status::Error; }

  json to_json() const
  {
    return {{"check", check},         {"playground", playground},
            {"parameters", parameters}, {"status", std::string(to_string(status))},
            {"summary", summary},     {"witnesses", witnesses}};
  }
};

} // namespace exaut
