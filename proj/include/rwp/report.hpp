#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace rwp {

struct RunReport {
  std::string suite;
  nlohmann::json params = nlohmann::json::object();
  std::string verdict = "pass";  // pass, fail or unknown
  long long cases = 0;
  long long failures = 0;
  std::vector<nlohmann::json> witnesses;
  nlohmann::json stats = nlohmann::json::object();
  double wall_seconds = 0;

  // Records a failing case; the first few witnesses are kept.
  void fail(nlohmann::json witness, size_t keep = 5);
  // An unmet requirement that is not a single case (e.g. a coverage shortfall).
  void fail_requirement(const std::string& what);
  bool passed() const { return verdict == "pass"; }
  // Wall time is left out unless asked for, so equal runs serialize identically.
  nlohmann::json to_json(bool with_time = false) const;
  std::string summary() const;
};

}  // namespace rwp
