#include "rwp/report.hpp"

#include <cstdio>

namespace rwp {

void RunReport::fail(nlohmann::json witness, size_t keep) {
  ++failures;
  verdict = "fail";
  if (witnesses.size() < keep) witnesses.push_back(std::move(witness));
}

void RunReport::fail_requirement(const std::string& what) {
  verdict = "fail";
  witnesses.push_back({{"requirement", what}});
}

nlohmann::json RunReport::to_json(bool with_time) const {
  nlohmann::json j{{"suite", suite},     {"params", params},       {"verdict", verdict}, {"cases", cases},
                   {"failures", failures}, {"witnesses", witnesses}, {"stats", stats}};
  if (with_time) j["wall_seconds"] = wall_seconds;
  return j;
}

std::string RunReport::summary() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", wall_seconds);
  return suite + ": " + verdict + " (" + std::to_string(cases) + " cases, " + std::to_string(failures) + " failures, " +
         buf + " s)";
}

}  // namespace rwp
