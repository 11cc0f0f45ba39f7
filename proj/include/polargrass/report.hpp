#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace polargrass {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
  nlohmann::json witness;  // null on PASS unless the check reports counts

  nlohmann::json to_json() const {
    nlohmann::json j{{"name", name}, {"pass", pass}, {"detail", detail}};
    if (!witness.is_null()) j["witness"] = witness;
    return j;
  }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }

  CheckResult& add(std::string name, bool pass, std::string detail = {}, nlohmann::json witness = nullptr) {
    checks.push_back({std::move(name), pass, std::move(detail), std::move(witness)});
    return checks.back();
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) arr.push_back(c.to_json());
    return {{"suite", suite}, {"pass", pass()}, {"checks", arr}};
  }
};

}  // namespace polargrass
