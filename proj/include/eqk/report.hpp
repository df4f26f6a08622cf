#ifndef EQK_REPORT_HPP
#define EQK_REPORT_HPP

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "eqk/real.hpp"

namespace eqk {

inline std::string rat_str(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

inline std::string real_str(const Real& r, unsigned digits = 20) {
  std::ostringstream os;
  os.precision(digits);
  os << r;
  return os.str();
}

/// Verdict object for lemma/identity checks. `exact` is true when no real
/// (toleranced) arithmetic entered any margin.
struct CheckReport {
  std::string name;
  bool holds = true;
  bool exact = true;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json witnesses = nlohmann::json::array();
  nlohmann::json margins = nlohmann::json::array();

  void fail(nlohmann::json witness) {
    holds = false;
    witnesses.push_back(std::move(witness));
  }

  void add_margin(nlohmann::json m) { margins.push_back(std::move(m)); }

  nlohmann::json to_json() const {
    return {{"check", name},     {"holds", holds},       {"exact", exact},
            {"params", params},  {"witnesses", witnesses},
            {"margins", margins}};
  }
};

}  // namespace eqk

#endif  // EQK_REPORT_HPP
