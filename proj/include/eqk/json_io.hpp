#ifndef EQK_JSON_IO_HPP
#define EQK_JSON_IO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "eqk/dist.hpp"
#include "eqk/report.hpp"

namespace eqk {

inline Rat parse_rat(const std::string& s) {
  try {
    Rat q(s);
    if (denominator(q) <= 0) throw BadWeightsError("bad fraction: " + s);
    return q;
  } catch (const std::exception&) {
    throw BadWeightsError("bad fraction: " + s);
  }
}

/// Distribution JSON format:
///   {"support":[k0,k1,...], "weights":["n0/d0","n1/d1",...]}
/// Fractions must be in lowest terms; non-normalized input is rejected unless
/// normalize is set.
inline FiniteDist dist_from_json(const nlohmann::json& j,
                                 bool normalize = false) {
  if (!j.contains("support") || !j.contains("weights"))
    throw BadWeightsError("dist JSON needs 'support' and 'weights'");
  const auto& sup = j.at("support");
  const auto& wts = j.at("weights");
  if (sup.size() != wts.size())
    throw BadWeightsError("support/weights length mismatch");
  std::vector<FiniteDist::Atom> atoms;
  for (size_t i = 0; i < sup.size(); ++i) {
    long long k = sup[i].get<long long>();
    Rat w = parse_rat(wts[i].get<std::string>());
    atoms.push_back({k, w});
  }
  if (normalize) return FiniteDist::from_weights(atoms, /*normalize=*/true);
  return FiniteDist(std::move(atoms));
}

inline nlohmann::json dist_to_json(const FiniteDist& d) {
  nlohmann::json sup = nlohmann::json::array();
  nlohmann::json wts = nlohmann::json::array();
  for (const auto& a : d.atoms()) {
    sup.push_back(a.point);
    wts.push_back(rat_str(a.weight));
  }
  return {{"support", sup}, {"weights", wts}};
}

}  // namespace eqk

#endif  // EQK_JSON_IO_HPP
