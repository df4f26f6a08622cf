#ifndef EQK_TESTS_HELPERS_HPP
#define EQK_TESTS_HELPERS_HPP

#include <utility>
#include <vector>

#include "eqk/dist.hpp"

inline eqk::FiniteDist make_dist(
    std::initializer_list<std::pair<long long, eqk::Rat>> init) {
  std::vector<eqk::FiniteDist::Atom> atoms;
  for (const auto& [k, w] : init) atoms.push_back({k, w});
  return eqk::FiniteDist(std::move(atoms));
}

#endif  // EQK_TESTS_HELPERS_HPP
