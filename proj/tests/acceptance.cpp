// Standalone acceptance runner: one line per criterion, nonzero exit on any
// failure. Budget selectable via argv[1] (small|full), default full.

#include <cstring>
#include <iostream>
#include <string>

#include "eqk/acceptance.hpp"

int main(int argc, char** argv) {
  eqk::Budget budget = eqk::Budget::full;
  if (argc > 1 && std::strcmp(argv[1], "small") == 0)
    budget = eqk::Budget::small;
  bool all_ok = true;
  try {
    for (const auto& rep : eqk::acceptance::run_all(budget)) {
      all_ok &= rep.holds;
      std::cout << (rep.holds ? "PASS" : "FAIL") << " " << rep.name << "\n";
      if (!rep.holds) std::cout << "  witnesses: " << rep.witnesses.dump()
                                << "\n";
      std::cout.flush();
    }
  } catch (const std::exception& e) {
    std::cout << "FAIL (exception): " << e.what() << "\n";
    return 1;
  }
  return all_ok ? 0 : 1;
}
