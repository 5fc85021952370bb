// Acceptance suite: one PASS/FAIL line per criterion. With an argument, runs only that criterion.
#include <cstdlib>
#include <iostream>
#include <string>

#include "laxjac/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace laxjac;
  int first = 1, last = kCriterionCount;
  if (argc > 1) {
    first = last = std::atoi(argv[1]);
    if (first < 1 || first > kCriterionCount) {
      std::cerr << "usage: acceptance [1.." << kCriterionCount << "]\n";
      return 1;
    }
  }
  int failed = 0;
  for (int id = first; id <= last; ++id) {
    const CriterionResult r = run_criterion(id);
    std::cout << format_result(r) << std::flush;
    failed += !r.pass;
  }
  return failed ? 1 : 0;
}
