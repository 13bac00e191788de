// Acceptance runner: one PASS/FAIL line per criterion, details below it.
// With an argument, runs only the listed criterion ids.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "sumlab/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) {
    for (int i = 1; i <= sumlab::verify::kCriteria; ++i) ids.push_back(i);
  }
  bool all = true;
  for (int id : ids) {
    const auto r = sumlab::verify::run_criterion(id, 1);
    std::cout << sumlab::verify::summary_line(r) << '\n' << sumlab::verify::detail_lines(r) << std::flush;
    all = all && r.pass();
  }
  return all ? 0 : 1;
}
