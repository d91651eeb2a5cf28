#include <iostream>

#include "exk/verify/acceptance.hpp"

int main() {
  exk::acceptance::Options opt;
  opt.log = &std::cerr;
  const int failures = exk::acceptance::run_all(std::cout, opt);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
