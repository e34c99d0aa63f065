#include <cstring>
#include <iostream>

#include "dressed/acceptance.hpp"

int main(int argc, char** argv) {
  dressed::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--fast") == 0) opts.fast = true;
  const auto results = dressed::run_acceptance(opts);
  dressed::print_acceptance(std::cout, results);
  return dressed::all_passed(results) ? 0 : 1;
}
