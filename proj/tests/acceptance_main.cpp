#include <iostream>

#include "prehist/selftest.hpp"

int main() {
  int failures = prehist::print_acceptance(std::cout);
  return failures == 0 ? 0 : 1;
}
