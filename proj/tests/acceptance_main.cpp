#include <cstdlib>

#include "hexlap/acceptance.hpp"

int main() {
  const auto results = hexlap::run_acceptance(HEXLAP_GOLDEN_DIR);
  return hexlap::all_passed(results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
