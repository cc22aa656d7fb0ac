// Acceptance run: one PASS/FAIL line per criterion, 11 being the byte-for-byte rerun.
#include <chrono>
#include <iostream>

#include "fdbo/acceptance.hpp"

int main() {
  using namespace fdbo::acceptance;
  const Options opt;
  const auto t0 = std::chrono::steady_clock::now();
  auto results = run_criteria(opt);
  bool all = true;
  for (const auto& r : results) {
    std::cout << format_line(r) << std::endl;
    all = all && r.passed;
  }
  const auto t1 = std::chrono::steady_clock::now();
  const auto det = determinism_check(results_json(results, opt), opt);
  std::cout << format_line(det) << std::endl;
  all = all && det.passed;
  const auto t2 = std::chrono::steady_clock::now();
  std::cout << "suite " << std::chrono::duration<double>(t1 - t0).count() << " s, rerun "
            << std::chrono::duration<double>(t2 - t1).count() << " s" << std::endl;
  return all ? 0 : 1;
}
