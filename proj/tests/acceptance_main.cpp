#include <cstdlib>
#include <iostream>
#include <string>

#include "rpcm/accept.hpp"

// usage: rpcm_acceptance [seed] [threads] [check-number]
int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20260810ull;
  int threads = argc > 2 ? std::atoi(argv[2]) : 0;
  int only = argc > 3 ? std::atoi(argv[3]) : 0;

  std::vector<rpcm::accept::CheckResult> results;
  for (int k : rpcm::accept::all_check_numbers()) {
    if (only != 0 && k != only) continue;
    auto r = rpcm::accept::run_check(k, seed, threads);
    rpcm::accept::print_results(std::cout, {r});
    results.push_back(std::move(r));
  }
  bool ok = rpcm::accept::all_pass(results);
  std::cout << (ok ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << "\n";
  return ok ? 0 : 1;
}
