#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rpcm/io.hpp"

namespace rpcm::accept {

struct CheckResult {
  std::string id;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Numbered verification checks with pinned tolerances; 0 runs everything.
std::vector<int> all_check_numbers();
CheckResult run_check(int number, std::uint64_t seed, int threads);

// Canned per-example verification bundles for the reproduce command.
// Accepts "example-4.1".."example-4.7" or the family id.
bool known_example(const std::string& id);
std::vector<std::string> example_ids();
std::vector<CheckResult> run_example(const std::string& id, std::uint64_t seed, int threads);

void print_results(std::ostream& os, const std::vector<CheckResult>& results);
bool all_pass(const std::vector<CheckResult>& results);
io::json to_json(const std::vector<CheckResult>& results);

}  // namespace rpcm::accept
