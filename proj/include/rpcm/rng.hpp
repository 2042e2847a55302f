#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rpcm {

// All randomness descends from one root seed through derive(root, module,
// purpose, index); see README for the derivation tree used by each command.
std::uint64_t derive_seed(std::uint64_t root, std::string_view module,
                          std::string_view purpose, std::uint64_t index = 0);

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0,1) with 53 random bits
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rpcm
