#include "rpcm/rng.hpp"

namespace rpcm {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::string_view module,
                          std::string_view purpose, std::uint64_t index) {
  std::uint64_t h = fnv1a(kFnvOffset, module);
  h = fnv1a(h, "/");
  h = fnv1a(h, purpose);
  return splitmix(splitmix(root ^ h) + index);
}

}  // namespace rpcm
