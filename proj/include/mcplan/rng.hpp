#pragma once

#include <cstdint>
#include <random>

namespace mcplan {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed of sub-stream `stream` of `master`. Distinct (master, stream) pairs
/// give unrelated seeds, so streams do not depend on consumption order.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t stream) noexcept {
  return mix_seed(mix_seed(master) ^ mix_seed(stream + 0x632BE59BD9B4E019ull));
}

inline Rng make_stream(std::uint64_t master, std::uint64_t stream) {
  return Rng(derive_seed(master, stream));
}

/// Fixed stream offsets under a search seed.
namespace streams {
inline constexpr std::uint64_t kTreeBuild = 0;
inline constexpr std::uint64_t kRolloutBase = 1'000'000;
}  // namespace streams

}  // namespace mcplan
