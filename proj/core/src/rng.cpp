#include "dixie/rng.hpp"

namespace dixie {

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) noexcept {
  // Key the SplitMix64 sequence on both seed and stream index.
  std::uint64_t state = mix64(seed + 0x9e3779b97f4a7c15ull) ^ mix64(~stream * 0xd1342543de82ef95ull);
  for (auto& word : s_) {
    state += 0x9e3779b97f4a7c15ull;
    word = mix64(state);
  }
}

}  // namespace dixie
