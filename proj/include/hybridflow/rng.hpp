#pragma once

#include <array>
#include <cstdint>

namespace hybridflow {

// Deterministic splittable random stream. xoshiro256** core seeded through
// splitmix64. A stream's identity is (seed, split path); substream(i) derives
// an independent child from that identity alone, so the family of streams a
// seed produces never depends on how many draws were taken from the parent.
// For a fixed identity and call sequence the draws are bit-identical across
// platforms and thread counts.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  RngStream substream(std::uint64_t index) const;

  std::uint64_t next_u64();

  // strictly inside (0,1); 53-bit resolution
  double uniform();

  // standard normal via Box-Muller, one variate per call
  double normal();

  std::uint64_t seed() const { return seed_; }

 private:
  RngStream(std::uint64_t seed, std::uint64_t ident);
  void seed_state();

  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_ = 0;
  std::uint64_t ident_ = 0;
};

}  // namespace hybridflow
