#include "hybridflow/rng.hpp"

#include <cmath>
#include <numbers>

namespace hybridflow {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed), ident_(mix64(seed + kGamma)) {
  seed_state();
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t ident) : seed_(seed), ident_(ident) {
  seed_state();
}

void RngStream::seed_state() {
  std::uint64_t x = seed_ ^ mix64(ident_ + kGamma);
  for (auto& w : state_) {
    x += kGamma;
    w = mix64(x);
  }
  if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0) {
    state_[0] = kGamma;
  }
}

RngStream RngStream::substream(std::uint64_t index) const {
  const std::uint64_t child = mix64(ident_ + kGamma * (index + 1));
  return RngStream(seed_, child);
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() {
  // (k + 1/2) / 2^53 for k in [0, 2^53): never 0 or 1
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace hybridflow
