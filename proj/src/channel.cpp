#include "swipt/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace swipt {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) {
  // SplitMix64 never yields four zero words in a row, so the all-zero
  // xoshiro state is unreachable even for seed 0.
  std::uint64_t s = seed;
  for (auto& word : state_) {
    s += kGolden;
    word = mix64(s);
  }
}

std::uint64_t RngStream::next() {
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

double RngStream::uniform_open() {
  return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
}

double RngStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

RngStream make_rng(std::uint64_t seed) { return RngStream(seed); }

std::uint64_t substream_seed(std::uint64_t parent_seed, std::uint64_t index) {
  return mix64(mix64(parent_seed) ^ mix64(index * kGolden + 0x2545f4914f6cdd1dULL));
}

RngStream substream(std::uint64_t parent_seed, std::uint64_t index) {
  return RngStream(substream_seed(parent_seed, index));
}

FadingParams::FadingParams(double lambda_h, double lambda_g)
    : lambda_h_(lambda_h), lambda_g_(lambda_g) {
  if (!std::isfinite(lambda_h) || lambda_h <= 0.0) {
    throw std::invalid_argument("lambda_h must be positive and finite");
  }
  if (!std::isfinite(lambda_g) || lambda_g <= 0.0) {
    throw std::invalid_argument("lambda_g must be positive and finite");
  }
}

double sample_exponential(RngStream& rng, double mean) {
  return -mean * std::log(rng.uniform_open());
}

ChannelRealization sample_channel(RngStream& rng, const FadingParams& fading) {
  const double h_sq = sample_exponential(rng, fading.lambda_h());
  const double g_sq = sample_exponential(rng, fading.lambda_g());
  return {h_sq, g_sq};
}

}  // namespace swipt
