#pragma once

#include <array>
#include <cstdint>

namespace swipt {

/// Deterministic 64-bit generator: xoshiro256** (Blackman & Vigna) whose
/// 256-bit state is filled from a SplitMix64 sequence started at the seed.
/// Both algorithms use only 64-bit integer arithmetic, so a given seed yields
/// the same sequence on every platform. The algorithm is fixed; changing it
/// changes every published simulation result.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform double on the open interval (0, 1): midpoints (k + 1/2) / 2^52,
  /// all exactly representable, so the extremes are 2^-53 and 1 - 2^-53.
  double uniform_open();

  /// Uniform double on [0, 1).
  double uniform();

 private:
  std::array<std::uint64_t, 4> state_;
};

/// SplitMix64 finaliser; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

RngStream make_rng(std::uint64_t seed);

/// Seed of substream `index` under `parent_seed`. Counter-based: the pair is
/// hashed, so neighbouring indices give unrelated generator states.
std::uint64_t substream_seed(std::uint64_t parent_seed, std::uint64_t index);

RngStream substream(std::uint64_t parent_seed, std::uint64_t index);

/// Mean channel power gains of the two hops (Rayleigh fading).
class FadingParams {
 public:
  /// Throws std::invalid_argument unless both means are positive and finite.
  FadingParams(double lambda_h, double lambda_g);

  double lambda_h() const { return lambda_h_; }
  double lambda_g() const { return lambda_g_; }

 private:
  double lambda_h_;
  double lambda_g_;
};

/// One block's channel power gains |h|^2 (source-relay) and |g|^2 (relay-destination).
struct ChannelRealization {
  double h_sq;
  double g_sq;
};

/// Exponential(mean) by inversion: -mean * ln(U) with U from uniform_open(),
/// so the result is finite and strictly positive.
double sample_exponential(RngStream& rng, double mean);

/// Draws h_sq then g_sq from the same stream.
ChannelRealization sample_channel(RngStream& rng, const FadingParams& fading);

}  // namespace swipt
