#pragma once

#include <cstdint>
#include <random>

namespace vcmajor {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent stream seeds from
// (master seed, stream, index) so that every replicate owns its own engine
// and results never depend on the thread schedule.
std::uint64_t mix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

inline Rng make_rng(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return Rng(derive_seed(master, stream, index));
}

// Uniform on [0,1) from the top 53 bits; portable across standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

inline int rademacher(Rng& rng) { return (rng() >> 63) ? 1 : -1; }

// Uniform integer in [lo, hi].
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

// Stream tags shared by the Monte Carlo drivers.
namespace stream {
inline constexpr std::uint64_t kSample = 0;
inline constexpr std::uint64_t kSigns = 1;
inline constexpr std::uint64_t kProbe = 2;
inline constexpr std::uint64_t kSearch = 3;
inline constexpr std::uint64_t kSweep = 4;
}  // namespace stream

}  // namespace vcmajor
