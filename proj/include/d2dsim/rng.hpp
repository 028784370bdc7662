#pragma once

#include <cstdint>
#include <random>

namespace d2d {

// Purpose tags keep the random substreams of one trial disjoint from each
// other and from every other trial's streams.
enum class StreamPurpose : std::uint64_t {
  kAccessPoints = 1,
  kD2dTransmitters = 2,
  kTypicalLink = 3,
  kScheduling = 4,
  kFading = 5,
  kCellularUsers = 6,
  kCellularFading = 7,
};

namespace detail {

// splitmix64 finalizer; good avalanche, cheap.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

// Counter-based substream: a pure function of (master seed, trial index,
// purpose, salt). Trials can therefore run in any order, on any thread, and
// still reproduce bit-identically.
inline std::mt19937_64 substream(std::uint64_t master_seed,
                                 std::uint64_t trial_index,
                                 StreamPurpose purpose,
                                 std::uint64_t salt = 0) {
  std::uint64_t s = detail::mix64(master_seed);
  s = detail::mix64(s ^ trial_index);
  s = detail::mix64(s ^ static_cast<std::uint64_t>(purpose));
  s = detail::mix64(s ^ salt);
  return std::mt19937_64(s);
}

}  // namespace d2d
