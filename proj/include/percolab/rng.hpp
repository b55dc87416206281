#pragma once

#include <cstdint>

namespace percolab {

// Counter-style pseudo-random labels: every label is a pure function of
// (master seed, stream, replica, counter), so any single value can be
// evaluated lazily and in any order.

enum class Stream : std::uint64_t {
  PrimaryField = 1,
  ReinforcementField = 2,
  ForestLabels = 3,
};

struct Seed {
  std::uint64_t master = 0;
  Stream stream = Stream::PrimaryField;
  std::uint64_t replica = 0;

  Seed with_replica(std::uint64_t r) const { return {master, stream, r}; }
  Seed with_stream(Stream s) const { return {master, s, replica}; }
};

namespace detail {

// splitmix64 finalizer (Stafford mix13)
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

inline std::uint64_t hash_counter(const Seed& s, std::uint64_t counter) {
  std::uint64_t h = detail::mix64(s.master);
  h = detail::mix64(h ^ (0xd6e8feb86659fd93ULL * static_cast<std::uint64_t>(s.stream)));
  h = detail::mix64(h ^ (0xa0761d6478bd642fULL * s.replica));
  h = detail::mix64(h ^ (0xe7037ed1a0b428dbULL * counter));
  return h;
}

// Uniform on [0,1), 53 bits of mantissa.
inline double uniform01(const Seed& s, std::uint64_t counter) {
  return static_cast<double>(hash_counter(s, counter) >> 11) * 0x1.0p-53;
}

}  // namespace percolab
