#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace mwc {

using Vertex = int32_t;
using Weight = int64_t;
using Dist = double;

inline constexpr Dist kInf = std::numeric_limits<Dist>::infinity();

enum class ErrorCode {
  kInvalidArgument = 1,
  kParse = 2,
  kInvariant = 3,
  kCongestion = 4,
  kRoundLimit = 5,
  kDisconnected = 6,
  kUnsupported = 7,
  kInternal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the engine when a link carries more than one word in a round.
class CongestionViolation : public Error {
 public:
  CongestionViolation(Vertex from, Vertex to, int64_t round)
      : Error(ErrorCode::kCongestion,
              "congestion violation on edge (" + std::to_string(from) + "," +
                  std::to_string(to) + ") at round " + std::to_string(round)),
        from_(from),
        to_(to),
        round_(round) {}
  Vertex from() const { return from_; }
  Vertex to() const { return to_; }
  int64_t round() const { return round_; }

 private:
  Vertex from_;
  Vertex to_;
  int64_t round_;
};

// log2 n, floored at 1 so that caps and sample rates stay positive for tiny n.
inline double log2n(double n) { return std::max(1.0, std::log2(std::max(2.0, n))); }

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from a base seed and a list of labels.
template <typename... Ts>
uint64_t derive_seed(uint64_t seed, Ts... labels) {
  uint64_t s = splitmix64(seed);
  ((s = splitmix64(s ^ static_cast<uint64_t>(labels))), ...);
  return s;
}

using Rng = std::mt19937_64;

// Portable uniform draws; std distributions are implementation-defined.
inline uint64_t uniform_u64(Rng& rng, uint64_t bound) {
  if (bound <= 1) return 0;
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

inline int64_t uniform_int(Rng& rng, int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(uniform_u64(rng, static_cast<uint64_t>(hi - lo + 1)));
}

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool coin(Rng& rng, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return uniform01(rng) < p;
}

}  // namespace mwc
