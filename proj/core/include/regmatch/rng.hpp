#pragma once

#include <cstdint>
#include <vector>

namespace regmatch {

using u128 = unsigned __int128;

// SplitMix64 finalizer; the mixing core for all randomness in the library.
std::uint64_t mix64(std::uint64_t x);

// Counter-based generator. A generator is addressed by (seed, stream): the
// same address always yields the same sequence regardless of what other
// generators were used in between, which keeps trial order and threading
// out of the results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Derives a child seed; use to fan out per-trial / per-node randomness.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0);

  std::uint64_t next();
  u128 next128();

  // Uniform in [0, bound); bound > 0. Unbiased via rejection.
  std::uint64_t below(std::uint64_t bound);
  u128 below128(u128 bound);

  // Uniform in [0, 1).
  double unit();
  bool coin() { return (next() >> 63) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Stream tags so independent uses of the same seed never collide.
namespace stream {
inline constexpr std::uint64_t kEdgeRank = 0x01;
inline constexpr std::uint64_t kEdgeOrder = 0x02;
inline constexpr std::uint64_t kNodeColor = 0x03;
inline constexpr std::uint64_t kNodeLocal = 0x04;
inline constexpr std::uint64_t kPermutation = 0x05;
inline constexpr std::uint64_t kGadgetOrient = 0x06;
inline constexpr std::uint64_t kTrial = 0x07;
inline constexpr std::uint64_t kRound = 0x08;
inline constexpr std::uint64_t kSampling = 0x09;
inline constexpr std::uint64_t kRounding = 0x0a;
inline constexpr std::uint64_t kProcess = 0x0b;
}  // namespace stream

}  // namespace regmatch
