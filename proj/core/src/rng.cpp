#include "regmatch/rng.hpp"

namespace regmatch {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream ^ 0x5851f42d4c957f2dULL))) {}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = mix64(seed ^ mix64(a));
  h = mix64(h ^ mix64(b ^ 0xd6e8feb86659fd93ULL));
  if (c != 0) h = mix64(h ^ mix64(c ^ 0xa0761d6478bd642fULL));
  return h;
}

std::uint64_t Rng::next() { return mix64(key_ + kGolden * ++counter_); }

u128 Rng::next128() {
  std::uint64_t hi = next();
  std::uint64_t lo = next();
  return (u128(hi) << 64) | lo;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection from the top to avoid modulo bias.
  std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

u128 Rng::below128(u128 bound) {
  if (bound <= UINT64_MAX) return below(static_cast<std::uint64_t>(bound));
  u128 threshold = (u128(0) - bound) % bound;
  for (;;) {
    u128 r = next128();
    if (r >= threshold) return r % bound;
  }
}

double Rng::unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

}  // namespace regmatch
