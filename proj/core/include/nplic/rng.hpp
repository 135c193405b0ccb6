#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace nplic {

// SplitMix64 (Steele/Lea/Flood). Chosen over std engines because the whole
// generator is ten lines that any language can reproduce; the constants below
// plus the derivations in this header are the normative reference for every
// seeded artifact (splits, init, shuffles, benchmark batches).
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1), top 53 bits
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0,n); modulo reduction, bias < 2^-53 for n below 2^11
  // and irrelevant for reproducibility, which is all this is for
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }
};

// FNV-1a 64-bit over the role tag bytes
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// One master seed per run, fanned out per role: derived = mix(master ^ fnv1a64(role)).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view role) {
  SplitMix64 mixer(master ^ fnv1a64(role));
  return mixer.next_u64();
}

// Fisher-Yates, descending index, swap target j = below(i+1)
template <typename T>
void fisher_yates(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace nplic
