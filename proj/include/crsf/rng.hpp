#pragma once
#include <cstdint>

namespace crsf {

// Counter-style random stream built on the splitmix64 finalizer.
// Streams derived from (seed, a, b, c) are statistically independent, so a
// batch run can hand one stream to each (replica, vertex-rank) pair and stay
// reproducible under parallel scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static RngStream derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0) {
    std::uint64_t s = mix(seed ^ 0xd1b54a32d192ed03ULL);
    s = mix(s ^ a);
    s = mix(s ^ b);
    s = mix(s ^ c);
    return RngStream(s);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0,1) with 53 random bits; P(next_unit() < p) == p exactly for
  // dyadic p, and in particular a weight-0 loop is never kept.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased uniform draw from [0, n), n >= 1 (Lemire-style with rejection).
  std::uint32_t next_below(std::uint32_t n) {
    std::uint64_t x = next_u64() & 0xffffffffULL;
    std::uint64_t m = x * n;
    std::uint32_t lo = static_cast<std::uint32_t>(m);
    if (lo < n) {
      std::uint32_t t = (0u - n) % n;
      while (lo < t) {
        x = next_u64() & 0xffffffffULL;
        m = x * n;
        lo = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

 private:
  std::uint64_t state_;
};

}  // namespace crsf
