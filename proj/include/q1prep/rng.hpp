#pragma once

#include <cstdint>

namespace q1 {

namespace detail {
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

// Counter-based generator keyed by (seed, stream). Draw c of a stream is a
// pure function of (seed, stream, c), so trials replay identically no matter
// how they are scheduled across threads.
class CounterRng {
  public:
    CounterRng() : CounterRng(0, 0) {}
    CounterRng(uint64_t seed, uint64_t stream)
        : key_(detail::splitmix64(seed ^ detail::splitmix64(stream ^ 0x5851f42d4c957f2dULL))),
          counter_(0) {}

    uint64_t next_u64() { return detail::splitmix64(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL); }

    // Uniform in [0, 1) with 53 random bits.
    double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    uint64_t counter() const { return counter_; }

  private:
    uint64_t key_;
    uint64_t counter_;
};

}  // namespace q1
