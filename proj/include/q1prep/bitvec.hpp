#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace q1 {

// Binary vectors over GF(2), one entry per byte. Entries are 0 or 1.
using BitVec = std::vector<uint8_t>;

inline bool is_power_of_two(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline int log2_exact(uint64_t v) {
    if (!is_power_of_two(v)) throw std::invalid_argument("length is not a power of two");
    int n = 0;
    while (v > 1) { v >>= 1; ++n; }
    return n;
}

// In-place polar transform u <- P u over GF(2), where P = [[1,1],[0,1]]^{(x) n}.
// Butterfly: at each level k the lower qubit of every pair (q, q + 2^{k-1})
// absorbs the upper one. O(N log N); P is an involution.
inline void polar_transform_inplace(BitVec& u) {
    const size_t n = u.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("polar_transform: length must be a power of two");
    for (size_t half = 1; half < n; half <<= 1) {
        const size_t block = half << 1;
        for (size_t base = 0; base < n; base += block) {
            for (size_t q = 0; q < half; ++q) {
                u[base + q] ^= u[base + q + half];
            }
        }
    }
}

inline BitVec polar_transform(BitVec u) {
    polar_transform_inplace(u);
    return u;
}

inline bool all_zero(const BitVec& v) {
    for (uint8_t b : v)
        if (b) return false;
    return true;
}

}  // namespace q1
