#include "q1prep/code.hpp"

namespace q1 {

BitVec recursion_bits(int i_n, int n) {
    if (n < 0 || n > 62) throw std::invalid_argument("recursion_bits: bad depth");
    if (i_n < 1 || (static_cast<uint64_t>(i_n) - 1) >= (uint64_t{1} << n))
        throw std::invalid_argument("recursion_bits: i_n - 1 outside [0, 2^n)");
    BitVec b(static_cast<size_t>(n), 0);
    uint64_t v = static_cast<uint64_t>(i_n) - 1;
    for (int k = 0; k < n; ++k) b[k] = static_cast<uint8_t>((v >> k) & 1);
    return b;
}

std::optional<int> k_min(int i, int j, const BitVec& bits) {
    if (j <= i) throw std::invalid_argument("k_min: requires i < j");
    if (static_cast<size_t>(j) > bits.size()) throw std::invalid_argument("k_min: bits too short");
    if (j == i + 1) return std::nullopt;
    // Walk down from j-1 while levels keep the basis of level j; the first
    // mismatch (exclusive) is the minimum.
    const uint8_t bj = bits[j - 1];
    int k = j - 1;
    while (k - 1 >= i + 1 && bits[k - 1] == bj) --k;
    return k;
}

BitVec detection_syndrome(const BitVec& flips, int i_prev) {
    if (i_prev < 0 || static_cast<size_t>(i_prev) > flips.size())
        throw std::invalid_argument("detection_syndrome: i_prev out of range");
    if (i_prev == 0) return {};
    BitVec t = polar_transform(flips);
    t.resize(static_cast<size_t>(i_prev));
    return t;
}

uint64_t component_count(uint64_t N) {
    const int n = log2_exact(N);
    return N * (1 + 2 * static_cast<uint64_t>(n));
}

Q1Code::Q1Code(int N_, int i_, LogicalBasis basis_) : N(N_), i(i_), basis(basis_) {
    n = log2_exact(static_cast<uint64_t>(N_));
    if (i < 1 || i > N) throw std::invalid_argument("Q1Code: information position out of range");
    i_n = (basis == LogicalBasis::Z) ? i : i - 1;
    if (i_n == 0) {
        bits.assign(static_cast<size_t>(n), 0);
    } else {
        bits = recursion_bits(i_n, n);
    }
}

}  // namespace q1
