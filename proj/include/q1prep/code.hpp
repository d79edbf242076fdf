#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "q1prep/bitvec.hpp"

namespace q1 {

enum class LogicalBasis : uint8_t { Z, X };

// Binary expansion b_1..b_n of i_n - 1, least significant bit first.
// b_k = 0 selects X(x)X pair measurements at recursion level k, b_k = 1
// selects Z(x)Z.
BitVec recursion_bits(int i_n, int n);

// Smallest k in {i+1 .. j-1} such that all levels strictly above k share the
// basis of level j. Empty candidate set (j == i+1) yields no value.
std::optional<int> k_min(int i, int j, const BitVec& bits);

// Polar transform of the flip vector, restricted to the first i_prev entries.
// A nonzero result means the flips are inconsistent with any valid outcome of
// the level and the state must be discarded.
BitVec detection_syndrome(const BitVec& flips, int i_prev);

// Total component count of a full preparation of a length-N state:
// N data initializations plus, per level, ancilla init/meas and two CNOTs.
uint64_t component_count(uint64_t N);

// A length-N = 2^n quantum polar code encoding one logical qubit at
// information position i (1-based). Positions before i are frozen in the Z
// basis, positions after i in the X basis. The prepared logical state is a Z
// or X basis state, which fixes the effective frozen-Z length i_n.
struct Q1Code {
    int n = 0;                 // recursion depth
    int N = 1;                 // code length, 2^n
    int i = 1;                 // information position, 1..N
    LogicalBasis basis = LogicalBasis::Z;
    int i_n = 1;               // effective frozen-Z length: i (Z state) or i-1 (X state)
    BitVec bits;               // b_1..b_n, zero vector when i_n == 0

    Q1Code() = default;
    Q1Code(int N_, int i_, LogicalBasis basis_);

    // Frozen-Z length after level k. For i_n >= 1 this is
    // 1 + ((i_n - 1) mod 2^k); the i_n == 0 state has an empty frozen-Z set
    // at every level.
    int i_eff(int k) const {
        if (i_n == 0) return 0;
        if (k < 0 || k > n) throw std::invalid_argument("i_eff: level out of range");
        return static_cast<int>(((static_cast<uint64_t>(i_n) - 1) & ((uint64_t{1} << k) - 1)) + 1);
    }

    // Measurement basis of recursion level k (1-based).
    bool level_is_zz(int k) const {
        if (k < 1 || k > n) throw std::invalid_argument("level out of range");
        return bits[k - 1] != 0;
    }
};

}  // namespace q1
