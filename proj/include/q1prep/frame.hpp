#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "q1prep/bitvec.hpp"
#include "q1prep/pauli.hpp"

namespace q1 {

// X/Z error indicators per data qubit, tracked relative to the ideal circuit.
// A Y error sets both bits of a qubit.
struct PauliFrame {
    BitVec x;
    BitVec z;

    PauliFrame() = default;
    explicit PauliFrame(size_t qubits) : x(qubits, 0), z(qubits, 0) {}

    size_t size() const { return x.size(); }

    void apply(size_t q, Pauli p) {
        x[q] ^= p.x;
        z[q] ^= p.z;
    }

    bool is_zero() const { return all_zero(x) && all_zero(z); }

    bool operator==(const PauliFrame&) const = default;
};

// Hamming weights of the X and Z indicator vectors; a Y error contributes to
// both.
inline std::pair<uint32_t, uint32_t> residual_weights(const PauliFrame& f) {
    uint32_t wx = 0, wz = 0;
    for (uint8_t b : f.x) wx += b;
    for (uint8_t b : f.z) wz += b;
    return {wx, wz};
}

inline PauliFrame concat_frames(const std::vector<PauliFrame>& parts) {
    size_t total = 0;
    for (const auto& f : parts) total += f.size();
    PauliFrame out(total);
    size_t off = 0;
    for (const auto& f : parts) {
        for (size_t q = 0; q < f.size(); ++q) {
            out.x[off + q] = f.x[q];
            out.z[off + q] = f.z[q];
        }
        off += f.size();
    }
    return out;
}

}  // namespace q1
