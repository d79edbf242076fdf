#pragma once

#include <cstdint>
#include <string>

namespace q1 {

// Single-qubit Pauli as (x, z) indicator bits; Y sets both.
struct Pauli {
    uint8_t x = 0;
    uint8_t z = 0;

    bool identity() const { return !x && !z; }
    bool operator==(const Pauli&) const = default;
};

inline constexpr Pauli kPauliI{0, 0};
inline constexpr Pauli kPauliX{1, 0};
inline constexpr Pauli kPauliZ{0, 1};
inline constexpr Pauli kPauliY{1, 1};

inline const char* pauli_name(Pauli p) {
    if (p.x && p.z) return "Y";
    if (p.x) return "X";
    if (p.z) return "Z";
    return "I";
}

// Two-qubit Pauli; slot `a` acts on the control of a CNOT (or the single
// qubit of an init/measurement component), slot `b` on the target.
struct TwoPauli {
    Pauli a;
    Pauli b;

    bool identity() const { return a.identity() && b.identity(); }
    bool operator==(const TwoPauli&) const = default;
};

// The 15 non-identity two-qubit Paulis in a fixed order: index m in [0, 15)
// maps to code m + 1 with code = 4*enc(a) + enc(b), enc(I) = 0, enc(X) = 1,
// enc(Z) = 2, enc(Y) = 3.
inline Pauli pauli_from_code(uint32_t c) {
    return Pauli{static_cast<uint8_t>(c & 1), static_cast<uint8_t>((c >> 1) & 1)};
}

inline TwoPauli two_pauli_from_index(uint32_t m) {
    const uint32_t code = m + 1;
    return TwoPauli{pauli_from_code(code >> 2), pauli_from_code(code & 3)};
}

inline std::string two_pauli_name(TwoPauli p) {
    return std::string(pauli_name(p.a)) + pauli_name(p.b);
}

}  // namespace q1
