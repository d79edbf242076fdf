#pragma once

#include <optional>
#include <stdexcept>

#include "q1prep/code.hpp"
#include "q1prep/pauli.hpp"
#include "q1prep/rng.hpp"

namespace q1 {

// Circuit-level depolarizing model: every component fails independently with
// probability p. Initializations and measurements fail with the basis-flipping
// Pauli; a failed CNOT draws one of the 15 non-identity two-qubit Paulis
// uniformly. Each sampler consumes exactly one draw from the stream.
struct NoiseParams {
    double p = 0.0;

    explicit NoiseParams(double p_ = 0.0) : p(p_) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("NoiseParams: p outside [0,1]");
    }
};

enum class PrepBasis : uint8_t { Z, X };

// X error after a Z-basis init, Z error after an X-basis init.
inline std::optional<Pauli> sample_init_fault(CounterRng& rng, const NoiseParams& params, PrepBasis basis) {
    const double u = rng.next_u01();
    if (u >= params.p) return std::nullopt;
    return basis == PrepBasis::Z ? kPauliX : kPauliZ;
}

// One of the 15 two-qubit Paulis, probability p/15 each.
inline std::optional<TwoPauli> sample_cnot_fault(CounterRng& rng, const NoiseParams& params) {
    const double u = rng.next_u01();
    if (u >= params.p) return std::nullopt;
    uint32_t m = static_cast<uint32_t>(u / params.p * 15.0);
    if (m > 14) m = 14;
    return two_pauli_from_index(m);
}

// Pre-readout flip: X before a Z measurement, Z before an X measurement.
inline bool sample_meas_fault(CounterRng& rng, const NoiseParams& params) {
    return rng.next_u01() < params.p;
}

}  // namespace q1
