#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "q1prep/code.hpp"
#include "q1prep/rng.hpp"

namespace q1 {

// Effective binary-symmetric channel probabilities seen by the X- and Z-error
// decoders.
struct DecoderInput {
    double q_x = 0.0;
    double q_z = 0.0;
};

struct LogicalRates {
    double p_x_l = 0.0;
    double p_z_l = 0.0;
    double p_e_l = 0.0;  // p_x_l + p_z_l - p_x_l * p_z_l
};

// Numerically stable check-node LLR combination
// 2 atanh(tanh(a/2) tanh(b/2)).
double llr_check(double a, double b);

// Successive-cancellation op schedule of a position: bits of (pos - 1), most
// significant first; 0 is a check-combine stage, 1 a variable-combine stage.
std::vector<uint8_t> sc_op_schedule(int n, int pos);

// Monte-Carlo density evolution for BSC(q) under the all-zero codeword with
// genie-correct prior decisions. Returns the per-position decision error
// probability: fraction of samples with negative final LLR plus half the
// exact-zero fraction. `frozen` only validates that the target is not frozen.
double sc_density_evolution(int n, double q, int pos, const std::vector<int>& frozen,
                            uint64_t samples, CounterRng& rng);

// Probability bracket from the Bhattacharyya parameter recursion: upper path
// uses Z' = 2Z - Z^2 / Z'' = Z^2, lower path keeps Z across check stages.
struct DeBracket {
    double lo = 0.0;
    double hi = 1.0;
};

DeBracket bhattacharyya_bracket(int n, double q, int pos);

// Decoder-input mappings from the preparation error probabilities. "default"
// combines, per data qubit, the ancilla preparation error, one transversal
// CNOT fault marginal (8p/15) and one readout fault by independent OR;
// "prep-only" passes the preparation probabilities through unchanged.
std::vector<std::string> steane_mapping_names();
DecoderInput steane_input_probs(double p, double p_x_prep, double p_z_prep,
                                const std::string& mapping = "default");

struct LogicalResult {
    LogicalRates rates;
    std::string method;  // "mc-de" or "bhattacharyya"
    DeBracket bracket_x, bracket_z, bracket_e;
};

// X decoder evaluated at the information position, Z decoder at the mirrored
// position N + 1 - i. Falls back to the Bhattacharyya bracket when the rates
// are below Monte-Carlo resolution at the given sample count.
LogicalResult logical_error_rate(const Q1Code& code, const DecoderInput& input, uint64_t samples,
                                 uint64_t seed);

}  // namespace q1
