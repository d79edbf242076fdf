#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "q1prep/code.hpp"
#include "q1prep/factory.hpp"

namespace q1 {

// Per-qubit Pauli channel; px/pz may be upper bounds depending on the bit
// pattern (cancellations between levels are not subtracted), py is exact.
struct ChannelProbs {
    double px = 0.0, py = 0.0, pz = 0.0;
    bool px_is_bound = false;
    bool pz_is_bound = false;

    double total() const { return px + py + pz; }
};

enum class AnalyticComponent : uint8_t { DataInit, AncillaInitOrMeas, Cnot };

// Probability that a single fault of the component produces an error that
// flips some later single-qubit measurement outcome within the block.
// CNOTs: 8p/15 at the last level, 12p/15 from k_min upward, 14p/15 below it.
// Data inits are invisible to all-X blocks; ancilla init/meas always flip.
double rough_prob_component(AnalyticComponent kind, int level, int from, int to, const BitVec& bits,
                            double p);

// CNOT rough probability as an integer numerator over 15; exact form used by
// the enumeration tests.
int cnot_rough_fifteenths(int level, int from, int to, const BitVec& bits);

// Accumulated surviving-error channel on each qubit after levels 1..i, per the
// closed-form case split on the bit pattern. i == 0 is the bare data init.
ChannelProbs smooth_channel_accumulated(int i, const BitVec& bits, double p);

// Same accumulation by exact convolution of the per-level surviving channels;
// equals the closed form to first order and accounts for cancellations.
ChannelProbs smooth_channel_composed(int i, const BitVec& bits, double p);

// Probability that a surviving input error is flagged by block levels
// from+1..to: X-type errors flip Z(x)Z levels, Z-type flip X(x)X levels,
// Y-type flip both.
double p_pre(int from, int to, const BitVec& bits, double p);

struct BlockSuccessReport {
    int from = 0, to = 0;
    double p_pre = 0.0;
    double p1 = 1.0;  // no surviving input error gets flagged
    double p2 = 1.0;  // no in-block component produces a flagged error
    double p_success = 1.0;
};

BlockSuccessReport block_success_prob(const Q1Code& code, int from, int to, double p);

struct FactoryRateReport {
    std::vector<BlockSuccessReport> blocks;
    double rate = 1.0;
};

double factory_rate_analytic(const Q1Code& code, const SchedulingSet& sched, double p,
                             FactoryRateReport* report = nullptr);

struct PrepErrorProbs {
    double p_x = 0.0;
    double p_z = 0.0;
    bool x_is_bound = false;
    bool z_is_bound = false;
};

// Average X/Z error probability per qubit of an accepted full-length state.
PrepErrorProbs prep_error_probs_analytic(const Q1Code& code, double p);

}  // namespace q1
