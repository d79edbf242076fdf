#include "q1prep/logical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace q1 {

double llr_check(double a, double b) {
    // tanh-product rule; the magnitude depends only on |a|, |b|, so the sign
    // is factored out to keep the combine exactly antisymmetric
    if (a == 0.0 || b == 0.0) return 0.0;
    const double aa = std::fabs(a);
    const double ab = std::fabs(b);
    const double mag = std::min(aa, ab) + std::log1p(std::exp(-(aa + ab))) -
                       std::log1p(std::exp(-std::fabs(aa - ab)));
    const bool neg = (a < 0.0) != (b < 0.0);
    return neg ? -mag : mag;
}

std::vector<uint8_t> sc_op_schedule(int n, int pos) {
    if (n < 0 || n > 30) throw std::invalid_argument("sc_op_schedule: bad depth");
    if (pos < 1 || pos > (1 << n)) throw std::invalid_argument("sc_op_schedule: position out of range");
    std::vector<uint8_t> ops(static_cast<size_t>(n));
    const uint32_t v = static_cast<uint32_t>(pos - 1);
    for (int s = 0; s < n; ++s) ops[static_cast<size_t>(s)] = static_cast<uint8_t>((v >> (n - 1 - s)) & 1);
    return ops;
}

double sc_density_evolution(int n, double q, int pos, const std::vector<int>& frozen,
                            uint64_t samples, CounterRng& rng) {
    if (q < 0.0 || q > 0.5) throw std::invalid_argument("sc_density_evolution: q outside [0, 1/2]");
    for (int f : frozen)
        if (f == pos) throw std::invalid_argument("sc_density_evolution: target position is frozen");
    if (q == 0.0) return 0.0;
    if (samples == 0) throw std::invalid_argument("sc_density_evolution: no samples");

    const std::vector<uint8_t> ops = sc_op_schedule(n, pos);
    const double l0 = std::log((1.0 - q) / q);
    const size_t leaves = size_t{1} << n;
    std::vector<double> buf(leaves);

    uint64_t errors2 = 0;  // halves, so ties count once
    for (uint64_t s = 0; s < samples; ++s) {
        for (size_t j = 0; j < leaves; ++j) buf[j] = rng.next_u01() < q ? -l0 : l0;
        size_t width = leaves;
        for (uint8_t op : ops) {
            width >>= 1;
            if (op == 0) {
                for (size_t j = 0; j < width; ++j) buf[j] = llr_check(buf[2 * j], buf[2 * j + 1]);
            } else {
                // genie-correct partial sums vanish under the all-zero codeword
                for (size_t j = 0; j < width; ++j) buf[j] = buf[2 * j] + buf[2 * j + 1];
            }
        }
        if (buf[0] < 0.0)
            errors2 += 2;
        else if (buf[0] == 0.0)
            errors2 += 1;
    }
    return static_cast<double>(errors2) / (2.0 * static_cast<double>(samples));
}

DeBracket bhattacharyya_bracket(int n, double q, int pos) {
    if (q < 0.0 || q > 0.5) throw std::invalid_argument("bhattacharyya_bracket: q outside [0, 1/2]");
    DeBracket out;
    if (q == 0.0) {
        out.lo = 0.0;
        out.hi = 0.0;
        return out;
    }
    const double z0 = 2.0 * std::sqrt(q * (1.0 - q));
    double z_hi = z0, z_lo = z0;
    for (uint8_t op : sc_op_schedule(n, pos)) {
        if (op == 0) {
            z_hi = 2.0 * z_hi - z_hi * z_hi;
            // check stages only degrade the channel; keep the parameter
        } else {
            z_hi *= z_hi;
            z_lo *= z_lo;
        }
    }
    out.hi = std::min(1.0, z_hi);
    // (1 - sqrt(1 - z^2)) / 2, by series when the direct form would underflow
    out.lo = z_lo < 1e-8 ? 0.25 * z_lo * z_lo
                         : 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - z_lo * z_lo)));
    return out;
}

std::vector<std::string> steane_mapping_names() { return {"default", "prep-only"}; }

DecoderInput steane_input_probs(double p, double p_x_prep, double p_z_prep, const std::string& mapping) {
    auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
    DecoderInput in;
    if (mapping == "default") {
        const double cnot = 8.0 * p / 15.0;
        in.q_x = clamp01(1.0 - (1.0 - p_x_prep) * (1.0 - cnot) * (1.0 - p));
        in.q_z = clamp01(1.0 - (1.0 - p_z_prep) * (1.0 - cnot) * (1.0 - p));
    } else if (mapping == "prep-only") {
        in.q_x = clamp01(p_x_prep);
        in.q_z = clamp01(p_z_prep);
    } else {
        throw std::invalid_argument("unknown decoder-input mapping: " + mapping);
    }
    return in;
}

namespace {

struct SideResult {
    double value = 0.0;
    bool used_bound = false;
    DeBracket bracket;
};

SideResult evaluate_side(int n, double q, int pos, uint64_t samples, CounterRng& rng) {
    SideResult r;
    r.bracket = bhattacharyya_bracket(n, q, pos);
    if (q == 0.0) return r;
    const double min_hits = 100.0;
    if (r.bracket.hi * static_cast<double>(samples) < min_hits) {
        r.value = r.bracket.hi;
        r.used_bound = true;
        return r;
    }
    std::vector<int> no_frozen;
    const double mc = sc_density_evolution(n, q, pos, no_frozen, samples, rng);
    if (mc * static_cast<double>(samples) < min_hits) {
        r.value = r.bracket.hi;
        r.used_bound = true;
    } else {
        r.value = mc;
    }
    return r;
}

}  // namespace

LogicalResult logical_error_rate(const Q1Code& code, const DecoderInput& input, uint64_t samples,
                                 uint64_t seed) {
    LogicalResult out;
    CounterRng rng_x(seed, 0x5841), rng_z(seed, 0x5a41);
    const SideResult x = evaluate_side(code.n, input.q_x, code.i, samples, rng_x);
    const SideResult z = evaluate_side(code.n, input.q_z, code.N + 1 - code.i, samples, rng_z);
    out.rates.p_x_l = x.value;
    out.rates.p_z_l = z.value;
    out.rates.p_e_l = x.value + z.value - x.value * z.value;
    out.method = (x.used_bound || z.used_bound) ? "bhattacharyya" : "mc-de";
    out.bracket_x = x.bracket;
    out.bracket_z = z.bracket;
    out.bracket_e.lo = x.bracket.lo + z.bracket.lo - x.bracket.lo * z.bracket.lo;
    out.bracket_e.hi = std::min(1.0, x.bracket.hi + z.bracket.hi - x.bracket.hi * z.bracket.hi);
    return out;
}

}  // namespace q1
