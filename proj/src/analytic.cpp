#include "q1prep/analytic.hpp"

#include <array>
#include <cmath>

namespace q1 {

namespace {

int bit_sum(const BitVec& bits, int lo, int hi) {
    int s = 0;
    for (int t = lo; t <= hi; ++t) s += bits[t - 1];
    return s;
}

// Pauli distribution over {I, X, Z, Y} indexed by (x | z<<1); composition of
// Pauli channels is XOR-convolution on that index.
using PauliDist = std::array<double, 4>;

PauliDist convolve(const PauliDist& d, const PauliDist& ch) {
    PauliDist out{0, 0, 0, 0};
    for (int c = 0; c < 4; ++c)
        for (int e = 0; e < 4; ++e) out[c ^ e] += ch[e] * d[c];
    return out;
}

}  // namespace

int cnot_rough_fifteenths(int level, int from, int to, const BitVec& bits) {
    if (level <= from || level > to) throw std::invalid_argument("cnot level outside block");
    if (level == to) return 8;
    const auto km = k_min(from, to, bits);
    return (km && level >= *km) ? 12 : 14;
}

double rough_prob_component(AnalyticComponent kind, int level, int from, int to, const BitVec& bits,
                            double p) {
    switch (kind) {
        case AnalyticComponent::DataInit:
            if (from != 0) throw std::invalid_argument("data init only exists for level-0 blocks");
            return bit_sum(bits, 1, to) == 0 ? 0.0 : p;
        case AnalyticComponent::AncillaInitOrMeas:
            return p;
        case AnalyticComponent::Cnot:
            return static_cast<double>(cnot_rough_fifteenths(level, from, to, bits)) * p / 15.0;
    }
    return 0.0;
}

ChannelProbs smooth_channel_accumulated(int i, const BitVec& bits, double p) {
    ChannelProbs ch;
    if (i < 0 || static_cast<size_t>(i) > bits.size())
        throw std::invalid_argument("smooth_channel_accumulated: bad level");
    if (i == 0) {
        ch.px = p;
        return ch;
    }
    const double a = 2.0 * p / 15.0;
    ch.py = a;
    if (bit_sum(bits, 1, i) == 0) {
        ch.px = 1.0 - (1.0 - p) * std::pow(1.0 - a, i);
        ch.px_is_bound = true;
        ch.pz = a;
    } else if (bits[i - 1] == 0) {
        const int km = *k_min(0, i, bits);
        const int reps = (i - km) + 1;
        ch.px = 1.0 - std::pow(1.0 - a, reps);
        ch.px_is_bound = reps > 1;
        ch.pz = a;
    } else {
        const auto km = k_min(0, i, bits);
        const int reps = km ? (i - *km) + 1 : 1;
        ch.px = a;
        ch.pz = 1.0 - std::pow(1.0 - a, reps);
        ch.pz_is_bound = reps > 1;
    }
    return ch;
}

ChannelProbs smooth_channel_composed(int i, const BitVec& bits, double p) {
    if (i < 0 || static_cast<size_t>(i) > bits.size())
        throw std::invalid_argument("smooth_channel_composed: bad level");
    const double a = 2.0 * p / 15.0;
    PauliDist dist{1, 0, 0, 0};
    auto mix = [&](double px, double py, double pz) {
        dist = convolve(dist, PauliDist{1.0 - px - py - pz, px, pz, py});
    };
    if (i == 0 || bit_sum(bits, 1, i) == 0) mix(p, 0, 0);  // surviving init error
    if (i > 0) {
        const auto km_opt = k_min(0, i, bits);
        const int km = km_opt ? *km_opt : i;
        const bool last_zz = bits[i - 1] != 0;
        for (int k = std::max(1, km); k < i; ++k) {
            if (last_zz)
                mix(0, 0, a);
            else
                mix(a, 0, 0);
        }
        mix(a, a, a);  // last level leaves any single Pauli
    }
    ChannelProbs ch;
    ch.px = dist[1];
    ch.pz = dist[2];
    ch.py = dist[3];
    return ch;
}

double p_pre(int from, int to, const BitVec& bits, double p) {
    if (from < 0 || to <= from || static_cast<size_t>(to) > bits.size())
        throw std::invalid_argument("p_pre: bad levels");
    const ChannelProbs ch = smooth_channel_accumulated(from, bits, p);
    const int s = bit_sum(bits, from + 1, to);
    if (s == 0) return ch.py + ch.pz;            // all-X block: X errors invisible
    if (s == to - from) return ch.px + ch.py;    // all-Z block: Z errors invisible
    return ch.px + ch.py + ch.pz;
}

BlockSuccessReport block_success_prob(const Q1Code& code, int from, int to, double p) {
    BlockSpec spec(code, from, to);
    BlockSuccessReport rep;
    rep.from = from;
    rep.to = to;

    const double n_data = static_cast<double>(spec.data_count());
    double p2 = 1.0;
    if (from == 0) {
        const double pd = rough_prob_component(AnalyticComponent::DataInit, 0, 0, to, code.bits, p);
        p2 *= std::pow(1.0 - pd, n_data);
    }
    const double anc = static_cast<double>(2 * spec.pair_measurements());
    p2 *= std::pow(1.0 - p, anc);
    for (int k = from + 1; k <= to; ++k) {
        const double pc = rough_prob_component(AnalyticComponent::Cnot, k, from, to, code.bits, p);
        p2 *= std::pow(1.0 - pc, n_data);  // 2^j CNOTs per level
    }
    rep.p2 = p2;

    rep.p_pre = (from == 0) ? 0.0 : p_pre(from, to, code.bits, p);
    rep.p1 = std::pow(1.0 - rep.p_pre, n_data);
    rep.p_success = rep.p1 * rep.p2;
    return rep;
}

double factory_rate_analytic(const Q1Code& code, const SchedulingSet& sched, double p,
                             FactoryRateReport* report) {
    double rate = 1.0;
    if (report) report->blocks.clear();
    for (size_t s = 0; s < sched.stages(); ++s) {
        const BlockSuccessReport rep = block_success_prob(code, sched.stage_from(s), sched.stage_to(s), p);
        rate *= rep.p_success;
        if (report) report->blocks.push_back(rep);
    }
    if (report) report->rate = rate;
    return rate;
}

PrepErrorProbs prep_error_probs_analytic(const Q1Code& code, double p) {
    const ChannelProbs ch = smooth_channel_accumulated(code.n, code.bits, p);
    PrepErrorProbs out;
    out.p_x = ch.px + ch.py;
    out.p_z = ch.py + ch.pz;
    out.x_is_bound = ch.px_is_bound;
    out.z_is_bound = ch.pz_is_bound;
    return out;
}

}  // namespace q1
