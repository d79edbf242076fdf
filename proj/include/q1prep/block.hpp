#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "q1prep/code.hpp"
#include "q1prep/frame.hpp"
#include "q1prep/noise.hpp"

namespace q1 {

// One recursion segment of the preparation: levels from_level+1 .. to_level,
// acting on 2^to_level data qubits. from_level == 0 also covers the Z-basis
// initialization of the data qubits.
struct BlockSpec {
    Q1Code code;
    int from_level = 0;
    int to_level = 0;

    BlockSpec(Q1Code c, int from, int to) : code(std::move(c)), from_level(from), to_level(to) {
        if (from < 0 || to <= from || to > code.n)
            throw std::invalid_argument("BlockSpec: need 0 <= from < to <= n");
    }

    int data_count() const { return 1 << to_level; }
    int pairs_per_level() const { return 1 << (to_level - 1); }
    int input_count() const { return 1 << (to_level - from_level); }
    int input_size() const { return 1 << from_level; }

    // Pair measurements total; the block has this many ancilla inits and
    // measurements, and twice as many CNOTs.
    int pair_measurements() const { return (to_level - from_level) * pairs_per_level(); }

    // Qubits of pair m at level k: lower qubit q1 and q1 + 2^{k-1} within a
    // 2^k sub-block, matching the polar butterfly.
    std::pair<int, int> pair_qubits(int level, int pair) const {
        const int half = 1 << (level - 1);
        const int sub = pair >> (level - 1);
        const int off = pair & (half - 1);
        const int q1 = (sub << level) + off;
        return {q1, q1 + half};
    }
};

enum class ComponentKind : uint8_t { DataInit, AncInit, Cnot, AncMeas };

// Identity of one noisy component. Enumeration order is recursion level, then
// time step (init = 1, first CNOT layer = 2, second = 3, readout = 4), then
// index ascending; data initializations come first at level 0. `zz` caches the
// measurement basis of the level.
struct ComponentRef {
    ComponentKind kind = ComponentKind::DataInit;
    int level = 0;
    int time = 0;
    int index = 0;
    bool zz = true;

    friend bool operator<(const ComponentRef& a, const ComponentRef& b) {
        if (a.level != b.level) return a.level < b.level;
        if (a.time != b.time) return a.time < b.time;
        return a.index < b.index;
    }
    friend bool operator==(const ComponentRef& a, const ComponentRef& b) {
        return a.level == b.level && a.time == b.time && a.index == b.index;
    }
};

std::vector<ComponentRef> enumerate_components(const BlockSpec& spec);

// Draws faults from a counter-based stream: one draw per component.
struct RandomFaultSource {
    CounterRng rng;
    NoiseParams params;

    RandomFaultSource(CounterRng r, NoiseParams np) : rng(r), params(np) {}
    RandomFaultSource(uint64_t seed, uint64_t stream, double p) : rng(seed, stream), params(p) {}

    TwoPauli sample(const ComponentRef& c) {
        switch (c.kind) {
            case ComponentKind::DataInit:
                if (auto f = sample_init_fault(rng, params, PrepBasis::Z)) return {*f, kPauliI};
                return {};
            case ComponentKind::AncInit:
                if (auto f = sample_init_fault(rng, params, c.zz ? PrepBasis::Z : PrepBasis::X))
                    return {*f, kPauliI};
                return {};
            case ComponentKind::Cnot:
                if (auto f = sample_cnot_fault(rng, params)) return *f;
                return {};
            case ComponentKind::AncMeas:
                if (sample_meas_fault(rng, params)) return {c.zz ? kPauliX : kPauliZ, kPauliI};
                return {};
        }
        return {};
    }
};

// Forces specific faults at specific components; everything else is clean.
// For CNOTs, slot `a` of the Pauli acts on the control and slot `b` on the
// target (data qubit controls for Z(x)Z, ancilla controls for X(x)X).
struct PlannedFaultSource {
    std::map<ComponentRef, TwoPauli> plan;

    TwoPauli sample(const ComponentRef& c) {
        auto it = plan.find(c);
        return it == plan.end() ? TwoPauli{} : it->second;
    }
};

struct BlockTrace {
    struct FaultEvent {
        ComponentRef comp;
        TwoPauli pauli;
    };
    std::vector<FaultEvent> faults;
    // Flip vector per level run (index 0 <-> level from_level + 1), ordered by
    // global pair index.
    std::vector<BitVec> level_flips;
    uint64_t flip_count = 0;

    // When set, a companion frame is propagated without the per-pair
    // stabilizer reduction and stored here on success. Its weights count
    // stabilizer components that the reduced frame absorbs.
    bool track_raw = false;
    PauliFrame raw_frame;
};

// One line per fault plus one line per level's flip vector, for debugging.
std::string trace_to_text(const BlockTrace& trace, int from_level);

struct BlockResult {
    enum class Status : uint8_t { Success, Detected };
    Status status = Status::Success;
    int detected_level = 0;  // valid when status == Detected
    PauliFrame frame;        // valid when status == Success

    bool success() const { return status == Status::Success; }
};

namespace detail {

// Shared per-level machinery. Ancilla error bits live in scratch vectors and
// are discarded after readout.
struct LevelScratch {
    BitVec anc_x, anc_z, flips;
    void reset(size_t pairs) {
        anc_x.assign(pairs, 0);
        anc_z.assign(pairs, 0);
        flips.assign(pairs, 0);
    }
};

}  // namespace detail

// Runs one block on a concatenated frame over 2^to_level qubits. The frame
// must be zero-initialized by the caller when from_level == 0 (data inits are
// sampled here). Aborts at the first level whose flip vector has a nonzero
// syndrome.
template <class Source>
BlockResult run_block_frame(const BlockSpec& spec, PauliFrame frame, Source& src,
                            BlockTrace* trace = nullptr) {
    if (frame.size() != static_cast<size_t>(spec.data_count()))
        throw std::invalid_argument("run_block: frame size mismatch");

    auto record = [&](const ComponentRef& c, const TwoPauli& f) {
        if (trace && !f.identity()) trace->faults.push_back({c, f});
    };
    const bool raw = trace && trace->track_raw;
    PauliFrame raw_frame;
    if (raw) raw_frame = frame;

    if (spec.from_level == 0) {
        for (int q = 0; q < spec.data_count(); ++q) {
            ComponentRef c{ComponentKind::DataInit, 0, 0, q, true};
            const TwoPauli f = src.sample(c);
            record(c, f);
            frame.apply(static_cast<size_t>(q), f.a);
            if (raw) raw_frame.apply(static_cast<size_t>(q), f.a);
        }
    }

    detail::LevelScratch s, rs;
    const int pairs = spec.pairs_per_level();
    for (int k = spec.from_level + 1; k <= spec.to_level; ++k) {
        const bool zz = spec.code.level_is_zz(k);
        s.reset(static_cast<size_t>(pairs));
        if (raw) rs.reset(static_cast<size_t>(pairs));

        // Propagation through one CNOT of the measurement: data controls the
        // ancilla target for ZZ, the ancilla controls the data target for XX.
        auto cnot_step = [zz](PauliFrame& fr, detail::LevelScratch& sc, int m, size_t q) {
            if (zz) {
                sc.anc_x[m] ^= fr.x[q];
                fr.z[q] ^= sc.anc_z[m];
            } else {
                fr.x[q] ^= sc.anc_x[m];
                sc.anc_z[m] ^= fr.z[q];
            }
        };
        auto cnot_fault = [zz](PauliFrame& fr, detail::LevelScratch& sc, int m, size_t q,
                               const TwoPauli& f) {
            if (zz) {
                fr.apply(q, f.a);
                sc.anc_x[m] ^= f.b.x;
                sc.anc_z[m] ^= f.b.z;
            } else {
                sc.anc_x[m] ^= f.a.x;
                sc.anc_z[m] ^= f.a.z;
                fr.apply(q, f.b);
            }
        };

        // t = 1: ancilla inits.
        for (int m = 0; m < pairs; ++m) {
            ComponentRef c{ComponentKind::AncInit, k, 1, m, zz};
            const TwoPauli f = src.sample(c);
            record(c, f);
            s.anc_x[m] ^= f.a.x;
            s.anc_z[m] ^= f.a.z;
            if (raw) {
                rs.anc_x[m] ^= f.a.x;
                rs.anc_z[m] ^= f.a.z;
            }
        }
        // t = 2 and t = 3: CNOT layers, one data qubit per pair each.
        for (int t = 2; t <= 3; ++t) {
            for (int m = 0; m < pairs; ++m) {
                auto [q1, q2] = spec.pair_qubits(k, m);
                const size_t q = static_cast<size_t>(t == 2 ? q1 : q2);
                cnot_step(frame, s, m, q);
                ComponentRef c{ComponentKind::Cnot, k, t, m, zz};
                const TwoPauli f = src.sample(c);
                record(c, f);
                cnot_fault(frame, s, m, q, f);
                if (raw) {
                    cnot_step(raw_frame, rs, m, q);
                    cnot_fault(raw_frame, rs, m, q, f);
                }
            }
        }
        // t = 4: readout. Z-basis outcomes flip on ancilla X, X-basis on Z.
        for (int m = 0; m < pairs; ++m) {
            ComponentRef c{ComponentKind::AncMeas, k, 4, m, zz};
            const TwoPauli f = src.sample(c);
            record(c, f);
            s.anc_x[m] ^= f.a.x;
            s.anc_z[m] ^= f.a.z;
            s.flips[m] = zz ? s.anc_x[m] : s.anc_z[m];
            if (raw) {
                rs.anc_x[m] ^= f.a.x;
                rs.anc_z[m] ^= f.a.z;
            }
        }

        // The measured pair operator is now a stabilizer; reduce the frame to
        // the representative with the error on the lower-indexed qubit.
        for (int m = 0; m < pairs; ++m) {
            auto [q1, q2] = spec.pair_qubits(k, m);
            if (zz) {
                frame.z[static_cast<size_t>(q1)] ^= frame.z[static_cast<size_t>(q2)];
                frame.z[static_cast<size_t>(q2)] = 0;
            } else {
                frame.x[static_cast<size_t>(q1)] ^= frame.x[static_cast<size_t>(q2)];
                frame.x[static_cast<size_t>(q2)] = 0;
            }
        }

        if (trace) {
            for (uint8_t b : s.flips) trace->flip_count += b;
            trace->level_flips.push_back(s.flips);
        }

        // Per merged sub-block syndrome check against the frozen prefix of the
        // previous level.
        const int i_prev = spec.code.i_eff(k - 1);
        if (i_prev > 0) {
            const int half = 1 << (k - 1);
            BitVec f_sub(static_cast<size_t>(half));
            for (int sub = 0; sub < pairs / half; ++sub) {
                for (int q = 0; q < half; ++q) f_sub[static_cast<size_t>(q)] = s.flips[static_cast<size_t>(sub * half + q)];
                const BitVec syn = detection_syndrome(f_sub, i_prev);
                if (!all_zero(syn)) {
                    BlockResult r;
                    r.status = BlockResult::Status::Detected;
                    r.detected_level = k;
                    return r;
                }
            }
        }
    }

    BlockResult r;
    r.status = BlockResult::Status::Success;
    r.frame = std::move(frame);
    if (raw) trace->raw_frame = std::move(raw_frame);
    return r;
}

// Entry point taking the 2^{j-i} input frames of a block. For from_level == 0
// pass no inputs; the data qubits are fresh.
template <class Source>
BlockResult run_block(const BlockSpec& spec, std::span<const PauliFrame> inputs, Source& src,
                      BlockTrace* trace = nullptr) {
    if (spec.from_level == 0) {
        if (!inputs.empty()) throw std::invalid_argument("run_block: level-0 blocks take no inputs");
        return run_block_frame(spec, PauliFrame(static_cast<size_t>(spec.data_count())), src, trace);
    }
    if (inputs.size() != static_cast<size_t>(spec.input_count()))
        throw std::invalid_argument("run_block: wrong input count");
    PauliFrame frame(static_cast<size_t>(spec.data_count()));
    size_t off = 0;
    for (const auto& in : inputs) {
        if (in.size() != static_cast<size_t>(spec.input_size()))
            throw std::invalid_argument("run_block: wrong input size");
        for (size_t q = 0; q < in.size(); ++q) {
            frame.x[off + q] = in.x[q];
            frame.z[off + q] = in.z[q];
        }
        off += in.size();
    }
    return run_block_frame(spec, std::move(frame), src, trace);
}

// Standalone two-qubit pair measurement on an existing frame: ancilla init,
// two CNOTs, readout, stabilizer reduction. Components are consumed in that
// order from the source, tagged with the given level and pair index. Returns
// the outcome flip.
template <class Source>
uint8_t run_pair_measurement(PauliFrame& frame, int q1, int q2, bool zz, Source& src, int level = 1,
                             int pair = 0) {
    if (q1 == q2 || q1 < 0 || q2 < 0 || static_cast<size_t>(q1) >= frame.size() ||
        static_cast<size_t>(q2) >= frame.size())
        throw std::invalid_argument("run_pair_measurement: bad qubit indices");
    uint8_t ax = 0, az = 0;
    {
        const TwoPauli f = src.sample({ComponentKind::AncInit, level, 1, pair, zz});
        ax ^= f.a.x;
        az ^= f.a.z;
    }
    for (int t = 2; t <= 3; ++t) {
        const size_t q = static_cast<size_t>(t == 2 ? q1 : q2);
        if (zz) {
            ax ^= frame.x[q];
            frame.z[q] ^= az;
        } else {
            frame.x[q] ^= ax;
            az ^= frame.z[q];
        }
        const TwoPauli f = src.sample({ComponentKind::Cnot, level, t, pair, zz});
        if (zz) {
            frame.apply(q, f.a);
            ax ^= f.b.x;
            az ^= f.b.z;
        } else {
            ax ^= f.a.x;
            az ^= f.a.z;
            frame.apply(q, f.b);
        }
    }
    const TwoPauli f = src.sample({ComponentKind::AncMeas, level, 4, pair, zz});
    ax ^= f.a.x;
    az ^= f.a.z;
    const uint8_t flip = zz ? ax : az;
    if (zz) {
        frame.z[static_cast<size_t>(q1)] ^= frame.z[static_cast<size_t>(q2)];
        frame.z[static_cast<size_t>(q2)] = 0;
    } else {
        frame.x[static_cast<size_t>(q1)] ^= frame.x[static_cast<size_t>(q2)];
        frame.x[static_cast<size_t>(q2)] = 0;
    }
    return flip;
}

// Frame update of a single ideal CNOT: X propagates control -> target, Z
// propagates target -> control.
inline void apply_cnot(PauliFrame& frame, int control, int target) {
    if (control == target || control < 0 || target < 0 ||
        static_cast<size_t>(control) >= frame.size() || static_cast<size_t>(target) >= frame.size())
        throw std::invalid_argument("apply_cnot: bad qubit indices");
    frame.x[static_cast<size_t>(target)] ^= frame.x[static_cast<size_t>(control)];
    frame.z[static_cast<size_t>(control)] ^= frame.z[static_cast<size_t>(target)];
}

}  // namespace q1
