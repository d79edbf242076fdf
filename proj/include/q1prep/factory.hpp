#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "q1prep/block.hpp"

namespace q1 {

// Recursion levels at which surviving intermediate states are regrouped.
// Strictly increasing, last element equals n; the initial level 0 is implicit.
struct SchedulingSet {
    std::vector<int> levels;

    SchedulingSet() = default;
    SchedulingSet(std::vector<int> lv, int n) : levels(std::move(lv)) {
        if (levels.empty()) throw std::invalid_argument("SchedulingSet: empty");
        int prev = 0;
        for (int l : levels) {
            if (l <= prev || l > n) throw std::invalid_argument("SchedulingSet: levels must be strictly increasing in 1..n");
            prev = l;
        }
        if (levels.back() != n) throw std::invalid_argument("SchedulingSet: last level must equal n");
    }

    size_t stages() const { return levels.size(); }
    int stage_from(size_t s) const { return s == 0 ? 0 : levels[s - 1]; }
    int stage_to(size_t s) const { return levels[s]; }
};

struct StageRecord {
    int level = 0;           // scheduling level reached
    uint64_t survivors = 0;  // states alive after the stage
    uint64_t groups = 0;     // groups formed for the next stage
    uint64_t leftovers = 0;  // survivors discarded by the grouping
};

struct FactoryOutcome {
    uint64_t successes = 0;
    bool aborted = false;
    std::vector<StageRecord> stage_records;
    std::vector<PauliFrame> frames;  // filled when collect_frames is set
};

struct FactoryOptions {
    bool collect_frames = false;
};

// One factory run: T * N/2^{i_1} level-0 blocks, then regrouping and the next
// segment after every scheduling level. Fewer than 2^{n - i_k} survivors at an
// intermediate level aborts the whole run with zero successes.
template <class Source>
FactoryOutcome run_factory(const Q1Code& code, uint64_t T, const SchedulingSet& sched, Source& src,
                           const FactoryOptions& opts = {}) {
    if (T < 1) throw std::invalid_argument("run_factory: T must be >= 1");
    FactoryOutcome out;
    std::vector<PauliFrame> survivors;

    for (size_t s = 0; s < sched.stages(); ++s) {
        const int from = sched.stage_from(s);
        const int to = sched.stage_to(s);
        const BlockSpec spec(code, from, to);
        std::vector<PauliFrame> next;

        uint64_t groups = 0, leftovers = 0, consumed_from = 0;
        if (s == 0) {
            groups = T << (code.n - to);
            for (uint64_t g = 0; g < groups; ++g) {
                BlockResult r = run_block_frame(spec, PauliFrame(static_cast<size_t>(spec.data_count())), src);
                if (r.success()) next.push_back(std::move(r.frame));
            }
        } else {
            const uint64_t gsize = uint64_t{1} << (to - from);
            groups = survivors.size() / gsize;
            leftovers = survivors.size() - groups * gsize;
            consumed_from = survivors.size();
            for (uint64_t g = 0; g < groups; ++g) {
                BlockResult r = run_block(
                    spec, std::span<const PauliFrame>(survivors.data() + g * gsize, gsize), src);
                if (r.success()) next.push_back(std::move(r.frame));
            }
            // Grouping conservation: every survivor is either consumed by a
            // group or discarded as a leftover.
            if (groups * gsize + leftovers != consumed_from)
                throw std::logic_error("run_factory: grouping bookkeeping violated");
        }

        survivors = std::move(next);
        out.stage_records.push_back({to, survivors.size(), groups, leftovers});

        // Intermediate abort rule: not enough copies left to ever assemble one
        // full-length state.
        if (s + 1 < sched.stages() &&
            survivors.size() < (uint64_t{1} << (code.n - to))) {
            out.aborted = true;
            out.successes = 0;
            return out;
        }
    }

    out.successes = survivors.size();
    if (opts.collect_frames) out.frames = std::move(survivors);
    return out;
}

struct RateEstimate {
    double rate = 0.0;
    uint64_t trials = 0;
    uint64_t factory_size = 0;
    double stderr_ = 0.0;
    uint64_t successes = 0;
};

struct ErrorProbsEstimate {
    uint64_t successes = 0;
    double p_x = 0.0, p_z = 0.0;
    double stderr_x = 0.0, stderr_z = 0.0;

    bool has_sample() const { return successes > 0; }
};

// Aggregate Monte-Carlo counters over R factory trials. Trials draw from
// streams keyed (seed, stream_base + trial), so results are independent of
// the thread count.
struct McTotals {
    uint64_t trials = 0;
    uint64_t successes = 0;
    uint64_t sum_wx = 0;
    uint64_t sum_wz = 0;
    uint64_t aborted_trials = 0;
};

McTotals run_factory_mc(const Q1Code& code, uint64_t T, const SchedulingSet& sched, double p,
                        uint64_t trials, uint64_t seed, uint64_t stream_base = 0, int threads = 1);

// As above but also accumulates residual X/Z weights of accepted states.
McTotals run_factory_mc_weights(const Q1Code& code, uint64_t T, const SchedulingSet& sched, double p,
                                uint64_t trials, uint64_t seed, uint64_t stream_base = 0,
                                int threads = 1);

RateEstimate estimate_rate_mc(const Q1Code& code, uint64_t T, const SchedulingSet& sched, double p,
                              uint64_t trials, uint64_t seed, int threads = 1);

ErrorProbsEstimate estimate_error_probs_mc(const Q1Code& code, uint64_t T, const SchedulingSet& sched,
                                           double p, uint64_t trials, uint64_t seed, int threads = 1);

}  // namespace q1
