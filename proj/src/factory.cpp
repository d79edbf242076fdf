#include "q1prep/factory.hpp"

#include <cmath>
#include <thread>

namespace q1 {

namespace {

// Contiguous trial shards per thread; integer totals make the reduction
// order-independent.
McTotals run_shards(const Q1Code& code, uint64_t T, const SchedulingSet& sched, double p,
                    uint64_t trials, uint64_t seed, uint64_t stream_base, int threads,
                    bool want_weights) {
    threads = std::max(1, threads);
    const uint64_t nthreads = std::min<uint64_t>(static_cast<uint64_t>(threads), std::max<uint64_t>(trials, 1));
    std::vector<McTotals> parts(nthreads);

    auto work = [&](uint64_t lo, uint64_t hi, McTotals& acc) {
        FactoryOptions opts;
        opts.collect_frames = want_weights;
        for (uint64_t r = lo; r < hi; ++r) {
            RandomFaultSource src(seed, stream_base + r, p);
            FactoryOutcome out = run_factory(code, T, sched, src, opts);
            acc.trials += 1;
            acc.successes += out.successes;
            if (out.aborted) acc.aborted_trials += 1;
            if (want_weights) {
                for (const auto& f : out.frames) {
                    auto [wx, wz] = residual_weights(f);
                    acc.sum_wx += wx;
                    acc.sum_wz += wz;
                }
            }
        }
    };

    if (nthreads == 1) {
        work(0, trials, parts[0]);
    } else {
        std::vector<std::thread> pool;
        const uint64_t chunk = (trials + nthreads - 1) / nthreads;
        for (uint64_t t = 0; t < nthreads; ++t) {
            const uint64_t lo = t * chunk;
            const uint64_t hi = std::min(trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(work, lo, hi, std::ref(parts[t]));
        }
        for (auto& th : pool) th.join();
    }

    McTotals total;
    for (const auto& part : parts) {
        total.trials += part.trials;
        total.successes += part.successes;
        total.sum_wx += part.sum_wx;
        total.sum_wz += part.sum_wz;
        total.aborted_trials += part.aborted_trials;
    }
    return total;
}

}  // namespace

McTotals run_factory_mc(const Q1Code& code, uint64_t T, const SchedulingSet& sched, double p,
                        uint64_t trials, uint64_t seed, uint64_t stream_base, int threads) {
    return run_shards(code, T, sched, p, trials, seed, stream_base, threads, false);
}

McTotals run_factory_mc_weights(const Q1Code& code, uint64_t T, const SchedulingSet& sched, double p,
                                uint64_t trials, uint64_t seed, uint64_t stream_base, int threads) {
    return run_shards(code, T, sched, p, trials, seed, stream_base, threads, true);
}

RateEstimate estimate_rate_mc(const Q1Code& code, uint64_t T, const SchedulingSet& sched, double p,
                              uint64_t trials, uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("estimate_rate_mc: trials must be >= 1");
    const McTotals t = run_shards(code, T, sched, p, trials, seed, 0, threads, false);
    RateEstimate est;
    est.trials = trials;
    est.factory_size = T;
    est.successes = t.successes;
    const double copies = static_cast<double>(trials) * static_cast<double>(T);
    est.rate = static_cast<double>(t.successes) / copies;
    // Bernoulli variance of the per-copy indicator; within-factory correlation
    // makes this approximate.
    est.stderr_ = std::sqrt(std::max(0.0, est.rate * (1.0 - est.rate) / copies));
    return est;
}

ErrorProbsEstimate estimate_error_probs_mc(const Q1Code& code, uint64_t T, const SchedulingSet& sched,
                                           double p, uint64_t trials, uint64_t seed, int threads) {
    if (trials < 1) throw std::invalid_argument("estimate_error_probs_mc: trials must be >= 1");
    const McTotals t = run_shards(code, T, sched, p, trials, seed, 0, threads, true);
    ErrorProbsEstimate est;
    est.successes = t.successes;
    if (t.successes == 0) return est;
    const double qubits = static_cast<double>(t.successes) * static_cast<double>(code.N);
    est.p_x = static_cast<double>(t.sum_wx) / qubits;
    est.p_z = static_cast<double>(t.sum_wz) / qubits;
    est.stderr_x = std::sqrt(std::max(0.0, est.p_x * (1.0 - est.p_x) / qubits));
    est.stderr_z = std::sqrt(std::max(0.0, est.p_z * (1.0 - est.p_z) / qubits));
    return est;
}

}  // namespace q1
