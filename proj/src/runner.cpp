#include "q1prep/runner.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "q1prep/analytic.hpp"
#include "q1prep/factory.hpp"
#include "q1prep/logical.hpp"
#include "q1prep/version.hpp"

namespace q1 {

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, p);
}

namespace {

struct Context {
    const ExperimentConfig& cfg;
    Q1Code code;
    SchedulingSet sched;
    std::string hash;

    explicit Context(const ExperimentConfig& cfg_)
        : cfg(cfg_),
          code(cfg_.N, cfg_.i, cfg_.basis == 'Z' ? LogicalBasis::Z : LogicalBasis::X),
          sched(cfg_.sched, code.n),
          hash(config_hash(cfg_)) {}

    // Distinct stream block per grid point so trials never share streams.
    uint64_t stream_base(size_t grid_index) const { return grid_index * (cfg.trials + 1); }
};

void emit_rate_like(const Context& ctx, std::ostream& out, std::ostream* log, bool with_deviation) {
    out << "p,T,rate_mc,stderr,rate_analytic";
    if (with_deviation) out << ",rel_dev";
    out << ",config,version\n";
    size_t grid = 0;
    for (double p : ctx.cfg.p_grid) {
        const double analytic = factory_rate_analytic(ctx.code, ctx.sched, p);
        for (uint64_t T : ctx.cfg.T_grid) {
            if (log) *log << "rate: p=" << p << " T=" << T << "\n";
            const McTotals t = run_factory_mc(ctx.code, T, ctx.sched, p, ctx.cfg.trials, ctx.cfg.seed,
                                              ctx.stream_base(grid), ctx.cfg.threads);
            const double copies = static_cast<double>(ctx.cfg.trials) * static_cast<double>(T);
            const double rate = static_cast<double>(t.successes) / copies;
            const double se = std::sqrt(std::max(0.0, rate * (1.0 - rate) / copies));
            out << format_double(p) << ',' << T << ',' << format_double(rate) << ','
                << format_double(se) << ',' << format_double(analytic);
            if (with_deviation) {
                const double dev = rate > 0.0 ? std::fabs(rate - analytic) / rate
                                              : std::fabs(rate - analytic);
                out << ',' << format_double(dev);
            }
            out << ',' << ctx.hash << ',' << Q1PREP_VERSION << "\n";
            ++grid;
        }
    }
}

void emit_errors(const Context& ctx, std::ostream& out, std::ostream* log) {
    out << "p,T,successes,p_x_mc,p_x_stderr,p_z_mc,p_z_stderr,p_x_analytic,p_z_analytic,config,version\n";
    size_t grid = 0;
    for (double p : ctx.cfg.p_grid) {
        const PrepErrorProbs an = prep_error_probs_analytic(ctx.code, p);
        for (uint64_t T : ctx.cfg.T_grid) {
            if (log) *log << "errors: p=" << p << " T=" << T << "\n";
            const McTotals t = run_factory_mc_weights(ctx.code, T, ctx.sched, p, ctx.cfg.trials,
                                                      ctx.cfg.seed, ctx.stream_base(grid),
                                                      ctx.cfg.threads);
            out << format_double(p) << ',' << T << ',' << t.successes << ',';
            if (t.successes == 0) {
                out << "nan,nan,nan,nan";
            } else {
                const double qubits = static_cast<double>(t.successes) * ctx.code.N;
                const double px = static_cast<double>(t.sum_wx) / qubits;
                const double pz = static_cast<double>(t.sum_wz) / qubits;
                const double sx = std::sqrt(std::max(0.0, px * (1.0 - px) / qubits));
                const double sz = std::sqrt(std::max(0.0, pz * (1.0 - pz) / qubits));
                out << format_double(px) << ',' << format_double(sx) << ',' << format_double(pz)
                    << ',' << format_double(sz);
            }
            out << ',' << format_double(an.p_x) << ',' << format_double(an.p_z) << ',' << ctx.hash
                << ',' << Q1PREP_VERSION << "\n";
            ++grid;
        }
    }
}

void emit_analytic(const Context& ctx, std::ostream& out) {
    out << "p,rate_analytic,p_x_prep,p_z_prep,config,version\n";
    for (double p : ctx.cfg.p_grid) {
        const double rate = factory_rate_analytic(ctx.code, ctx.sched, p);
        const PrepErrorProbs an = prep_error_probs_analytic(ctx.code, p);
        out << format_double(p) << ',' << format_double(rate) << ',' << format_double(an.p_x) << ','
            << format_double(an.p_z) << ',' << ctx.hash << ',' << Q1PREP_VERSION << "\n";
    }
}

void emit_logical(const Context& ctx, std::ostream& out, std::ostream* log) {
    out << "p,p_x_prep,p_z_prep,q_x,q_z,p_x_l,p_z_l,p_e_l,mapping,method,config,version\n";
    for (double p : ctx.cfg.p_grid) {
        if (log) *log << "logical: p=" << p << "\n";
        const PrepErrorProbs an = prep_error_probs_analytic(ctx.code, p);
        const DecoderInput in = steane_input_probs(p, an.p_x, an.p_z, ctx.cfg.mapping);
        const LogicalResult lr = logical_error_rate(ctx.code, in, ctx.cfg.de_samples, ctx.cfg.seed);
        out << format_double(p) << ',' << format_double(an.p_x) << ',' << format_double(an.p_z)
            << ',' << format_double(in.q_x) << ',' << format_double(in.q_z) << ','
            << format_double(lr.rates.p_x_l) << ',' << format_double(lr.rates.p_z_l) << ','
            << format_double(lr.rates.p_e_l) << ',' << ctx.cfg.mapping << ',' << lr.method << ','
            << ctx.hash << ',' << Q1PREP_VERSION << "\n";
    }
}

}  // namespace

void run_experiment(const ExperimentConfig& cfg, RunMode mode, std::ostream& out, std::ostream* log) {
    Context ctx(cfg);
    switch (mode) {
        case RunMode::McRate:
            emit_rate_like(ctx, out, log, false);
            break;
        case RunMode::Compare:
            emit_rate_like(ctx, out, log, true);
            break;
        case RunMode::McErrors:
            emit_errors(ctx, out, log);
            break;
        case RunMode::Analytic:
            emit_analytic(ctx, out);
            break;
        case RunMode::Logical:
            emit_logical(ctx, out, log);
            break;
    }
}

std::string run_experiment_to_string(const ExperimentConfig& cfg, RunMode mode) {
    std::ostringstream ss;
    run_experiment(cfg, mode, ss);
    return ss.str();
}

}  // namespace q1
