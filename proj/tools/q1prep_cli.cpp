// Batch experiment driver: parses a config file, runs the Monte-Carlo and
// analytic pipelines, and writes machine-readable CSV.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "q1prep/runner.hpp"
#include "q1prep/version.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::optional<uint64_t> seed;
    std::optional<int> threads;
    std::optional<std::string> out;
    bool verbose = false;
};

void add_common(CLI::App* sub, CliOptions& opt) {
    sub->add_option("--config", opt.config_path, "experiment config file")->required();
    sub->add_option("--seed", opt.seed, "override run.seed");
    sub->add_option("--threads", opt.threads, "override run.threads");
    sub->add_option("--out", opt.out, "override run.output (CSV path, default stdout)");
    sub->add_flag("--verbose", opt.verbose, "progress messages on stderr");
}

int run(const CliOptions& opt, q1::RunMode mode) {
    q1::ExperimentConfig cfg;
    try {
        cfg = q1::parse_config_file(opt.config_path);
        if (opt.seed) cfg.seed = *opt.seed;
        if (opt.threads) cfg.threads = *opt.threads;
        if (opt.out) cfg.output = *opt.out;
        cfg.validate();
    } catch (const q1::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    std::ostream* log = opt.verbose ? &std::cerr : nullptr;
    try {
        if (cfg.output.empty()) {
            q1::run_experiment(cfg, mode, std::cout, log);
        } else {
            std::ofstream f(cfg.output, std::ios::binary);
            if (!f) throw q1::IoError("cannot open output file: " + cfg.output);
            q1::run_experiment(cfg, mode, f, log);
            if (!f.good()) throw q1::IoError("write failed: " + cfg.output);
        }
    } catch (const q1::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"factory preparation of quantum polar code states: simulation and estimates"};
    app.set_version_flag("--version", Q1PREP_VERSION);
    app.require_subcommand(1);

    CliOptions opt;
    q1::RunMode mode = q1::RunMode::McRate;

    auto* rate = app.add_subcommand("rate", "Monte-Carlo preparation rate over the (p, T) grid");
    add_common(rate, opt);
    rate->callback([&] { mode = q1::RunMode::McRate; });

    auto* errors = app.add_subcommand("errors", "Monte-Carlo residual error probabilities");
    add_common(errors, opt);
    errors->callback([&] { mode = q1::RunMode::McErrors; });

    auto* analytic = app.add_subcommand("analytic", "closed-form rate and error estimates");
    add_common(analytic, opt);
    analytic->callback([&] { mode = q1::RunMode::Analytic; });

    auto* logical = app.add_subcommand("logical", "logical error rate pipeline");
    add_common(logical, opt);
    logical->callback([&] { mode = q1::RunMode::Logical; });

    auto* compare = app.add_subcommand("compare", "Monte-Carlo vs analytic rate with deviations");
    add_common(compare, opt);
    compare->callback([&] { mode = q1::RunMode::Compare; });

    CLI11_PARSE(app, argc, argv);
    return run(opt, mode);
}
