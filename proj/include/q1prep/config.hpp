#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace q1 {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode : uint8_t { McRate, McErrors, Analytic, Logical, Compare };

const char* run_mode_name(RunMode m);

// Parsed experiment description. The file format is INI-style sections of
// key = value lines; lists are comma separated. See docs/config.md.
struct ExperimentConfig {
    int N = 0;
    int i = 0;
    char basis = 'Z';
    std::vector<double> p_grid;
    std::vector<uint64_t> T_grid{1};
    std::vector<int> sched;  // defaults to {n} when absent
    uint64_t trials = 1000;
    uint64_t seed = 0;
    std::string mapping = "default";
    uint64_t de_samples = 1'000'000;
    int threads = 1;
    std::string output;  // empty = stdout

    void validate() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// FNV-1a over a canonical re-serialization, so formatting differences do not
// change the hash.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace q1
