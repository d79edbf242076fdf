#pragma once

#include <ostream>
#include <string>

#include "q1prep/config.hpp"

namespace q1 {

// Shortest round-trip decimal form, locale independent.
std::string format_double(double v);

// Executes one experiment and writes CSV rows (header included) in
// deterministic grid order. Byte-identical output for identical
// (config, seed) regardless of thread count.
void run_experiment(const ExperimentConfig& cfg, RunMode mode, std::ostream& out,
                    std::ostream* log = nullptr);

// Convenience wrapper returning the CSV as a string.
std::string run_experiment_to_string(const ExperimentConfig& cfg, RunMode mode);

}  // namespace q1
