#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "q1prep/analytic.hpp"
#include "q1prep/factory.hpp"
#include "q1prep/logical.hpp"
#include "q1prep/runner.hpp"
#include "q1prep/version.hpp"

namespace py = pybind11;
using namespace q1;

namespace {

Q1Code make_code(int N, int i, const std::string& basis) {
    if (basis != "Z" && basis != "X") throw std::invalid_argument("basis must be 'Z' or 'X'");
    return Q1Code(N, i, basis == "Z" ? LogicalBasis::Z : LogicalBasis::X);
}

SchedulingSet make_sched(const std::vector<int>& levels, int n) { return SchedulingSet(levels, n); }

}  // namespace

PYBIND11_MODULE(_q1prep, m) {
    m.doc() = "factory preparation of quantum polar code states";
    m.attr("__version__") = Q1PREP_VERSION;

    py::class_<Q1Code>(m, "Q1Code")
        .def(py::init(&make_code), py::arg("N"), py::arg("i"), py::arg("basis") = "Z")
        .def_readonly("n", &Q1Code::n)
        .def_readonly("N", &Q1Code::N)
        .def_readonly("i", &Q1Code::i)
        .def_readonly("i_n", &Q1Code::i_n)
        .def_readonly("bits", &Q1Code::bits)
        .def("i_eff", &Q1Code::i_eff, py::arg("k"));

    m.def("polar_transform", [](BitVec u) { return polar_transform(std::move(u)); }, py::arg("u"));
    m.def("recursion_bits", &recursion_bits, py::arg("i_n"), py::arg("n"));
    m.def("k_min", [](int i, int j, const BitVec& bits) -> py::object {
        const auto km = k_min(i, j, bits);
        return km ? py::cast(*km) : py::none();
    });
    m.def("detection_syndrome", &detection_syndrome, py::arg("flips"), py::arg("i_prev"));
    m.def("component_count", &component_count, py::arg("N"));

    m.def("block_success_prob", [](const Q1Code& code, int from, int to, double p) {
        const BlockSuccessReport r = block_success_prob(code, from, to, p);
        return py::dict(py::arg("p_pre") = r.p_pre, py::arg("p1") = r.p1, py::arg("p2") = r.p2,
                        py::arg("p_success") = r.p_success);
    });
    m.def("factory_rate_analytic", [](const Q1Code& code, const std::vector<int>& sched, double p) {
        return factory_rate_analytic(code, make_sched(sched, code.n), p);
    });
    m.def("prep_error_probs_analytic", [](const Q1Code& code, double p) {
        const PrepErrorProbs r = prep_error_probs_analytic(code, p);
        return py::make_tuple(r.p_x, r.p_z);
    });
    m.def("smooth_channel_accumulated", [](int i, const BitVec& bits, double p) {
        const ChannelProbs ch = smooth_channel_accumulated(i, bits, p);
        return py::make_tuple(ch.px, ch.py, ch.pz);
    });

    m.def(
        "estimate_rate_mc",
        [](const Q1Code& code, uint64_t T, const std::vector<int>& sched, double p, uint64_t trials,
           uint64_t seed, int threads) {
            const RateEstimate est =
                estimate_rate_mc(code, T, make_sched(sched, code.n), p, trials, seed, threads);
            return py::dict(py::arg("rate") = est.rate, py::arg("stderr") = est.stderr_,
                            py::arg("trials") = est.trials, py::arg("successes") = est.successes);
        },
        py::arg("code"), py::arg("T"), py::arg("sched"), py::arg("p"), py::arg("trials"),
        py::arg("seed") = 0, py::arg("threads") = 1);
    m.def(
        "estimate_error_probs_mc",
        [](const Q1Code& code, uint64_t T, const std::vector<int>& sched, double p, uint64_t trials,
           uint64_t seed, int threads) -> py::object {
            const ErrorProbsEstimate est = estimate_error_probs_mc(
                code, T, make_sched(sched, code.n), p, trials, seed, threads);
            if (!est.has_sample()) return py::none();
            return py::dict(py::arg("p_x") = est.p_x, py::arg("p_z") = est.p_z,
                            py::arg("stderr_x") = est.stderr_x, py::arg("stderr_z") = est.stderr_z,
                            py::arg("successes") = est.successes);
        },
        py::arg("code"), py::arg("T"), py::arg("sched"), py::arg("p"), py::arg("trials"),
        py::arg("seed") = 0, py::arg("threads") = 1);

    m.def(
        "run_block_mc",
        [](const Q1Code& code, int from, int to, double p, uint64_t seed, uint64_t stream) {
            const BlockSpec spec(code, from, to);
            if (from != 0) throw std::invalid_argument("run_block_mc starts at level 0");
            RandomFaultSource src(seed, stream, p);
            BlockTrace trace;
            const BlockResult r =
                run_block_frame(spec, PauliFrame(static_cast<size_t>(spec.data_count())), src, &trace);
            py::dict out;
            out["success"] = r.success();
            out["faults"] = trace.faults.size();
            out["trace"] = trace_to_text(trace, from);
            if (r.success()) {
                out["x_err"] = r.frame.x;
                out["z_err"] = r.frame.z;
            } else {
                out["detected_level"] = r.detected_level;
            }
            return out;
        },
        py::arg("code"), py::arg("from_level"), py::arg("to_level"), py::arg("p"),
        py::arg("seed") = 0, py::arg("stream") = 0);

    m.def(
        "sc_density_evolution",
        [](int n, double q, int pos, uint64_t samples, uint64_t seed) {
            CounterRng rng(seed, 0);
            return sc_density_evolution(n, q, pos, {}, samples, rng);
        },
        py::arg("n"), py::arg("q"), py::arg("pos"), py::arg("samples"), py::arg("seed") = 0);
    m.def("bhattacharyya_bracket", [](int n, double q, int pos) {
        const DeBracket b = bhattacharyya_bracket(n, q, pos);
        return py::make_tuple(b.lo, b.hi);
    });
    m.def("steane_input_probs",
          [](double p, double p_x_prep, double p_z_prep, const std::string& mapping) {
              const DecoderInput in = steane_input_probs(p, p_x_prep, p_z_prep, mapping);
              return py::make_tuple(in.q_x, in.q_z);
          },
          py::arg("p"), py::arg("p_x_prep"), py::arg("p_z_prep"), py::arg("mapping") = "default");
    m.def(
        "logical_error_rate",
        [](const Q1Code& code, double q_x, double q_z, uint64_t samples, uint64_t seed) {
            const LogicalResult r = logical_error_rate(code, {q_x, q_z}, samples, seed);
            return py::dict(py::arg("p_x_l") = r.rates.p_x_l, py::arg("p_z_l") = r.rates.p_z_l,
                            py::arg("p_e_l") = r.rates.p_e_l, py::arg("method") = r.method,
                            py::arg("bracket_e") = py::make_tuple(r.bracket_e.lo, r.bracket_e.hi));
        },
        py::arg("code"), py::arg("q_x"), py::arg("q_z"), py::arg("samples") = 1'000'000,
        py::arg("seed") = 0);

    m.def("run_experiment_csv", [](const std::string& config_text, const std::string& mode) {
        const ExperimentConfig cfg = parse_config_text(config_text);
        RunMode rm;
        if (mode == "rate") rm = RunMode::McRate;
        else if (mode == "errors") rm = RunMode::McErrors;
        else if (mode == "analytic") rm = RunMode::Analytic;
        else if (mode == "logical") rm = RunMode::Logical;
        else if (mode == "compare") rm = RunMode::Compare;
        else throw std::invalid_argument("unknown mode: " + mode);
        return run_experiment_to_string(cfg, rm);
    });
}
