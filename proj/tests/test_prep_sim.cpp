#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "q1prep/block.hpp"
#include "test_support.hpp"

using namespace q1;

namespace {

struct CleanSource {
    TwoPauli sample(const ComponentRef&) { return {}; }
};

std::vector<Q1Code> all_codes(int N) {
    std::vector<Q1Code> out;
    for (int i = 1; i <= N; ++i) out.emplace_back(N, i, LogicalBasis::Z);
    out.emplace_back(N, 1, LogicalBasis::X);  // empty frozen-Z set
    return out;
}

}  // namespace

TEST_CASE("apply_cnot propagation rules") {
    PauliFrame f(4);
    f.apply(0, kPauliX);
    apply_cnot(f, 0, 2);
    CHECK(f.x == BitVec{1, 0, 1, 0});  // X copies control -> target
    CHECK(all_zero(f.z));

    PauliFrame g(4);
    g.apply(2, kPauliZ);
    apply_cnot(g, 0, 2);
    CHECK(g.z == BitVec{1, 0, 1, 0});  // Z copies target -> control
    CHECK(all_zero(g.x));

    PauliFrame h(4);
    apply_cnot(h, 1, 3);
    CHECK(h.is_zero());

    CHECK_THROWS_AS(apply_cnot(h, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(apply_cnot(h, 0, 7), std::invalid_argument);
}

TEST_CASE("clean pair measurement leaves the frame alone") {
    CleanSource src;
    PauliFrame f(2);
    CHECK(run_pair_measurement(f, 0, 1, true, src) == 0);
    CHECK(f.is_zero());
    CHECK(run_pair_measurement(f, 0, 1, false, src) == 0);
    CHECK(f.is_zero());
    CHECK_THROWS_AS(run_pair_measurement(f, 0, 0, true, src), std::invalid_argument);
}

TEST_CASE("ZZ fault on the first CNOT equal to the measured stabilizer is silent") {
    PlannedFaultSource src;
    src.plan[{ComponentKind::Cnot, 1, 2, 0, true}] = TwoPauli{kPauliZ, kPauliZ};
    PauliFrame f(2);
    CHECK(run_pair_measurement(f, 0, 1, true, src) == 0);
    CHECK(f.is_zero());  // propagates to Z(x)Z on the pair, reduced away
}

TEST_CASE("cancelling ancilla X faults leave a data X behind") {
    PlannedFaultSource src;
    src.plan[{ComponentKind::Cnot, 1, 2, 0, true}] = TwoPauli{kPauliX, kPauliX};
    src.plan[{ComponentKind::Cnot, 1, 3, 0, true}] = TwoPauli{kPauliI, kPauliX};
    PauliFrame f(2);
    CHECK(run_pair_measurement(f, 0, 1, true, src) == 0);
    CHECK(f.x == BitVec{1, 0});
    CHECK(all_zero(f.z));
}

TEST_CASE("pair reduction moves errors to the lower qubit") {
    CleanSource src;
    PauliFrame f(2);
    f.apply(1, kPauliZ);
    run_pair_measurement(f, 0, 1, true, src);
    CHECK(f.z == BitVec{1, 0});

    PauliFrame g(2);
    g.apply(0, kPauliZ);
    g.apply(1, kPauliZ);
    run_pair_measurement(g, 0, 1, true, src);
    CHECK(g.is_zero());

    PauliFrame h(2);
    h.apply(1, kPauliX);
    run_pair_measurement(h, 0, 1, false, src);
    CHECK(h.x == BitVec{1, 0});
}

TEST_CASE("fault-free blocks always succeed with a zero frame") {
    CleanSource src;
    for (int N : {2, 4, 8, 16}) {
        for (const auto& code : all_codes(N)) {
            const BlockSpec spec(code, 0, code.n);
            BlockTrace trace;
            const BlockResult r =
                run_block_frame(spec, PauliFrame(static_cast<size_t>(N)), src, &trace);
            REQUIRE(r.success());
            CHECK(r.frame.is_zero());
            CHECK(trace.flip_count == 0);
        }
    }
    // larger sizes, spot codes
    for (int N : {64, 256}) {
        const Q1Code code(N, N / 3, LogicalBasis::Z);
        const BlockSpec spec(code, 0, code.n);
        const BlockResult r = run_block_frame(spec, PauliFrame(static_cast<size_t>(N)), src);
        REQUIRE(r.success());
        CHECK(r.frame.is_zero());
    }
}

TEST_CASE("single data X before a ZZ level is detected") {
    const Q1Code code(4, 4, LogicalBasis::Z);  // both levels ZZ
    const BlockSpec spec(code, 0, 2);
    PlannedFaultSource src;
    src.plan[{ComponentKind::DataInit, 0, 0, 0, true}] = TwoPauli{kPauliX, kPauliI};
    const BlockResult r = run_block_frame(spec, PauliFrame(4), src);
    REQUIRE(!r.success());
    CHECK(r.detected_level == 1);
}

TEST_CASE("XZ fault at level 2 flips a level-3 X measurement and is caught there") {
    // 8-qubit block with measurement pattern X, Z, X; the fault acts on the
    // first pair of the Z level. The ancilla Z lands on the partner data
    // qubit and flips an X readout one level later.
    const Q1Code code(8, 3, LogicalBasis::Z);
    REQUIRE(code.bits == BitVec{0, 1, 0});
    const BlockSpec spec(code, 0, 3);
    PlannedFaultSource src;
    src.plan[{ComponentKind::Cnot, 2, 2, 0, true}] = TwoPauli{kPauliX, kPauliZ};
    BlockTrace trace;
    const BlockResult r = run_block_frame(spec, PauliFrame(8), src, &trace);
    REQUIRE(!r.success());
    CHECK(r.detected_level == 3);
    CHECK(trace.level_flips[0] == BitVec{0, 0, 0, 0});
    CHECK(trace.level_flips[1] == BitVec{0, 0, 0, 0});
    // the level-2 reduction moved the propagated Z to the lower pair qubit,
    // so the flip surfaces at the first level-3 measurement
    CHECK(trace.level_flips[2] == BitVec{1, 0, 0, 0});
}

TEST_CASE("single-fault runs: detected exactly when an outcome flips") {
    for (int N : {4, 8}) {
        for (const auto& code : all_codes(N)) {
            const BlockSpec spec(code, 0, code.n);
            for (const auto& comp : enumerate_components(spec)) {
                const int nfaults = comp.kind == ComponentKind::Cnot ? 15 : 1;
                for (int m = 0; m < nfaults; ++m) {
                    TwoPauli f;
                    if (comp.kind == ComponentKind::Cnot) {
                        f = two_pauli_from_index(static_cast<uint32_t>(m));
                    } else if (comp.kind == ComponentKind::DataInit) {
                        f = {kPauliX, kPauliI};
                    } else {
                        f = {comp.zz ? kPauliX : kPauliZ, kPauliI};
                    }
                    PlannedFaultSource src;
                    src.plan[comp] = f;
                    BlockTrace trace;
                    const BlockResult r =
                        run_block_frame(spec, PauliFrame(static_cast<size_t>(N)), src, &trace);
                    INFO("N=" << N << " i_n=" << code.i_n << " level=" << comp.level
                              << " time=" << comp.time << " index=" << comp.index
                              << " fault=" << two_pauli_name(f));
                    if (code.i_n > 0) {
                        // every flip is caught at its level, nothing else is
                        CHECK(r.success() == (trace.flip_count == 0));
                    }
                    if (r.success()) {
                        // canonical residual of one fault touches at most one
                        // bit per mask
                        auto [wx, wz] = residual_weights(r.frame);
                        CHECK(wx <= 1);
                        CHECK(wz <= 1);
                    }
                }
            }
        }
    }
}

TEST_CASE("raw companion frame keeps the stabilizer component") {
    // a fault equal to the measured pair operator reduces to nothing, but the
    // raw frame keeps the weight-2 component
    const Q1Code code(4, 4, LogicalBasis::Z);
    const BlockSpec spec(code, 0, 2);
    PlannedFaultSource src;
    src.plan[{ComponentKind::Cnot, 1, 2, 0, true}] = TwoPauli{kPauliZ, kPauliZ};
    BlockTrace trace;
    trace.track_raw = true;
    const BlockResult r = run_block_frame(spec, PauliFrame(4), src, &trace);
    REQUIRE(r.success());
    CHECK(r.frame.is_zero());
    CHECK(trace.raw_frame.z == BitVec{1, 1, 0, 0});
    CHECK(all_zero(trace.raw_frame.x));

    const std::string text = trace_to_text(trace, 0);
    CHECK(text.find("fault level=1 t=2 cnot#0 pauli=ZZ") != std::string::npos);
    CHECK(text.find("flips level=1 00") != std::string::npos);
}

TEST_CASE("block runs are reproducible for a fixed stream") {
    const Q1Code code(16, 6, LogicalBasis::Z);
    const BlockSpec spec(code, 0, 4);
    for (uint64_t stream = 0; stream < 8; ++stream) {
        RandomFaultSource a(99, stream, 0.02), b(99, stream, 0.02);
        const BlockResult ra = run_block_frame(spec, PauliFrame(16), a);
        const BlockResult rb = run_block_frame(spec, PauliFrame(16), b);
        CHECK(ra.success() == rb.success());
        if (ra.success()) CHECK(ra.frame == rb.frame);
        if (!ra.success()) CHECK(ra.detected_level == rb.detected_level);
    }
}

TEST_CASE("accepted residuals stay within the fault budget") {
    // X and Z residual weights, each minimized over its stabilizer coset,
    // never exceed the number of injected faults
    const Q1Code code(8, 3, LogicalBasis::Z);
    const BlockSpec spec(code, 0, 3);
    const test::StabilizerMasks group = test::stabilizer_masks(code);
    uint64_t accepted = 0;
    for (uint64_t r = 0; r < 20'000; ++r) {
        RandomFaultSource src(53, r, 0.02);
        BlockTrace trace;
        const BlockResult res = run_block_frame(spec, PauliFrame(8), src, &trace);
        if (!res.success()) continue;
        ++accepted;
        const int faults = static_cast<int>(trace.faults.size());
        auto [wx, wz] = test::min_coset_weights(res.frame, group);
        REQUIRE(wx <= faults);
        REQUIRE(wz <= faults);
    }
    CHECK(accepted > 5'000);
}

TEST_CASE("run_block validates input shapes") {
    const Q1Code code(8, 3, LogicalBasis::Z);
    CleanSource src;
    const BlockSpec mid(code, 1, 3);
    std::vector<PauliFrame> wrong_count(3, PauliFrame(2));
    CHECK_THROWS_AS(run_block(mid, wrong_count, src), std::invalid_argument);
    std::vector<PauliFrame> wrong_size(4, PauliFrame(4));
    CHECK_THROWS_AS(run_block(mid, wrong_size, src), std::invalid_argument);
    std::vector<PauliFrame> ok(4, PauliFrame(2));
    CHECK(run_block(mid, ok, src).success());
    const BlockSpec base(code, 0, 3);
    CHECK_THROWS_AS(run_block(base, ok, src), std::invalid_argument);
}

TEST_CASE("mid-block runs consume pre-existing input errors correctly") {
    // a Z error on an input qubit is invisible to ZZ levels but flips an XX
    // level
    const Q1Code code(8, 7, LogicalBasis::Z);  // bits 0,1,1 -> levels Z,Z at 2,3
    REQUIRE(code.bits == BitVec{0, 1, 1});
    CleanSource clean;
    std::vector<PauliFrame> inputs(4, PauliFrame(2));
    inputs[0].apply(0, kPauliZ);
    const BlockSpec spec(code, 1, 3);
    const BlockResult r = run_block(spec, inputs, clean);
    REQUIRE(r.success());  // Z errors commute with every ZZ readout
    CHECK(r.frame.z[0] == 1);

    const Q1Code code2(8, 3, LogicalBasis::Z);  // bits 0,1,0 -> level 3 is XX
    const BlockSpec spec2(code2, 1, 3);
    const BlockResult r2 = run_block(spec2, inputs, clean);
    REQUIRE(!r2.success());
    CHECK(r2.detected_level == 3);
}
