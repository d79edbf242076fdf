#include "q1prep/block.hpp"

#include <sstream>

namespace q1 {

std::string trace_to_text(const BlockTrace& trace, int from_level) {
    std::ostringstream out;
    for (const auto& ev : trace.faults) {
        const char* kind = "?";
        switch (ev.comp.kind) {
            case ComponentKind::DataInit: kind = "data-init"; break;
            case ComponentKind::AncInit: kind = "anc-init"; break;
            case ComponentKind::Cnot: kind = "cnot"; break;
            case ComponentKind::AncMeas: kind = "anc-meas"; break;
        }
        out << "fault level=" << ev.comp.level << " t=" << ev.comp.time << " " << kind << "#"
            << ev.comp.index << " pauli=" << two_pauli_name(ev.pauli) << "\n";
    }
    for (size_t l = 0; l < trace.level_flips.size(); ++l) {
        out << "flips level=" << (from_level + 1 + static_cast<int>(l)) << " ";
        for (uint8_t b : trace.level_flips[l]) out << static_cast<int>(b);
        out << "\n";
    }
    return out.str();
}

std::vector<ComponentRef> enumerate_components(const BlockSpec& spec) {
    std::vector<ComponentRef> out;
    const int pairs = spec.pairs_per_level();
    out.reserve(static_cast<size_t>(spec.pair_measurements()) * 4 +
                (spec.from_level == 0 ? static_cast<size_t>(spec.data_count()) : 0));
    if (spec.from_level == 0) {
        for (int q = 0; q < spec.data_count(); ++q)
            out.push_back({ComponentKind::DataInit, 0, 0, q, true});
    }
    for (int k = spec.from_level + 1; k <= spec.to_level; ++k) {
        const bool zz = spec.code.level_is_zz(k);
        for (int m = 0; m < pairs; ++m) out.push_back({ComponentKind::AncInit, k, 1, m, zz});
        for (int t = 2; t <= 3; ++t)
            for (int m = 0; m < pairs; ++m) out.push_back({ComponentKind::Cnot, k, t, m, zz});
        for (int m = 0; m < pairs; ++m) out.push_back({ComponentKind::AncMeas, k, 4, m, zz});
    }
    return out;
}

}  // namespace q1
