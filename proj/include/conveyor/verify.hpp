// Copyright 2026 The Conveyor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * End-to-end check of a compiled schedule against the reference simulator.
 */
#pragma once

#include "conveyor/circuit.hpp"
#include "conveyor/compiler.hpp"
#include "conveyor/oracle.hpp"
#include "conveyor/pulses.hpp"
#include "conveyor/state.hpp"
#include "conveyor/topology.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace conveyor {

/**
 * Relabels a decoded state from positions to logical qubits: bit
 * placement[j-1]-1 of the input index becomes bit j-1 of the output.
 */
inline LogicalStateVector unpermute(const LogicalStateVector &by_position,
                                    const std::vector<int> &placement) {
    const int n = by_position.n();
    if (static_cast<int>(placement.size()) != n)
        throw InvalidArgument("placement size does not match the state");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int p : placement) {
        if (p < 1 || p > n || seen[static_cast<std::size_t>(p - 1)])
            throw InvalidArgument("placement is not a permutation of 1..N");
        seen[static_cast<std::size_t>(p - 1)] = true;
    }
    LogicalStateVector out(n);
    for (std::uint64_t k = 0; k < by_position.dim(); ++k) {
        std::uint64_t logical = 0;
        for (int j = 1; j <= n; ++j) {
            if ((k >> (placement[static_cast<std::size_t>(j - 1)] - 1)) & 1U)
                logical |= std::uint64_t{1} << (j - 1);
        }
        out[logical] = by_position[k];
    }
    return out;
}

struct VerifyOptions {
    /// Annotations up to this level are decoded after they end; -1 disables.
    int boundary_level{0};
    double decode_tolerance{conveyor::decode_tolerance};
};

struct VerifyResult {
    double fidelity{0};
    double final_residual{0};
    double max_boundary_residual{0};
    std::size_t boundaries_checked{0};
    bool phase_matches{false};
    LogicalStateVector expected;
    LogicalStateVector actual;
};

/**
 * Encodes `psi` in `start`, runs the schedule, decodes, undoes the final
 * placement and compares with the reference circuit output. Throws
 * NotWellFormed if a checked boundary or the final state leaves the
 * well-formed subspace.
 */
template <StateBackend S>
VerifyResult verify_schedule(const LogicalCircuit &circuit,
                             const DeviceTopology &topo,
                             const PulseSchedule &schedule,
                             const std::vector<int> &final_placement,
                             Phase final_phase, const LogicalStateVector &psi,
                             Phase start = Phase::FP,
                             const VerifyOptions &opts = {}) {
    VerifyResult res;
    S state = encode_well_formed<S>(psi, start, topo);
    BoundaryObserver observer;
    if (opts.boundary_level >= 0) {
        observer = [&](const Annotation &a) {
            if (a.level > opts.boundary_level)
                return;
            const auto [fp, pf] = well_formed_residuals(state, topo);
            const double r = std::min(fp, pf);
            res.max_boundary_residual = std::max(res.max_boundary_residual, r);
            ++res.boundaries_checked;
            if (!(r <= opts.decode_tolerance))
                throw NotWellFormed(r);
        };
    }
    apply_schedule(state, topo, schedule, observer);
    const Decoded d = decode_well_formed(state, topo, opts.decode_tolerance);
    res.final_residual = d.residual;
    res.phase_matches = d.phase == final_phase;
    res.actual = unpermute(d.psi, final_placement);
    res.expected = oracle::simulate_logical(circuit, psi);
    res.fidelity =
        oracle::compare_up_to_global_phase(res.expected, res.actual).fidelity;
    return res;
}

template <StateBackend S>
VerifyResult verify_compiled(const LogicalCircuit &circuit,
                             const DeviceTopology &topo,
                             const CompileResult &compiled,
                             const LogicalStateVector &psi,
                             Phase start = Phase::FP,
                             const VerifyOptions &opts = {}) {
    return verify_schedule<S>(circuit, topo, compiled.schedule,
                              compiled.final_placement, compiled.final_phase,
                              psi, start, opts);
}

} // namespace conveyor
