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

// Prints the Toffoli truth table produced by five global pulses on a
// four-qubit conveyor, then compiles and checks a small circuit.

#include "conveyor/conveyor.hpp"

#include <cstdio>
#include <random>

using namespace conveyor;

int main() {
    const DeviceTopology topo = build_conveyor(4);
    std::printf("device: %d sites, Q_2 at site %d, central site %d\n",
                topo.num_sites(), topo.ic_site(2), *topo.central_site());

    std::printf("\nQ1 Q2 Q3 -> Q1 Q2 Q3   phase/pi\n");
    for (std::uint64_t k = 0; k < 8; ++k) {
        auto st = encode_well_formed<SparseState>(LogicalStateVector::basis(4, k),
                                                  Phase::FP, topo);
        apply_schedule(st, topo, seq_toffoli());
        const Decoded d = decode_well_formed(st, topo);
        std::uint64_t out = 0;
        for (std::uint64_t j = 0; j < d.psi.dim(); ++j) {
            if (std::abs(d.psi[j]) > 0.5)
                out = j;
        }
        auto b = [](std::uint64_t v, int i) { return static_cast<int>((v >> i) & 1U); };
        std::printf(" %d  %d  %d ->  %d  %d  %d   %+.3f\n", b(k, 0), b(k, 1), b(k, 2),
                    b(out, 0), b(out, 1), b(out, 2), d.global_phase / std::numbers::pi);
    }

    LogicalCircuit circuit(4);
    circuit.add(LogicalGate::h(1));
    circuit.add(LogicalGate::cnot(1, 4));
    circuit.add(LogicalGate::swap(2, 3));
    const CompileResult res = compile(circuit, topo);
    std::mt19937_64 rng(1);
    const VerifyResult v = verify_compiled<SparseState>(
        circuit, topo, res, random_logical_state(4, rng));
    std::printf("\ncompiled %zu gates into %zu pulses; final placement",
                circuit.gates.size(), res.pulse_count);
    for (int p : res.final_placement)
        std::printf(" %d", p);
    std::printf(" (%s); fidelity %.12f\n",
                std::string(to_string(res.final_phase)).c_str(), v.fidelity);
    return v.fidelity > 1 - 1e-8 ? 0 : 1;
}
