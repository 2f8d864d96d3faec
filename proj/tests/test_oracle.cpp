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

#include "conveyor/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

using namespace conveyor;
using namespace conveyor::oracle;
using Catch::Approx;

namespace {

/// Columns of the circuit's unitary on n qubits.
std::vector<LogicalStateVector> unitary(const LogicalCircuit &c) {
    std::vector<LogicalStateVector> cols;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << c.n); ++k)
        cols.push_back(simulate_logical(c, LogicalStateVector::basis(c.n, k)));
    return cols;
}

double max_diff(const std::vector<LogicalStateVector> &a,
                const std::vector<LogicalStateVector> &b) {
    double d = 0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        for (std::size_t r = 0; r < a[c].dim(); ++r)
            d = std::max(d, std::abs(a[c][r] - b[c][r]));
    }
    return d;
}

} // namespace

TEST_CASE("Oracle basics", "[oracle]") {
    std::mt19937_64 rng(5);
    const auto psi = random_logical_state(4, rng);
    const auto same = simulate_logical(LogicalCircuit(4), psi);
    CHECK(same.amplitudes() == psi.amplitudes());

    const auto x1 = simulate_logical(LogicalCircuit(4, {LogicalGate::x(1)}),
                                     LogicalStateVector::basis(4, 0));
    CHECK(x1[1] == cplx{1.0, 0.0});

    // |e,g,e,g> is index 0b0101.
    const auto t = simulate_logical(LogicalCircuit(4, {LogicalGate::toffoli(1, 3, 2)}),
                                    LogicalStateVector::basis(4, 0b0101));
    CHECK(t[0b0111] == cplx{1.0, 0.0});

    CHECK_THROWS_AS(simulate_logical(LogicalCircuit(3), psi), InvalidArgument);
}

TEST_CASE("Global-phase comparison", "[oracle]") {
    std::mt19937_64 rng(6);
    const auto psi = random_logical_state(3, rng);
    auto rotated = psi;
    for (auto &a : rotated.amplitudes())
        a *= std::polar(1.0, 0.7);
    const auto cmp = compare_up_to_global_phase(psi, rotated);
    CHECK(cmp.fidelity == Approx(1.0).margin(1e-12));
    CHECK(cmp.phase == Approx(0.7).margin(1e-12));

    CHECK(compare_up_to_global_phase(LogicalStateVector::basis(3, 1),
                                     LogicalStateVector::basis(3, 2))
              .fidelity == 0.0);

    auto near = psi;
    near[3] += 1e-3;
    normalize(near);
    cplx ip{};
    for (std::size_t k = 0; k < psi.dim(); ++k)
        ip += std::conj(psi[k]) * near[k];
    CHECK(std::abs(compare_up_to_global_phase(psi, near).fidelity - std::norm(ip)) <
          1e-12);
}

TEST_CASE("Oracle gates are unitary", "[oracle][property]") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        const auto c = random_circuit(4, 6, rng);
        const auto out = simulate_logical(c, random_logical_state(4, rng));
        CHECK(norm(out) == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("Gate identities hold as matrices", "[oracle][property]") {
    using G = LogicalGate;
    SECTION("Toffoli is symmetric in its controls") {
        CHECK(max_diff(unitary(LogicalCircuit(3, {G::toffoli(1, 2, 3)})),
                       unitary(LogicalCircuit(3, {G::toffoli(2, 1, 3)}))) < 1e-12);
    }
    SECTION("CNOT from Toffoli and a spare flip") {
        // T_{a,b->c} X_b T_{a,b->c} X_b = CNOT_{a->c}.
        CHECK(max_diff(unitary(LogicalCircuit(3, {G::x(2), G::toffoli(1, 2, 3),
                                                  G::x(2), G::toffoli(1, 2, 3)})),
                       unitary(LogicalCircuit(3, {G::cnot(1, 3)}))) < 1e-12);
    }
    SECTION("reversed CNOT by Hadamards") {
        CHECK(max_diff(unitary(LogicalCircuit(2, {G::h(1), G::h(2), G::cnot(1, 2),
                                                  G::h(1), G::h(2)})),
                       unitary(LogicalCircuit(2, {G::cnot(2, 1)}))) < 1e-12);
    }
    SECTION("swap from three CNOTs") {
        CHECK(max_diff(unitary(LogicalCircuit(2, {G::cnot(1, 2), G::cnot(2, 1),
                                                  G::cnot(1, 2)})),
                       unitary(LogicalCircuit(2, {G::swap(1, 2)}))) < 1e-12);
    }
    SECTION("swap through a third qubit") {
        CHECK(max_diff(unitary(LogicalCircuit(3, {G::swap(1, 2), G::swap(2, 3),
                                                  G::swap(1, 2)})),
                       unitary(LogicalCircuit(3, {G::swap(1, 3)}))) < 1e-12);
    }
    SECTION("CZ from CNOT") {
        CHECK(max_diff(unitary(LogicalCircuit(2, {G::h(2), G::cnot(1, 2), G::h(2)})),
                       unitary(LogicalCircuit(2, {G::cz(1, 2)}))) < 1e-12);
    }
    SECTION("rotations match Paulis up to -i") {
        const double pi = std::numbers::pi;
        const auto rx = unitary(LogicalCircuit(1, {G::r(1, pi, axis_x)}));
        const auto x = unitary(LogicalCircuit(1, {G::x(1)}));
        const auto rh = unitary(LogicalCircuit(1, {G::r(1, pi, axis_h)}));
        const auto h = unitary(LogicalCircuit(1, {G::h(1)}));
        for (std::size_t c = 0; c < 2; ++c) {
            for (std::size_t r = 0; r < 2; ++r) {
                CHECK(std::abs(rx[c][r] - cplx{0, -1} * x[c][r]) < 1e-12);
                CHECK(std::abs(rh[c][r] - cplx{0, -1} * h[c][r]) < 1e-12);
            }
        }
    }
}
