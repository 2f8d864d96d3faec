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
 * Reference simulator for logical circuits. Gate matrices are assembled
 * here from Pauli matrices; nothing in this header touches the device,
 * pulse or compiler code.
 */
#pragma once

#include "conveyor/circuit.hpp"
#include "conveyor/error.hpp"
#include "conveyor/state.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace conveyor::oracle {

using Matrix2 = std::array<std::array<cplx, 2>, 2>;

inline constexpr cplx I{0.0, 1.0};

inline Matrix2 identity2() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
inline Matrix2 pauli_x() { return {{{0.0, 1.0}, {1.0, 0.0}}}; }
inline Matrix2 pauli_y() { return {{{0.0, -I}, {I, 0.0}}}; }
inline Matrix2 pauli_z() { return {{{1.0, 0.0}, {0.0, -1.0}}}; }
inline Matrix2 hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    return {{{r, r}, {r, -r}}};
}

/// cos(theta/2) 1 - i sin(theta/2) (nx X + ny Y + nz Z).
inline Matrix2 rotation(double theta, const Axis &n) {
    const Matrix2 id = identity2();
    const Matrix2 px = pauli_x();
    const Matrix2 py = pauli_y();
    const Matrix2 pz = pauli_z();
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    Matrix2 out{};
    for (int r = 0; r < 2; ++r) {
        for (int col = 0; col < 2; ++col) {
            const cplx gen = n.x * px[r][col] + n.y * py[r][col] + n.z * pz[r][col];
            out[r][col] = c * id[r][col] - I * s * gen;
        }
    }
    return out;
}

/// Single-qubit matrix on logical qubit j (1-based).
inline void apply_1q(LogicalStateVector &psi, int j, const Matrix2 &m) {
    const std::size_t bit = std::size_t{1} << (j - 1);
    std::vector<cplx> out(psi.dim());
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        const int row = (k & bit) ? 1 : 0;
        const std::size_t k0 = k & ~bit;
        const std::size_t k1 = k | bit;
        out[k] = m[row][0] * psi[k0] + m[row][1] * psi[k1];
    }
    psi.amplitudes() = std::move(out);
}

/// Basis permutation: |k> -> |f(k)>.
template <class F> void permute(LogicalStateVector &psi, F f) {
    std::vector<cplx> out(psi.dim());
    for (std::size_t k = 0; k < psi.dim(); ++k)
        out[f(k)] += psi[k];
    psi.amplitudes() = std::move(out);
}

inline void apply_gate(LogicalStateVector &psi, const LogicalGate &g) {
    validate_gate(g, psi.n());
    auto bit = [](int j) { return std::size_t{1} << (j - 1); };
    switch (g.kind) {
    case GateKind::R:
        apply_1q(psi, g.q[0], rotation(g.theta, g.axis));
        break;
    case GateKind::X:
        apply_1q(psi, g.q[0], pauli_x());
        break;
    case GateKind::Z:
        apply_1q(psi, g.q[0], pauli_z());
        break;
    case GateKind::H:
        apply_1q(psi, g.q[0], hadamard());
        break;
    case GateKind::CNOT: {
        const auto a = bit(g.q[0]);
        const auto b = bit(g.q[1]);
        permute(psi, [a, b](std::size_t k) { return (k & a) ? k ^ b : k; });
        break;
    }
    case GateKind::CZ: {
        const auto both = bit(g.q[0]) | bit(g.q[1]);
        for (std::size_t k = 0; k < psi.dim(); ++k) {
            if ((k & both) == both)
                psi[k] = -psi[k];
        }
        break;
    }
    case GateKind::SWAP: {
        const auto a = bit(g.q[0]);
        const auto b = bit(g.q[1]);
        permute(psi, [a, b](std::size_t k) {
            const bool ka = (k & a) != 0;
            const bool kb = (k & b) != 0;
            if (ka == kb)
                return k;
            return k ^ a ^ b;
        });
        break;
    }
    case GateKind::TOFFOLI: {
        const auto ctrl = bit(g.q[0]) | bit(g.q[1]);
        const auto t = bit(g.q[2]);
        permute(psi, [ctrl, t](std::size_t k) {
            return (k & ctrl) == ctrl ? k ^ t : k;
        });
        break;
    }
    }
}

inline LogicalStateVector simulate_logical(const LogicalCircuit &c,
                                           LogicalStateVector psi) {
    if (c.n != psi.n())
        throw InvalidArgument("circuit acts on " + std::to_string(c.n) +
                              " qubits, state has " + std::to_string(psi.n()));
    for (const auto &g : c.gates)
        apply_gate(psi, g);
    return psi;
}

struct Comparison {
    double fidelity{0}; ///< |<psi1|psi2>|^2
    double phase{0};    ///< arg <psi1|psi2>
};

inline Comparison compare_up_to_global_phase(const LogicalStateVector &a,
                                             const LogicalStateVector &b) {
    if (a.n() != b.n())
        throw InvalidArgument("logical state dimension mismatch");
    cplx ip{};
    for (std::size_t k = 0; k < a.dim(); ++k)
        ip += std::conj(a[k]) * b[k];
    return {std::norm(ip), std::arg(ip)};
}

} // namespace conveyor::oracle
