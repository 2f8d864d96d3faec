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
 * Lowering of logical circuits to global-pulse schedules.
 *
 * Positions are IC-site numbers 1..N. The only addressable operations are a
 * rotation of whatever sits at Q_2 and the Toffoli with Q_1, Q_3 as controls
 * and Q_2 as target; everything else is built by moving content around the
 * loop with exchange sequences.
 */
#pragma once

#include "conveyor/circuit.hpp"
#include "conveyor/error.hpp"
#include "conveyor/pulses.hpp"
#include "conveyor/state.hpp"
#include "conveyor/topology.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numbers>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace conveyor {

// ---------------------------------------------------------------------------
// Placement bookkeeping.

/**
 * Where content starting at position j (1-based, index j-1) sits after ell
 * exchange sequences that begin in `start`.
 */
inline std::vector<int> permutation_after(int ell, Phase start, int n) {
    if (ell < 0)
        throw InvalidArgument("permutation_after: negative step count");
    if (n < 2 || n % 2 != 0)
        throw InvalidArgument("permutation_after: N must be even");
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        const bool odd = j % 2 == 1;
        const bool forward = (start == Phase::FP) == odd;
        const int shift = forward ? ell % n : n - ell % n;
        pos[static_cast<std::size_t>(j - 1)] = (j - 1 + shift) % n + 1;
    }
    return pos;
}

/// Smallest ell in [0, N-1] that carries position j to Q_2.
inline int route_to_Q2(int j, Phase phase, int n) {
    if (j < 1 || j > n)
        throw InvalidArgument("route_to_Q2: position out of range");
    for (int ell = 0; ell < n; ++ell) {
        if (permutation_after(ell, phase, n)[static_cast<std::size_t>(j - 1)] == 2)
            return ell;
    }
    throw InvalidArgument("route_to_Q2: unreachable position");
}

struct RoutingState {
    /// placement[j-1] is the IC position currently holding logical qubit j.
    std::vector<int> placement;
    Phase phase{Phase::FP};
    std::size_t pulse_count{0};

    static RoutingState identity(int n, Phase start = Phase::FP) {
        RoutingState r;
        r.placement.resize(static_cast<std::size_t>(n));
        for (int j = 1; j <= n; ++j)
            r.placement[static_cast<std::size_t>(j - 1)] = j;
        r.phase = start;
        return r;
    }

    [[nodiscard]] int n() const noexcept {
        return static_cast<int>(placement.size());
    }
    [[nodiscard]] int position_of(int logical) const {
        return placement.at(static_cast<std::size_t>(logical - 1));
    }
    [[nodiscard]] int logical_at(int position) const {
        for (std::size_t j = 0; j < placement.size(); ++j) {
            if (placement[j] == position)
                return static_cast<int>(j) + 1;
        }
        throw InvalidArgument("no logical qubit at position " +
                              std::to_string(position));
    }
};

enum class Move { EXC, EXC_INV, SWAP_Q1Q2, SWAP_Q2Q3, SWAP_Q1Q3 };

inline std::string_view to_string(Move m) {
    switch (m) {
    case Move::EXC:
        return "EXC";
    case Move::EXC_INV:
        return "EXC_INV";
    case Move::SWAP_Q1Q2:
        return "SWAP_Q1Q2";
    case Move::SWAP_Q2Q3:
        return "SWAP_Q2Q3";
    case Move::SWAP_Q1Q3:
        return "SWAP_Q1Q3";
    }
    return "?";
}

inline constexpr std::array<Move, 5> all_moves{
    Move::EXC, Move::EXC_INV, Move::SWAP_Q1Q2, Move::SWAP_Q2Q3,
    Move::SWAP_Q1Q3};

/// New position of content at `p`, and the new phase, after one move.
inline int move_position(Move m, int p, Phase phase, int n) {
    auto transpose = [p](int x, int y) { return p == x ? y : p == y ? x : p; };
    switch (m) {
    case Move::EXC:
        return permutation_after(1, phase, n)[static_cast<std::size_t>(p - 1)];
    case Move::EXC_INV:
        // One exchange step is an involution on positions, so the inverse
        // from `phase` is the forward step from the other phase.
        return permutation_after(1, flip(phase), n)[static_cast<std::size_t>(p - 1)];
    case Move::SWAP_Q1Q2:
        return transpose(1, 2);
    case Move::SWAP_Q2Q3:
        return transpose(2, 3);
    case Move::SWAP_Q1Q3:
        return transpose(1, 3);
    }
    return p;
}

inline Phase move_phase(Move m, Phase phase) {
    return m == Move::EXC || m == Move::EXC_INV ? flip(phase) : phase;
}

/// Updates placement and phase only; pulse emission is separate.
inline void apply_move(RoutingState &r, Move m) {
    const int n = r.n();
    for (auto &p : r.placement)
        p = move_position(m, p, r.phase, n);
    r.phase = move_phase(m, r.phase);
}

/**
 * Shortest move sequence that brings logical a to Q_1, b to Q_3 and c to
 * Q_2. Moves are tried in declaration order, so ties resolve the same way
 * on every run.
 */
inline std::vector<Move> bfs_route(int a, int b, int c,
                                   const RoutingState &routing) {
    const int n = routing.n();
    if (n < 3)
        throw InvalidArgument("bfs_route needs at least 3 positions");
    for (int q : {a, b, c}) {
        if (q < 1 || q > n)
            throw InvalidArgument("bfs_route: logical qubit out of range");
    }
    if (a == b || b == c || a == c)
        throw InvalidArgument("bfs_route: targets must be distinct");

    struct Node {
        int pa, pb, pc;
        Phase phase;
        auto operator<=>(const Node &) const = default;
    };
    const Node start{routing.position_of(a), routing.position_of(b),
                     routing.position_of(c), routing.phase};
    auto done = [](const Node &s) { return s.pa == 1 && s.pb == 3 && s.pc == 2; };
    if (done(start))
        return {};

    std::map<Node, std::pair<Node, Move>> parent;
    std::queue<Node> frontier;
    frontier.push(start);
    parent.emplace(start, std::pair{start, Move::EXC});
    while (!frontier.empty()) {
        const Node cur = frontier.front();
        frontier.pop();
        for (Move m : all_moves) {
            const Node next{move_position(m, cur.pa, cur.phase, n),
                            move_position(m, cur.pb, cur.phase, n),
                            move_position(m, cur.pc, cur.phase, n),
                            move_phase(m, cur.phase)};
            if (parent.contains(next))
                continue;
            parent.emplace(next, std::pair{cur, m});
            if (done(next)) {
                std::vector<Move> path;
                Node at = next;
                while (!(at == start)) {
                    const auto &[prev, mv] = parent.at(at);
                    path.push_back(mv);
                    at = prev;
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            frontier.push(next);
        }
    }
    throw InvalidArgument("bfs_route: target placement unreachable");
}

// ---------------------------------------------------------------------------
// Pulse-level macros. Every function appends to `out` and keeps `r` in sync.

namespace detail {

inline void emit_leaf(PulseSchedule &out, RoutingState &r,
                      const PulseSchedule &leaf, std::string_view name) {
    out.append(leaf, name);
    r.pulse_count += leaf.size();
}

inline void emit_exchange(PulseSchedule &out, RoutingState &r) {
    static const PulseSchedule exc = seq_exchange();
    emit_leaf(out, r, exc, "EXC");
    apply_move(r, Move::EXC);
}

inline void emit_exchange_inverse(PulseSchedule &out, RoutingState &r) {
    static const PulseSchedule inv = seq_exchange_inverse();
    emit_leaf(out, r, inv, "EXC_INV");
    apply_move(r, Move::EXC_INV);
}

inline void emit_toffoli(PulseSchedule &out, RoutingState &r) {
    static const PulseSchedule t = seq_toffoli();
    emit_leaf(out, r, t, "TOFFOLI");
}

} // namespace detail

/// Rotation of whatever sits at IC position p; placement is unchanged.
inline void emit_rotation_at(PulseSchedule &out, RoutingState &r, int p,
                             double theta, const Axis &n) {
    const int ell = route_to_Q2(p, r.phase, r.n());
    for (int i = 0; i < ell; ++i)
        detail::emit_exchange(out, r);
    detail::emit_leaf(out, r, seq_single_qubit_at_Q2(theta, n), "ROT_Q2");
    for (int i = 0; i < ell; ++i)
        detail::emit_exchange_inverse(out, r);
}

inline void emit_x_at(PulseSchedule &out, RoutingState &r, int p) {
    emit_rotation_at(out, r, p, std::numbers::pi, axis_x);
}

inline void emit_h_at(PulseSchedule &out, RoutingState &r, int p) {
    emit_rotation_at(out, r, p, std::numbers::pi, axis_h);
}

/// CNOT with control at Q_1 or Q_3 and target at Q_2.
inline void emit_site_cnot_to_q2(PulseSchedule &out, RoutingState &r,
                                 int control) {
    if (control != 1 && control != 3)
        throw InvalidArgument("site CNOT control must be Q_1 or Q_3");
    const int spare = control == 1 ? 3 : 1;
    detail::emit_toffoli(out, r);
    emit_x_at(out, r, spare);
    detail::emit_toffoli(out, r);
    emit_x_at(out, r, spare);
}

/// CNOT with control at Q_2 and target at Q_1 or Q_3, by Hadamard
/// conjugation of the reversed gate.
inline void emit_site_cnot_from_q2(PulseSchedule &out, RoutingState &r,
                                   int target) {
    emit_h_at(out, r, target);
    emit_h_at(out, r, 2);
    emit_site_cnot_to_q2(out, r, target);
    emit_h_at(out, r, target);
    emit_h_at(out, r, 2);
}

/// Exchanges the contents of Q_p and Q_2 (p = 1 or 3).
inline void emit_site_swap_with_q2(PulseSchedule &out, RoutingState &r,
                                   int p) {
    emit_site_cnot_to_q2(out, r, p);
    emit_site_cnot_from_q2(out, r, p);
    emit_site_cnot_to_q2(out, r, p);
}

/// Emits the pulses for one routing move and updates the placement.
inline void emit_move(PulseSchedule &out, RoutingState &r, Move m) {
    switch (m) {
    case Move::EXC:
        detail::emit_exchange(out, r);
        return;
    case Move::EXC_INV:
        detail::emit_exchange_inverse(out, r);
        return;
    case Move::SWAP_Q1Q2:
        emit_site_swap_with_q2(out, r, 1);
        break;
    case Move::SWAP_Q2Q3:
        emit_site_swap_with_q2(out, r, 3);
        break;
    case Move::SWAP_Q1Q3:
        emit_site_swap_with_q2(out, r, 1);
        emit_site_swap_with_q2(out, r, 3);
        emit_site_swap_with_q2(out, r, 1);
        break;
    }
    apply_move(r, m);
}

inline void emit_route(PulseSchedule &out, RoutingState &r, int a, int b,
                       int c) {
    for (Move m : bfs_route(a, b, c, r))
        emit_move(out, r, m);
}

namespace detail {

inline void check_logical(const RoutingState &r, std::initializer_list<int> qs) {
    for (int q : qs) {
        if (q < 1 || q > r.n())
            throw InvalidArgument("logical qubit " + std::to_string(q) +
                                  " out of range");
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Gate macros on logical qubits.

/**
 * R(theta, n) on logical qubit j: rotate it into Q_2, pulse the crossed B
 * qubit, rotate back. Placement and phase are unchanged.
 */
inline PulseSchedule macro_single_qubit(int j, double theta, const Axis &n,
                                        RoutingState &r) {
    detail::check_logical(r, {j});
    PulseSchedule out;
    emit_rotation_at(out, r, r.position_of(j), theta, n);
    return out;
}

/// CNOT from control a to target c, through the Toffoli with a spare qubit.
inline PulseSchedule macro_cnot(int a, int c, RoutingState &r) {
    detail::check_logical(r, {a, c});
    if (a == c)
        throw InvalidArgument("macro_cnot: control equals target");
    int b = 1;
    while (b == a || b == c)
        ++b;
    PulseSchedule out;
    emit_route(out, r, a, b, c);
    detail::emit_toffoli(out, r);
    emit_x_at(out, r, r.position_of(b));
    detail::emit_toffoli(out, r);
    emit_x_at(out, r, r.position_of(b));
    return out;
}

/// CNOT(a->c) CNOT(c->a) CNOT(a->c), with the middle gate obtained by
/// Hadamard conjugation.
inline PulseSchedule macro_swap(int a, int c, RoutingState &r) {
    detail::check_logical(r, {a, c});
    if (a == c)
        throw InvalidArgument("macro_swap: operands must differ");
    PulseSchedule out;
    out.append(macro_cnot(a, c, r));
    out.append(macro_single_qubit(a, std::numbers::pi, axis_h, r));
    out.append(macro_single_qubit(c, std::numbers::pi, axis_h, r));
    out.append(macro_cnot(a, c, r));
    out.append(macro_single_qubit(a, std::numbers::pi, axis_h, r));
    out.append(macro_single_qubit(c, std::numbers::pi, axis_h, r));
    out.append(macro_cnot(a, c, r));
    return out;
}

/// swap(a,c) = swap(a,via) swap(via,c) swap(a,via).
inline PulseSchedule macro_swap_via(int a, int c, int via, RoutingState &r) {
    detail::check_logical(r, {a, c, via});
    if (via == a || via == c || a == c)
        throw InvalidArgument("macro_swap_via: operands must be distinct");
    PulseSchedule out;
    out.append(macro_swap(a, via, r));
    out.append(macro_swap(via, c, r));
    out.append(macro_swap(a, via, r));
    return out;
}

/// Toffoli with controls a, b and target c.
inline PulseSchedule macro_toffoli(int a, int b, int c, RoutingState &r) {
    detail::check_logical(r, {a, b, c});
    if (a == b || b == c || a == c)
        throw InvalidArgument("macro_toffoli: operands must be distinct");
    PulseSchedule out;
    emit_route(out, r, a, b, c);
    detail::emit_toffoli(out, r);
    return out;
}

inline PulseSchedule lower_gate(const LogicalGate &g, RoutingState &r) {
    validate_gate(g, r.n());
    const int a = g.q[0];
    const int b = g.q[1];
    switch (g.kind) {
    case GateKind::R:
        return macro_single_qubit(a, g.theta, g.axis, r);
    case GateKind::X:
        return macro_single_qubit(a, std::numbers::pi, axis_x, r);
    case GateKind::Z:
        return macro_single_qubit(a, std::numbers::pi, axis_z, r);
    case GateKind::H:
        return macro_single_qubit(a, std::numbers::pi, axis_h, r);
    case GateKind::CNOT:
        return macro_cnot(a, b, r);
    case GateKind::CZ: {
        PulseSchedule out;
        out.append(macro_single_qubit(b, std::numbers::pi, axis_h, r));
        out.append(macro_cnot(a, b, r));
        out.append(macro_single_qubit(b, std::numbers::pi, axis_h, r));
        return out;
    }
    case GateKind::SWAP:
        return macro_swap(a, b, r);
    case GateKind::TOFFOLI:
        return macro_toffoli(a, b, g.q[2], r);
    }
    return {};
}

struct CompileResult {
    PulseSchedule schedule;
    std::vector<int> final_placement; ///< logical j sits at final_placement[j-1]
    Phase final_phase{Phase::FP};
    std::size_t pulse_count{0};
};

/**
 * Lowers the circuit gate by gate, starting from the identity placement in
 * `start`. Each gate is wrapped in a level-0 annotation named after its text
 * form.
 */
inline CompileResult compile(const LogicalCircuit &circuit,
                             const DeviceTopology &topo,
                             Phase start = Phase::FP) {
    if (topo.variant() != Variant::baseline)
        throw InvalidArgument("compilation targets the baseline design only");
    if (circuit.n != topo.n_logical())
        throw InvalidArgument("circuit has " + std::to_string(circuit.n) +
                              " qubits, device carries " +
                              std::to_string(topo.n_logical()));
    RoutingState r = RoutingState::identity(circuit.n, start);
    CompileResult out;
    for (const auto &g : circuit.gates) {
        std::ostringstream name;
        write_gate(name, g);
        std::string label = name.str();
        label.pop_back();
        out.schedule.append(lower_gate(g, r), label, 0);
    }
    out.final_placement = r.placement;
    out.final_phase = r.phase;
    out.pulse_count = r.pulse_count;
    return out;
}

/// Schedule text followed by the placement trailer.
inline void write_compiled(std::ostream &os, const CompileResult &c) {
    write_schedule(os, c.schedule);
    os << "# final_placement: ";
    for (std::size_t j = 0; j < c.final_placement.size(); ++j)
        os << (j ? "," : "") << c.final_placement[j];
    os << "\n# final_phase: " << to_string(c.final_phase) << "\n";
    os << "# pulses: " << c.pulse_count << "\n";
}

} // namespace conveyor
