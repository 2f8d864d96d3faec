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
 * Logical circuits on N computational qubits and their text format.
 */
#pragma once

#include "conveyor/error.hpp"
#include "conveyor/pulses.hpp"
#include "conveyor/state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace conveyor {

enum class GateKind { R, X, Z, H, CNOT, CZ, SWAP, TOFFOLI };

inline std::string_view to_string(GateKind k) {
    switch (k) {
    case GateKind::R:
        return "R";
    case GateKind::X:
        return "X";
    case GateKind::Z:
        return "Z";
    case GateKind::H:
        return "H";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::CZ:
        return "CZ";
    case GateKind::SWAP:
        return "SWAP";
    case GateKind::TOFFOLI:
        return "TOFFOLI";
    }
    return "?";
}

inline int arity(GateKind k) {
    switch (k) {
    case GateKind::R:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::H:
        return 1;
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP:
        return 2;
    case GateKind::TOFFOLI:
        return 3;
    }
    return 0;
}

/**
 * One logical gate. Operands are 1-based. CNOT is (control a, target b);
 * TOFFOLI is (controls a, b; target c).
 */
struct LogicalGate {
    GateKind kind{GateKind::X};
    std::array<int, 3> q{0, 0, 0};
    double theta{0.0};
    Axis axis{axis_x};

    static LogicalGate r(int j, double theta, Axis n) {
        return {GateKind::R, {j, 0, 0}, theta, n};
    }
    static LogicalGate x(int j) { return {GateKind::X, {j, 0, 0}}; }
    static LogicalGate z(int j) { return {GateKind::Z, {j, 0, 0}}; }
    static LogicalGate h(int j) { return {GateKind::H, {j, 0, 0}}; }
    static LogicalGate cnot(int a, int b) { return {GateKind::CNOT, {a, b, 0}}; }
    static LogicalGate cz(int a, int b) { return {GateKind::CZ, {a, b, 0}}; }
    static LogicalGate swap(int a, int b) { return {GateKind::SWAP, {a, b, 0}}; }
    static LogicalGate toffoli(int a, int b, int c) {
        return {GateKind::TOFFOLI, {a, b, c}};
    }

    friend bool operator==(const LogicalGate &, const LogicalGate &) = default;
};

inline void validate_gate(const LogicalGate &g, int n) {
    const int k = arity(g.kind);
    for (int i = 0; i < k; ++i) {
        if (g.q[i] < 1 || g.q[i] > n)
            throw InvalidArgument(std::string(to_string(g.kind)) +
                                  ": operand " + std::to_string(g.q[i]) +
                                  " out of range 1.." + std::to_string(n));
        for (int j = 0; j < i; ++j) {
            if (g.q[i] == g.q[j])
                throw InvalidArgument(std::string(to_string(g.kind)) +
                                      ": repeated operand " +
                                      std::to_string(g.q[i]));
        }
    }
    if (g.kind == GateKind::R) {
        require_unit_axis(g.axis);
        if (!std::isfinite(g.theta))
            throw InvalidArgument("R: non-finite angle");
    }
}

struct LogicalCircuit {
    int n{0};
    std::vector<LogicalGate> gates;

    LogicalCircuit() = default;
    explicit LogicalCircuit(int n_qubits) : n(n_qubits) {}
    LogicalCircuit(int n_qubits, std::vector<LogicalGate> g)
        : n(n_qubits), gates(std::move(g)) {
        for (const auto &gate : gates)
            validate_gate(gate, n);
    }

    void add(const LogicalGate &g) {
        validate_gate(g, n);
        gates.push_back(g);
    }

    friend bool operator==(const LogicalCircuit &,
                           const LogicalCircuit &) = default;
};

// ---------------------------------------------------------------------------
// Text format.

inline LogicalCircuit parse_circuit(std::istream &is, int n) {
    LogicalCircuit c(n);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string_view line = detail::trim(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = detail::trim(line.substr(0, hash));
        if (line.empty())
            continue;
        const auto tokens = detail::split_ws(line);
        LogicalGate g;
        const std::string_view name = tokens[0];
        if (name == "R")
            g.kind = GateKind::R;
        else if (name == "X")
            g.kind = GateKind::X;
        else if (name == "Z")
            g.kind = GateKind::Z;
        else if (name == "H")
            g.kind = GateKind::H;
        else if (name == "CNOT")
            g.kind = GateKind::CNOT;
        else if (name == "CZ")
            g.kind = GateKind::CZ;
        else if (name == "SWAP")
            g.kind = GateKind::SWAP;
        else if (name == "TOFFOLI")
            g.kind = GateKind::TOFFOLI;
        else
            throw ParseError("unknown gate '" + std::string(name) + "'", lineno);

        const int k = arity(g.kind);
        const std::array<std::string_view, 3> keys =
            k == 1 ? std::array<std::string_view, 3>{"q", "", ""}
                   : std::array<std::string_view, 3>{"a", "b", "c"};
        std::array<bool, 3> seen{false, false, false};
        bool have_theta = false;
        bool have_axis = false;
        for (auto [key, value] :
             detail::key_values(std::span(tokens).subspan(1), lineno)) {
            bool matched = false;
            for (int i = 0; i < k; ++i) {
                if (key == keys[static_cast<std::size_t>(i)]) {
                    g.q[static_cast<std::size_t>(i)] =
                        detail::parse_int(value, lineno);
                    seen[static_cast<std::size_t>(i)] = true;
                    matched = true;
                }
            }
            if (matched)
                continue;
            if (g.kind == GateKind::R && key == "theta") {
                g.theta = detail::parse_double(value, lineno);
                have_theta = true;
            } else if (g.kind == GateKind::R && key == "axis") {
                g.axis = detail::parse_axis(value, lineno);
                have_axis = true;
            } else {
                throw ParseError("unexpected field '" + std::string(key) +
                                     "' for " + std::string(name),
                                 lineno);
            }
        }
        for (int i = 0; i < k; ++i) {
            if (!seen[static_cast<std::size_t>(i)])
                throw ParseError(std::string(name) + " is missing operand '" +
                                     std::string(keys[static_cast<std::size_t>(i)]) +
                                     "'",
                                 lineno);
        }
        if (g.kind == GateKind::R && (!have_theta || !have_axis))
            throw ParseError("R needs theta= and axis=", lineno);
        try {
            c.add(g);
        } catch (const InvalidArgument &e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return c;
}

inline LogicalCircuit parse_circuit(std::string_view text, int n) {
    std::istringstream is{std::string(text)};
    return parse_circuit(is, n);
}

inline void write_gate(std::ostream &os, const LogicalGate &g) {
    os << to_string(g.kind);
    switch (arity(g.kind)) {
    case 1:
        os << " q=" << g.q[0];
        break;
    case 2:
        os << " a=" << g.q[0] << " b=" << g.q[1];
        break;
    default:
        os << " a=" << g.q[0] << " b=" << g.q[1] << " c=" << g.q[2];
        break;
    }
    if (g.kind == GateKind::R) {
        os << " theta=";
        detail::write_double(os, g.theta);
        os << " axis=";
        detail::write_double(os, g.axis.x);
        os << ',';
        detail::write_double(os, g.axis.y);
        os << ',';
        detail::write_double(os, g.axis.z);
    }
    os << '\n';
}

inline void write_circuit(std::ostream &os, const LogicalCircuit &c) {
    for (const auto &g : c.gates)
        write_gate(os, g);
}

inline std::string circuit_to_string(const LogicalCircuit &c) {
    std::ostringstream os;
    write_circuit(os, c);
    return os.str();
}

// ---------------------------------------------------------------------------
// Random circuits.

/// `depth` gates drawn uniformly from the full gate set on n >= 3 qubits.
inline LogicalCircuit random_circuit(int n, int depth, std::mt19937_64 &rng) {
    if (n < 3)
        throw InvalidArgument("random_circuit needs n >= 3");
    LogicalCircuit c(n);
    std::uniform_int_distribution<int> kind_dist(0, 7);
    std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                                 std::numbers::pi);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto distinct = [&](int count) {
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            pool[static_cast<std::size_t>(i)] = i + 1;
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(static_cast<std::size_t>(count));
        return pool;
    };
    for (int d = 0; d < depth; ++d) {
        LogicalGate g;
        g.kind = static_cast<GateKind>(kind_dist(rng));
        const auto ops = distinct(arity(g.kind));
        for (std::size_t i = 0; i < ops.size(); ++i)
            g.q[i] = ops[i];
        if (g.kind == GateKind::R) {
            g.theta = angle(rng);
            Axis n_axis{gauss(rng), gauss(rng), gauss(rng)};
            const double len = n_axis.norm();
            g.axis = {n_axis.x / len, n_axis.y / len, n_axis.z / len};
        }
        c.add(g);
    }
    return c;
}

} // namespace conveyor
