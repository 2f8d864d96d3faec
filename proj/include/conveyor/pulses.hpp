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
 * Global pulse engine. A pulse rotates every qubit of one species class,
 * each conditioned on all of its ZZ neighbors being in |g>.
 */
#pragma once

#include "conveyor/error.hpp"
#include "conveyor/state.hpp"
#include "conveyor/topology.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace conveyor {

enum class TargetClass {
    A_regular,
    A_crossed,
    B_regular,
    B_crossed,
    B_all,
    C_regular,
    C_crossed,
    A_double_crossed,
    INIT_LINE
};

inline constexpr std::array<std::pair<TargetClass, std::string_view>, 9>
    target_class_names{{{TargetClass::A_regular, "A_regular"},
                        {TargetClass::A_crossed, "A_crossed"},
                        {TargetClass::B_regular, "B_regular"},
                        {TargetClass::B_crossed, "B_crossed"},
                        {TargetClass::B_all, "B_all"},
                        {TargetClass::C_regular, "C_regular"},
                        {TargetClass::C_crossed, "C_crossed"},
                        {TargetClass::A_double_crossed, "A_double_crossed"},
                        {TargetClass::INIT_LINE, "INIT_LINE"}}};

inline std::string_view to_string(TargetClass c) {
    for (auto [k, name] : target_class_names) {
        if (k == c)
            return name;
    }
    return "?";
}

inline TargetClass parse_target_class(std::string_view s) {
    for (auto [k, name] : target_class_names) {
        if (name == s)
            return k;
    }
    throw InvalidArgument("unknown target class '" + std::string(s) + "'");
}

struct GlobalPulse {
    TargetClass target{TargetClass::B_all};
    double theta{std::numbers::pi};
    Axis axis{axis_x};

    friend bool operator==(const GlobalPulse &, const GlobalPulse &) = default;
};

inline void validate_pulse(const GlobalPulse &p) {
    require_unit_axis(p.axis);
    if (!(std::abs(p.theta) <= 2 * std::numbers::pi + 1e-12))
        throw InvalidArgument("pulse angle outside [-2pi, 2pi]");
}

/// Names a contiguous run [begin, end) of pulses. Level 0 marks logical
/// gates, level 1 marks the macros inside them.
struct Annotation {
    std::string name;
    std::size_t begin{0};
    std::size_t end{0};
    int level{1};

    friend bool operator==(const Annotation &, const Annotation &) = default;
};

struct PulseSchedule {
    std::vector<GlobalPulse> pulses;
    std::vector<Annotation> annotations;

    [[nodiscard]] std::size_t size() const noexcept { return pulses.size(); }
    [[nodiscard]] bool empty() const noexcept { return pulses.empty(); }

    void push(const GlobalPulse &p) {
        validate_pulse(p);
        pulses.push_back(p);
    }

    /// Appends `other`, shifting its annotations, and optionally wraps the
    /// appended span in a new annotation.
    void append(const PulseSchedule &other, std::string_view name = {},
                int level = 1) {
        const std::size_t offset = pulses.size();
        pulses.insert(pulses.end(), other.pulses.begin(), other.pulses.end());
        if (!name.empty())
            annotations.push_back(
                {std::string(name), offset, pulses.size(), level});
        for (auto a : other.annotations) {
            a.begin += offset;
            a.end += offset;
            annotations.push_back(std::move(a));
        }
    }

    /// Repeats `other` `times` times, annotating each copy.
    void append_repeated(const PulseSchedule &other, int times,
                         std::string_view name = {}, int level = 1) {
        for (int i = 0; i < times; ++i)
            append(other, name, level);
    }

    friend bool operator==(const PulseSchedule &,
                           const PulseSchedule &) = default;
};

// ---------------------------------------------------------------------------
// Target classes.

/// Sites addressed by a class, in application order.
inline std::vector<int> target_sites(const DeviceTopology &topo,
                                     TargetClass c) {
    switch (c) {
    case TargetClass::A_regular:
        return topo.sites_of({Family::A, Crossing::regular});
    case TargetClass::A_crossed:
        return topo.sites_of({Family::A, Crossing::crossed});
    case TargetClass::B_regular:
        return topo.sites_of({Family::B, Crossing::regular});
    case TargetClass::B_crossed:
        return topo.sites_of({Family::B, Crossing::crossed});
    case TargetClass::B_all: {
        auto sites = topo.sites_of({Family::B, Crossing::regular});
        auto crossed = topo.sites_of({Family::B, Crossing::crossed});
        sites.insert(sites.end(), crossed.begin(), crossed.end());
        return sites;
    }
    case TargetClass::C_regular:
        return topo.sites_of({Family::C, Crossing::regular});
    case TargetClass::C_crossed:
        return topo.sites_of({Family::C, Crossing::crossed});
    case TargetClass::A_double_crossed:
        return topo.sites_of({Family::A, Crossing::double_crossed});
    case TargetClass::INIT_LINE:
        return topo.init_targets();
    }
    return {};
}

/**
 * Applies one global pulse. Every addressed site gets R(theta, n)
 * conditioned on all its neighbors in |g>; INIT_LINE rotations are
 * unconditioned.
 */
template <StateBackend S>
void apply_global_pulse(S &state, const DeviceTopology &topo,
                        const GlobalPulse &pulse) {
    validate_pulse(pulse);
    if (state.n_qubits() != topo.num_sites())
        throw InvalidArgument("state does not match the device size");
    if (pulse.target == TargetClass::INIT_LINE &&
        topo.variant() != Variant::baseline)
        throw InvalidArgument("INIT_LINE exists only on the baseline design");
    const auto sites = target_sites(topo, pulse.target);
    if (sites.empty())
        throw InvalidArgument("target class " +
                              std::string(to_string(pulse.target)) +
                              " is empty on this device");
    const Mat2 u = rotation_matrix(pulse.theta, pulse.axis);
    const bool conditioned = pulse.target != TargetClass::INIT_LINE;
    for (int site : sites)
        state.apply_controlled_mask(site,
                                    conditioned ? topo.neighbor_mask(site) : 0,
                                    u);
}

/// Called after an annotation's last pulse has been applied.
using BoundaryObserver = std::function<void(const Annotation &)>;

/**
 * Applies the schedule left to right. When `observer` is set it is invoked
 * once for every annotation, right after the annotation's last pulse.
 */
template <StateBackend S>
void apply_schedule(S &state, const DeviceTopology &topo,
                    const PulseSchedule &schedule,
                    const BoundaryObserver &observer = {}) {
    std::vector<std::vector<const Annotation *>> ends;
    if (observer) {
        ends.resize(schedule.size() + 1);
        for (const auto &a : schedule.annotations) {
            if (a.end <= schedule.size())
                ends[a.end].push_back(&a);
        }
        for (const auto *a : ends[0])
            observer(*a);
    }
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        apply_global_pulse(state, topo, schedule.pulses[i]);
        if (observer) {
            // Inner annotations first; they were appended after their parent.
            auto &here = ends[i + 1];
            for (auto it = here.rbegin(); it != here.rend(); ++it)
                observer(**it);
        }
    }
}

// ---------------------------------------------------------------------------
// Named sequences.

inline PulseSchedule seq_exchange() {
    PulseSchedule s;
    for (int i = 0; i < 4; ++i) {
        s.push({TargetClass::A_regular, std::numbers::pi, axis_x});
        s.push({TargetClass::B_all, std::numbers::pi, axis_x});
    }
    return s;
}

inline PulseSchedule seq_exchange_inverse() {
    PulseSchedule s;
    s.push({TargetClass::B_all, std::numbers::pi, axis_x});
    s.append(seq_exchange());
    s.push({TargetClass::B_all, std::numbers::pi, axis_x});
    return s;
}

inline PulseSchedule seq_ccz(const Axis &n = axis_x) {
    PulseSchedule s;
    s.push({TargetClass::A_crossed, 2 * std::numbers::pi, n});
    return s;
}

/// T_{13->2}: Toffoli with Q_1, Q_3 as controls and Q_2 as target, up to a
/// global phase.
inline PulseSchedule seq_toffoli() {
    PulseSchedule s;
    s.push({TargetClass::B_crossed, std::numbers::pi, axis_h});
    s.push({TargetClass::B_all, std::numbers::pi, axis_x});
    s.push({TargetClass::A_crossed, 2 * std::numbers::pi, axis_x});
    s.push({TargetClass::B_all, std::numbers::pi, axis_x});
    s.push({TargetClass::B_crossed, std::numbers::pi, axis_h});
    return s;
}

inline PulseSchedule seq_single_qubit_at_Q2(double theta, const Axis &n) {
    PulseSchedule s;
    s.push({TargetClass::B_crossed, theta, n});
    return s;
}

inline PulseSchedule seq_init() {
    PulseSchedule s;
    s.push({TargetClass::INIT_LINE, std::numbers::pi, axis_x});
    return s;
}

/// Same as seq_init, but rejects devices without an init line.
inline PulseSchedule seq_init(const DeviceTopology &topo) {
    if (topo.variant() != Variant::baseline || topo.init_targets().empty())
        throw InvalidArgument("device has no init line");
    return seq_init();
}

/// Looks up a macro by its schedule-file name.
inline PulseSchedule macro_by_name(std::string_view name) {
    if (name == "EXC")
        return seq_exchange();
    if (name == "EXC_INV")
        return seq_exchange_inverse();
    if (name == "CCZ")
        return seq_ccz();
    if (name == "TOFFOLI")
        return seq_toffoli();
    if (name == "INIT")
        return seq_init();
    throw InvalidArgument("unknown macro '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Schedule text format.

/// A parsed schedule file: the pulses plus the optional trailer written by
/// the compiler.
struct ScheduleFile {
    PulseSchedule schedule;
    std::optional<std::vector<int>> final_placement;
    std::optional<Phase> final_phase;
    std::optional<std::size_t> declared_pulses;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos
                                          ? std::string_view::npos
                                          : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
            ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t')
            ++j;
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline double parse_double(std::string_view s, std::size_t line) {
    std::string tmp(trim(s));
    try {
        std::size_t used = 0;
        const double v = std::stod(tmp, &used);
        if (used != tmp.size())
            throw std::invalid_argument("trailing");
        return v;
    } catch (const std::logic_error &) {
        throw ParseError("bad number '" + tmp + "'", line);
    }
}

inline int parse_int(std::string_view s, std::size_t line) {
    std::string tmp(trim(s));
    try {
        std::size_t used = 0;
        const int v = std::stoi(tmp, &used);
        if (used != tmp.size())
            throw std::invalid_argument("trailing");
        return v;
    } catch (const std::logic_error &) {
        throw ParseError("bad integer '" + tmp + "'", line);
    }
}

inline Axis parse_axis(std::string_view s, std::size_t line) {
    const auto parts = split(s, ',');
    if (parts.size() != 3)
        throw ParseError("axis needs three components", line);
    return {parse_double(parts[0], line), parse_double(parts[1], line),
            parse_double(parts[2], line)};
}

/// Splits `key=value` tokens; throws on anything else.
inline std::vector<std::pair<std::string_view, std::string_view>>
key_values(std::span<const std::string_view> tokens, std::size_t line) {
    std::vector<std::pair<std::string_view, std::string_view>> kv;
    for (auto t : tokens) {
        const auto eq = t.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw ParseError("expected key=value, got '" + std::string(t) + "'",
                             line);
        kv.emplace_back(t.substr(0, eq), t.substr(eq + 1));
    }
    return kv;
}

inline void write_double(std::ostream &os, double v) {
    std::ostringstream tmp;
    tmp << std::setprecision(17) << v;
    os << tmp.str();
}

} // namespace detail

inline ScheduleFile parse_schedule(std::istream &is) {
    ScheduleFile out;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string_view line = detail::trim(raw);
        if (line.empty())
            continue;
        if (line.front() == '#') {
            const auto body = detail::trim(line.substr(1));
            const auto colon = body.find(':');
            if (colon == std::string_view::npos)
                continue;
            const auto key = detail::trim(body.substr(0, colon));
            const auto value = detail::trim(body.substr(colon + 1));
            if (key == "final_placement") {
                std::vector<int> perm;
                if (!value.empty()) {
                    for (auto v : detail::split(value, ','))
                        perm.push_back(detail::parse_int(v, lineno));
                }
                out.final_placement = std::move(perm);
            } else if (key == "final_phase") {
                try {
                    out.final_phase = parse_phase(value);
                } catch (const InvalidArgument &e) {
                    throw ParseError(e.what(), lineno);
                }
            } else if (key == "pulses") {
                out.declared_pulses = static_cast<std::size_t>(
                    detail::parse_int(value, lineno));
            }
            continue;
        }
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = detail::trim(line.substr(0, hash));
        const auto tokens = detail::split_ws(line);
        if (tokens[0] == "MACRO") {
            if (tokens.size() != 2)
                throw ParseError("MACRO takes exactly one name", lineno);
            try {
                out.schedule.append(macro_by_name(tokens[1]), tokens[1]);
            } catch (const InvalidArgument &e) {
                throw ParseError(e.what(), lineno);
            }
        } else if (tokens[0] == "PULSE") {
            if (tokens.size() < 2)
                throw ParseError("PULSE needs a target class", lineno);
            GlobalPulse p;
            try {
                p.target = parse_target_class(tokens[1]);
            } catch (const InvalidArgument &e) {
                throw ParseError(e.what(), lineno);
            }
            bool have_theta = false;
            bool have_axis = false;
            for (auto [k, v] : detail::key_values(
                     std::span(tokens).subspan(2), lineno)) {
                if (k == "theta") {
                    p.theta = detail::parse_double(v, lineno);
                    have_theta = true;
                } else if (k == "axis") {
                    p.axis = detail::parse_axis(v, lineno);
                    have_axis = true;
                } else {
                    throw ParseError("unknown pulse field '" + std::string(k) +
                                         "'",
                                     lineno);
                }
            }
            if (!have_theta || !have_axis)
                throw ParseError("PULSE needs theta= and axis=", lineno);
            try {
                out.schedule.push(p);
            } catch (const InvalidArgument &e) {
                throw ParseError(e.what(), lineno);
            }
        } else {
            throw ParseError("unknown directive '" + std::string(tokens[0]) +
                                 "'",
                             lineno);
        }
    }
    return out;
}

inline ScheduleFile parse_schedule(std::string_view text) {
    std::istringstream is{std::string(text)};
    return parse_schedule(is);
}

inline void write_pulse(std::ostream &os, const GlobalPulse &p) {
    os << "PULSE " << to_string(p.target) << " theta=";
    detail::write_double(os, p.theta);
    os << " axis=";
    detail::write_double(os, p.axis.x);
    os << ',';
    detail::write_double(os, p.axis.y);
    os << ',';
    detail::write_double(os, p.axis.z);
    os << '\n';
}

/// Pulses only, one per line; annotations are not written.
inline void write_schedule(std::ostream &os, const PulseSchedule &s) {
    for (const auto &p : s.pulses)
        write_pulse(os, p);
}

inline std::string schedule_to_string(const PulseSchedule &s) {
    std::ostringstream os;
    write_schedule(os, s);
    return os.str();
}

} // namespace conveyor
