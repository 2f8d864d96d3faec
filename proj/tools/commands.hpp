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

// Subcommand bodies of the conveyor CLI. Each returns the process exit
// status (0 ok, 1 threshold not met, 2 bad input) and fills a RunReport.
#pragma once

#include "conveyor/conveyor.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace conveyor::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_threshold = 1;
inline constexpr int exit_input = 2;

inline std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

/// Machine-readable summary emitted as one JSON line on stderr.
struct RunReport {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json fields = nlohmann::json::object();
    int exit_status{0};
    double wall_time_s{0};

    [[nodiscard]] std::string to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["inputs"] = inputs;
        for (auto it = fields.begin(); it != fields.end(); ++it)
            j[it.key()] = it.value();
        j["wall_time_s"] = wall_time_s;
        j["exit_status"] = exit_status;
        return j.dump();
    }
};

/// Reads a whole file and records its digest under `role`.
inline std::string read_input(const std::string &path, const std::string &role,
                              RunReport &report) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidArgument("cannot open " + role + " file '" + path + "'");
    std::string data((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    report.inputs[role] = {{"path", path}, {"fnv1a", fnv1a_hex(data)}};
    return data;
}

/// Writes to `path`, or to `fallback` when path is empty or "-".
template <class F>
void write_output(const std::string &path, std::ostream &fallback, F &&body) {
    if (path.empty() || path == "-") {
        body(fallback);
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw InvalidArgument("cannot write '" + path + "'");
    body(out);
}

inline DeviceTopology make_topology(int n, const std::string &variant) {
    const Variant v = parse_variant(variant);
    return v == Variant::baseline ? build_conveyor(n) : build_variant(v, n);
}

// ---------------------------------------------------------------------------

struct TopologyOptions {
    int n{4};
    std::string variant{"baseline"};
    std::string out;
};

inline int cmd_topology(const TopologyOptions &o, std::ostream &out,
                        RunReport &report) {
    report.command = "topology";
    const DeviceTopology topo = make_topology(o.n, o.variant);
    const auto violations = validate(topo);
    report.fields["n"] = o.n;
    report.fields["variant"] = o.variant;
    report.fields["sites"] = topo.num_sites();
    report.fields["violations"] = violations;
    write_output(o.out, out, [&](std::ostream &os) {
        os << topology_to_json(topo).dump(2) << '\n';
    });
    return violations.empty() ? exit_ok : exit_threshold;
}

// ---------------------------------------------------------------------------

struct RunOptions {
    std::string topology; ///< JSON file; empty means build from n/variant
    int n{4};
    std::string variant{"baseline"};
    std::string schedule;
    std::string initial{"ground"}; ///< "ground" or a logical-state CSV
    std::string phase{"FP"};
    std::string backend{"dense"};
    std::string out;
    std::string logical_out;
};

template <StateBackend S>
int run_with(const DeviceTopology &topo, const PulseSchedule &schedule,
             const RunOptions &o, std::ostream &out, RunReport &report) {
    S state;
    if (o.initial == "ground") {
        state = all_ground<S>(topo.num_sites());
    } else {
        std::istringstream in(read_input(o.initial, "initial", report));
        const LogicalStateVector psi = read_logical_csv(in, topo.n_logical());
        state = encode_well_formed<S>(psi, parse_phase(o.phase), topo);
    }
    apply_schedule(state, topo, schedule);
    report.fields["norm"] = norm(state);
    write_output(o.out, out,
                 [&](std::ostream &os) { write_state_csv(os, state); });
    try {
        const Decoded d = decode_well_formed(state, topo);
        report.fields["well_formed"] = true;
        report.fields["phase"] = std::string(to_string(d.phase));
        report.fields["residual"] = d.residual;
        report.fields["global_phase"] = d.global_phase;
        if (!o.logical_out.empty()) {
            write_output(o.logical_out, out,
                         [&](std::ostream &os) { write_state_csv(os, d.psi); });
        }
    } catch (const NotWellFormed &e) {
        report.fields["well_formed"] = false;
        report.fields["residual"] = e.residual();
    }
    return exit_ok;
}

inline int cmd_run(const RunOptions &o, std::ostream &out, RunReport &report) {
    report.command = "run";
    const DeviceTopology topo = [&] {
        if (o.topology.empty())
            return make_topology(o.n, o.variant);
        return topology_from_json(read_input(o.topology, "topology", report));
    }();
    if (const auto v = validate(topo); !v.empty())
        throw InvalidArgument("invalid topology: " + v.front());
    std::istringstream sched_in(read_input(o.schedule, "schedule", report));
    const ScheduleFile sched = parse_schedule(sched_in);
    report.fields["pulse_count"] = sched.schedule.size();
    report.fields["backend"] = o.backend;
    if (parse_backend(o.backend) == Backend::dense)
        return run_with<PureState>(topo, sched.schedule, o, out, report);
    return run_with<SparseState>(topo, sched.schedule, o, out, report);
}

// ---------------------------------------------------------------------------

struct CompileOptions {
    std::string circuit;
    int n{4};
    std::string out;
};

inline int cmd_compile(const CompileOptions &o, std::ostream &out,
                       RunReport &report) {
    report.command = "compile";
    const DeviceTopology topo = build_conveyor(o.n);
    std::istringstream in(read_input(o.circuit, "circuit", report));
    const LogicalCircuit circuit = parse_circuit(in, o.n);
    const CompileResult c = compile(circuit, topo);
    report.fields["gates"] = circuit.gates.size();
    report.fields["pulse_count"] = c.pulse_count;
    report.fields["final_placement"] = c.final_placement;
    report.fields["final_phase"] = std::string(to_string(c.final_phase));
    write_output(o.out, out, [&](std::ostream &os) { write_compiled(os, c); });
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct VerifyCliOptions {
    std::string circuit;
    std::string schedule; ///< optional precompiled schedule with trailer
    int n{4};
    std::string backend{"dense"};
    std::uint64_t seed{1};
    int trials{1};
    double tolerance{1e-8}; ///< pass iff fidelity >= 1 - tolerance
};

inline int cmd_verify(const VerifyCliOptions &o, std::ostream &out,
                      RunReport &report) {
    report.command = "verify";
    report.fields["seed"] = o.seed;
    report.fields["backend"] = o.backend;
    report.fields["tolerance"] = o.tolerance;
    if (o.trials < 1)
        throw InvalidArgument("--trials must be at least 1");
    const DeviceTopology topo = build_conveyor(o.n);
    std::istringstream in(read_input(o.circuit, "circuit", report));
    const LogicalCircuit circuit = parse_circuit(in, o.n);

    CompileResult compiled;
    bool check_phase = true;
    if (o.schedule.empty()) {
        compiled = compile(circuit, topo);
    } else {
        std::istringstream sin(read_input(o.schedule, "schedule", report));
        ScheduleFile f = parse_schedule(sin);
        compiled.schedule = std::move(f.schedule);
        compiled.pulse_count = compiled.schedule.size();
        compiled.final_placement =
            f.final_placement.value_or(RoutingState::identity(o.n).placement);
        // Without a trailer the final phase is not checked.
        check_phase = f.final_phase.has_value();
        compiled.final_phase = f.final_phase.value_or(Phase::FP);
    }
    report.fields["pulse_count"] = compiled.pulse_count;

    const Backend backend = parse_backend(o.backend);
    std::mt19937_64 rng(o.seed);
    double worst = 1.0;
    double worst_residual = 0.0;
    bool well_formed = true;
    bool phase_ok = true;
    for (int t = 0; t < o.trials; ++t) {
        const LogicalStateVector psi = random_logical_state(o.n, rng);
        try {
            const VerifyResult r =
                backend == Backend::dense
                    ? verify_compiled<PureState>(circuit, topo, compiled, psi)
                    : verify_compiled<SparseState>(circuit, topo, compiled, psi);
            worst = std::min(worst, r.fidelity);
            worst_residual = std::max(
                {worst_residual, r.final_residual, r.max_boundary_residual});
            phase_ok = phase_ok && (r.phase_matches || !check_phase);
        } catch (const NotWellFormed &e) {
            well_formed = false;
            worst = 0.0;
            worst_residual = std::max(worst_residual, e.residual());
        }
    }
    report.fields["fidelity"] = worst;
    report.fields["residual"] = worst_residual;
    report.fields["well_formed"] = well_formed;
    report.fields["phase_matches"] = phase_ok;
    out << std::setprecision(17) << "fidelity " << worst << '\n';
    const bool pass = well_formed && phase_ok && worst >= 1.0 - o.tolerance;
    return pass ? exit_ok : exit_threshold;
}

// ---------------------------------------------------------------------------

struct SweepOptions {
    std::vector<double> etas{4, 8, 16, 32, 64};
    std::string fragment{"two_neighbor"};
    std::string frame{"lab"};
    double dt{1e-3};
    std::string out;
};

inline int cmd_blockade_sweep(const SweepOptions &o, std::ostream &out,
                              RunReport &report) {
    report.command = "blockade-sweep";
    SweepParams p;
    if (o.frame == "lab")
        p.frame = Frame::lab;
    else if (o.frame == "rotating_wave")
        p.frame = Frame::rotating_wave;
    else
        throw InvalidArgument("unknown frame '" + o.frame + "'");
    p.dt = o.dt;
    const auto rows = sweep_blockade(o.etas, parse_fragment_kind(o.fragment), p);
    report.fields["fragment"] = o.fragment;
    report.fields["rows"] = rows.size();
    write_output(o.out, out,
                 [&](std::ostream &os) { write_blockade_csv(os, rows); });
    return exit_ok;
}

} // namespace conveyor::cli
