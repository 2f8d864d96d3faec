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

#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>

namespace cli = conveyor::cli;

int main(int argc, char **argv) {
    CLI::App app{"Simulator and compiler for the globally driven conveyor-belt "
                 "architecture"};
    app.require_subcommand(1);

    cli::TopologyOptions topo_opt;
    auto *topo_cmd = app.add_subcommand("topology", "Build and validate a device graph");
    topo_cmd->add_option("--n", topo_opt.n, "Number of logical qubits")->required();
    topo_cmd->add_option("--variant", topo_opt.variant,
                         "baseline | two_coupler_three_species | "
                         "two_coupler_double_crossed")
        ->capture_default_str();
    topo_cmd->add_option("--out", topo_opt.out, "Output file (default stdout)");

    cli::RunOptions run_opt;
    auto *run_cmd = app.add_subcommand("run", "Apply a pulse schedule to a state");
    run_cmd->add_option("--topology", run_opt.topology, "Topology JSON file");
    run_cmd->add_option("--n", run_opt.n, "Logical qubits when no topology file is given")
        ->capture_default_str();
    run_cmd->add_option("--variant", run_opt.variant)->capture_default_str();
    run_cmd->add_option("--schedule", run_opt.schedule, "Schedule file")->required();
    run_cmd->add_option("--initial", run_opt.initial,
                        "'ground' or a logical-state CSV to encode")
        ->capture_default_str();
    run_cmd->add_option("--phase", run_opt.phase, "FP | PF for --initial")
        ->capture_default_str();
    run_cmd->add_option("--backend", run_opt.backend, "dense | sparse")
        ->capture_default_str();
    run_cmd->add_option("--out", run_opt.out, "Final state CSV (default stdout)");
    run_cmd->add_option("--logical-out", run_opt.logical_out,
                        "Decoded logical state CSV");

    cli::CompileOptions comp_opt;
    auto *comp_cmd = app.add_subcommand("compile", "Compile a logical circuit");
    comp_cmd->add_option("--circuit", comp_opt.circuit, "Circuit file")->required();
    comp_cmd->add_option("--n", comp_opt.n, "Number of logical qubits")->required();
    comp_cmd->add_option("--out", comp_opt.out, "Schedule file (default stdout)");

    cli::VerifyCliOptions ver_opt;
    auto *ver_cmd = app.add_subcommand("verify", "Check a compiled circuit against the reference simulator");
    ver_cmd->add_option("--circuit", ver_opt.circuit, "Circuit file")->required();
    ver_cmd->add_option("--schedule", ver_opt.schedule,
                        "Precompiled schedule (compiled on the fly if absent)");
    ver_cmd->add_option("--n", ver_opt.n, "Number of logical qubits")->required();
    ver_cmd->add_option("--backend", ver_opt.backend, "dense | sparse")
        ->capture_default_str();
    ver_cmd->add_option("--seed", ver_opt.seed, "Seed for random input states")
        ->capture_default_str();
    ver_cmd->add_option("--trials", ver_opt.trials, "Random input states to test")
        ->capture_default_str();
    ver_cmd->add_option("--tolerance", ver_opt.tolerance,
                        "Pass iff fidelity >= 1 - tolerance")
        ->capture_default_str();

    cli::SweepOptions sweep_opt;
    auto *sweep_cmd = app.add_subcommand("blockade-sweep", "Blockade fidelity versus eta");
    std::vector<std::string> eta_text;
    auto *etas_opt =
        sweep_cmd
            ->add_option("--etas", eta_text,
                         "Comma-separated eta values (default 4,8,16,32,64)")
            ->delimiter(',')
            ->expected(0, -1);
    sweep_cmd->add_option("--fragment", sweep_opt.fragment,
                          "two_neighbor | three_neighbor | "
                          "three_neighbor_uncorrected")
        ->capture_default_str();
    sweep_cmd->add_option("--frame", sweep_opt.frame, "lab | rotating_wave")
        ->capture_default_str();
    sweep_cmd->add_option("--dt", sweep_opt.dt, "Integrator step")->capture_default_str();
    sweep_cmd->add_option("--out", sweep_opt.out, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : cli::exit_input;
    }
    cli::RunReport report;
    std::function<int()> body;
    if (*topo_cmd)
        body = [&] { return cli::cmd_topology(topo_opt, std::cout, report); };
    else if (*run_cmd)
        body = [&] { return cli::cmd_run(run_opt, std::cout, report); };
    else if (*comp_cmd)
        body = [&] { return cli::cmd_compile(comp_opt, std::cout, report); };
    else if (*ver_cmd)
        body = [&] { return cli::cmd_verify(ver_opt, std::cout, report); };
    else
        body = [&] {
            report.command = "blockade-sweep";
            if (etas_opt->count() > 0) {
                // A bare --etas means an empty sweep.
                sweep_opt.etas.clear();
                for (const auto &t : eta_text) {
                    if (!t.empty())
                        sweep_opt.etas.push_back(
                            conveyor::detail::parse_double(t, 0));
                }
            }
            return cli::cmd_blockade_sweep(sweep_opt, std::cout, report);
        };

    const auto t0 = std::chrono::steady_clock::now();
    int status = cli::exit_ok;
    try {
        status = body();
    } catch (const conveyor::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        report.fields["error"] = e.what();
        status = cli::exit_input;
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.exit_status = status;
    std::cerr << report.to_json() << '\n';
    return status;
}
