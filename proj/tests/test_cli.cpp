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

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace conveyor;
using namespace conveyor::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
  public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() /
                ("conveyor_cli_test_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    [[nodiscard]] std::string write(const std::string &name,
                                    const std::string &body) const {
        const fs::path p = path_ / name;
        std::ofstream(p) << body;
        return p.string();
    }
    [[nodiscard]] std::string file(const std::string &name) const {
        return (path_ / name).string();
    }

  private:
    fs::path path_;
};

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("topology command", "[cli]") {
    std::ostringstream out;
    RunReport rep;
    CHECK(cmd_topology({8, "baseline", ""}, out, rep) == exit_ok);
    const auto topo = topology_from_json(out.str());
    CHECK(validate(topo).empty());
    CHECK(rep.fields["sites"] == 33);

    std::ostringstream vout;
    RunReport vrep;
    CHECK(cmd_topology({8, "two_coupler_three_species", ""}, vout, vrep) == exit_ok);
    const auto v = topology_from_json(vout.str());
    REQUIRE(v.couplers().size() == 2);
    CHECK(v.couplers()[0].first == 1);
    CHECK(v.couplers()[0].second == 3);
    CHECK(v.couplers()[1].first == 4);
    CHECK(v.couplers()[1].second == 8);

    RunReport bad;
    CHECK_THROWS_WITH(cmd_topology({5, "baseline", ""}, out, bad),
                      Catch::Matchers::ContainsSubstring("even"));
}

TEST_CASE("run command", "[cli]") {
    TempDir tmp;
    const auto topo = build_conveyor(4);

    SECTION("INIT from ground decodes to the all-g FP state") {
        const auto sched = tmp.write("init.sched", "MACRO INIT\n");
        std::ostringstream out;
        RunReport rep;
        RunOptions o;
        o.schedule = sched;
        o.logical_out = tmp.file("logical.csv");
        CHECK(cmd_run(o, out, rep) == exit_ok);
        CHECK(rep.fields["well_formed"] == true);
        CHECK(rep.fields["phase"] == "FP");
        std::istringstream lin(slurp(o.logical_out));
        const auto psi = read_logical_csv(lin, 4);
        CHECK(std::abs(psi[0] - 1.0) < 1e-15);
        CHECK(rep.inputs.contains("schedule"));
    }
    SECTION("EXC permutes an encoded state") {
        std::mt19937_64 rng(3);
        const auto psi = random_logical_state(4, rng);
        std::ostringstream csv;
        write_state_csv(csv, psi);
        RunOptions o;
        o.schedule = tmp.write("exc.sched", "MACRO EXC\n");
        o.initial = tmp.write("psi.csv", csv.str());
        o.backend = "sparse";
        o.logical_out = tmp.file("out.csv");
        std::ostringstream out;
        RunReport rep;
        CHECK(cmd_run(o, out, rep) == exit_ok);
        CHECK(rep.fields["phase"] == "PF");
        std::istringstream lin(slurp(o.logical_out));
        const auto got = unpermute(read_logical_csv(lin, 4),
                                   permutation_after(1, Phase::FP, 4));
        CHECK(oracle::compare_up_to_global_phase(psi, got).fidelity >= 1 - 1e-10);
    }
    SECTION("empty schedule echoes the input") {
        std::mt19937_64 rng(4);
        const auto psi = random_logical_state(4, rng);
        std::ostringstream csv;
        write_state_csv(csv, psi);
        RunOptions o;
        o.schedule = tmp.write("empty.sched", "# nothing\n");
        o.initial = tmp.write("psi.csv", csv.str());
        o.phase = "PF";
        std::ostringstream out;
        RunReport rep;
        CHECK(cmd_run(o, out, rep) == exit_ok);
        std::istringstream in(out.str());
        const auto st = read_state_csv<PureState>(in, 17);
        CHECK(l2_distance(st, encode_well_formed(psi, Phase::PF, topo)) < 1e-15);
    }
    SECTION("topology file input") {
        std::ostringstream json;
        RunReport trep;
        (void)cmd_topology({4, "baseline", ""}, json, trep);
        RunOptions o;
        o.topology = tmp.write("topo.json", json.str());
        o.schedule = tmp.write("ccz.sched", "MACRO CCZ\n");
        std::ostringstream out;
        RunReport rep;
        CHECK(cmd_run(o, out, rep) == exit_ok);
        CHECK(rep.fields["well_formed"] == false);
    }
    SECTION("bad inputs") {
        RunOptions o;
        o.schedule = tmp.file("missing.sched");
        std::ostringstream out;
        RunReport rep;
        CHECK_THROWS_AS(cmd_run(o, out, rep), InvalidArgument);
        o.schedule = tmp.write("bad.sched", "PULSE B_all theta=1\n");
        CHECK_THROWS_AS(cmd_run(o, out, rep), ParseError);
        o.schedule = tmp.write("ok.sched", "MACRO EXC\n");
        o.backend = "gpu";
        CHECK_THROWS_AS(cmd_run(o, out, rep), InvalidArgument);
    }
}

TEST_CASE("compile and verify commands", "[cli]") {
    TempDir tmp;
    std::mt19937_64 rng(5);
    const auto circuit = random_circuit(4, 5, rng);
    const auto cpath = tmp.write("c.circuit", circuit_to_string(circuit));

    CompileOptions co;
    co.circuit = cpath;
    co.out = tmp.file("c.sched");
    std::ostringstream cout_;
    RunReport crep;
    CHECK(cmd_compile(co, cout_, crep) == exit_ok);
    const auto f = parse_schedule(slurp(co.out));
    CHECK(f.final_placement);
    CHECK(crep.fields["pulse_count"] == f.schedule.size());

    SECTION("fresh compilation") {
        VerifyCliOptions vo;
        vo.circuit = cpath;
        vo.seed = 9;
        vo.trials = 2;
        std::ostringstream out;
        RunReport rep;
        CHECK(cmd_verify(vo, out, rep) == exit_ok);
        CHECK(out.str().starts_with("fidelity "));
        CHECK(rep.fields["seed"] == 9);
        CHECK(rep.fields["fidelity"].get<double>() >= 1 - 1e-8);
    }
    SECTION("precompiled schedule") {
        VerifyCliOptions vo;
        vo.circuit = cpath;
        vo.schedule = co.out;
        vo.backend = "sparse";
        std::ostringstream out;
        RunReport rep;
        CHECK(cmd_verify(vo, out, rep) == exit_ok);
    }
    SECTION("corrupted schedule fails the threshold") {
        std::string text = slurp(co.out);
        text.insert(0, "PULSE B_crossed theta=0.5 axis=0,1,0\n");
        VerifyCliOptions vo;
        vo.circuit = cpath;
        vo.schedule = tmp.write("bad.sched", text);
        std::ostringstream out;
        RunReport rep;
        CHECK(cmd_verify(vo, out, rep) == exit_threshold);
    }
    SECTION("empty circuit") {
        VerifyCliOptions vo;
        vo.circuit = tmp.write("empty.circuit", "");
        std::ostringstream out;
        RunReport rep;
        CHECK(cmd_verify(vo, out, rep) == exit_ok);
        CHECK(rep.fields["fidelity"].get<double>() ==
              Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("deterministic for a fixed seed") {
        VerifyCliOptions vo;
        vo.circuit = cpath;
        vo.seed = 77;
        std::ostringstream a, b;
        RunReport ra, rb;
        (void)cmd_verify(vo, a, ra);
        (void)cmd_verify(vo, b, rb);
        CHECK(a.str() == b.str());
    }
}

TEST_CASE("blockade-sweep command", "[cli]") {
    std::ostringstream out;
    RunReport rep;
    SweepOptions o;
    o.etas = {};
    CHECK(cmd_blockade_sweep(o, out, rep) == exit_ok);
    CHECK(out.str() == "eta,p_flip_gg,p_leak_ge,p_leak_ee\n");

    o.frame = "sideways";
    CHECK_THROWS_AS(cmd_blockade_sweep(o, out, rep), InvalidArgument);
}

TEST_CASE("run report", "[cli]") {
    RunReport r;
    r.command = "verify";
    r.fields["fidelity"] = 1.0;
    r.exit_status = 1;
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["command"] == "verify");
    CHECK(j["exit_status"] == 1);
    CHECK(j.contains("wall_time_s"));
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
}
