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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace conveyor;
using namespace conveyor::testing;

namespace {

constexpr double pi = std::numbers::pi;

/// Collects failures for one criterion.
struct Check {
    std::vector<std::string> failures;
    std::string detail;

    void expect(bool ok, const std::string &what) {
        if (!ok && failures.size() < 5)
            failures.push_back(what);
        else if (!ok)
            failures.back() = "... and more";
    }
};

struct Criterion {
    int id;
    const char *title;
    double time_limit_s; ///< 0 means no limit
    std::function<void(Check &)> body;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

Axis random_axis(std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const Axis a{g(rng), g(rng), g(rng)};
    const double l = a.norm();
    return {a.x / l, a.y / l, a.z / l};
}

template <StateBackend S>
double decoded_fidelity(const S &state, const DeviceTopology &topo,
                        const std::vector<int> &placement, Phase want_phase,
                        const LogicalStateVector &want, Check &c) {
    try {
        const Decoded d = decode_well_formed(state, topo);
        c.expect(d.phase == want_phase, "unexpected sector phase");
        return oracle::compare_up_to_global_phase(want, unpermute(d.psi, placement))
            .fidelity;
    } catch (const NotWellFormed &e) {
        c.expect(false, e.what());
        return 0.0;
    }
}

// 1 ------------------------------------------------------------------------
void branch_tables(Check &c) {
    const auto topo = build_conveyor(4);
    const auto exc = seq_exchange();
    int checked = 0;
    for (int bits = 0; bits < 16; ++bits) {
        const std::array<int, 4> k{bits & 1, (bits >> 1) & 1, (bits >> 2) & 1,
                                   (bits >> 3) & 1};
        auto st = encode_well_formed<SparseState>(
            LogicalStateVector::basis(4, static_cast<std::uint64_t>(bits)),
            Phase::FP, topo);
        for (int step = 1; step <= 8; ++step) {
            apply_global_pulse(st, topo, exc.pulses[static_cast<std::size_t>(step - 1)]);
            const auto [idx, amp] = expected_exchange_branch(topo, k, step);
            const bool ok = st.support_size() == 1 &&
                            std::abs(st.amplitude(idx) - amp) < 1e-12;
            c.expect(ok, "IC bits " + std::to_string(bits) + ", prefix " +
                             std::to_string(step));
            ++checked;
        }
    }
    c.detail = std::to_string(checked) + " branch states";
}

// 2 ------------------------------------------------------------------------
void paramagnetic_track(Check &c) {
    const auto topo = build_conveyor(4);
    const auto exc = seq_exchange();
    const Sector s2 = topo.sector(2);
    const Sector s4 = topo.sector(4);
    auto st = encode_well_formed<SparseState>(LogicalStateVector::basis(4, 0),
                                              Phase::FP, topo);
    for (int step = 1; step <= 8; ++step) {
        apply_global_pulse(st, topo, exc.pulses[static_cast<std::size_t>(step - 1)]);
        const Branch p = paramagnetic_table[static_cast<std::size_t>(step - 1)];
        const std::uint64_t want2 = spell(p.bits, {s2.first_a, s2.center_b, s2.last_a});
        const std::uint64_t want4 = spell(p.bits, {s4.first_a, s4.center_b, s4.last_a});
        const std::uint64_t mask2 = spell("eee", {s2.first_a, s2.center_b, s2.last_a});
        const std::uint64_t mask4 = spell("eee", {s4.first_a, s4.center_b, s4.last_a});
        const std::uint64_t idx = st.amplitudes().begin()->first;
        c.expect(st.support_size() == 1 && (idx & mask2) == want2 &&
                     (idx & mask4) == want4,
                 "sector pattern after prefix " + std::to_string(step));
    }
    // Remove the two compound factors (-i)^11 to isolate the sectors.
    const cplx sectors = st.amplitudes().begin()->second / minus_i_pow(22);
    const cplx want = minus_i_pow(7) * minus_i_pow(7);
    c.expect(std::abs(sectors - want) < 1e-12, "sector phase is not (-i)^7");
    c.detail = "both P sectors end in F with (-i)^7";
}

// 3 and 8 ------------------------------------------------------------------
double exchange_trials(Check &c, int n, Backend backend, int trials,
                       std::uint64_t seed, double *worst_l2 = nullptr) {
    const auto topo = build_conveyor(n);
    std::mt19937_64 rng(seed);
    double worst = 1.0;
    for (Phase start : {Phase::FP, Phase::PF}) {
        const auto perm = permutation_after(1, start, n);
        for (int t = 0; t < trials; ++t) {
            const auto psi = random_logical_state(n, rng);
            if (backend == Backend::dense) {
                auto st = encode_well_formed<PureState>(psi, start, topo);
                apply_schedule(st, topo, seq_exchange());
                worst = std::min(worst, decoded_fidelity(st, topo, perm, flip(start),
                                                         psi, c));
                if (worst_l2) {
                    auto sp = encode_well_formed<SparseState>(psi, start, topo);
                    apply_schedule(sp, topo, seq_exchange());
                    *worst_l2 = std::max(*worst_l2, l2_distance(st, sp));
                }
            } else {
                auto st = encode_well_formed<SparseState>(psi, start, topo);
                apply_schedule(st, topo, seq_exchange());
                worst = std::min(worst, decoded_fidelity(st, topo, perm, flip(start),
                                                         psi, c));
            }
        }
    }
    return worst;
}

void exchange_semantics(Check &c) {
    const double f4 = exchange_trials(c, 4, Backend::dense, 50, 301);
    const double f6 = exchange_trials(c, 6, Backend::sparse, 50, 302);
    c.expect(f4 >= 1 - 1e-10, "N=4 dense fidelity " + fmt(f4));
    c.expect(f6 >= 1 - 1e-10, "N=6 sparse fidelity " + fmt(f6));
    c.detail = "min fidelity N=4 " + fmt(f4) + ", N=6 " + fmt(f6);
}

// 4 ------------------------------------------------------------------------
void concatenation(Check &c) {
    const auto topo = build_conveyor(4);
    const auto identity = RoutingState::identity(4).placement;
    std::mt19937_64 rng(401);
    double worst = 1.0;
    for (int t = 0; t < 20; ++t) {
        const auto psi = random_logical_state(4, rng);
        for (Phase start : {Phase::FP, Phase::PF}) {
            auto st = encode_well_formed<PureState>(psi, start, topo);
            for (int i = 0; i < 4; ++i)
                apply_schedule(st, topo, seq_exchange());
            worst = std::min(worst, decoded_fidelity(st, topo, identity, start, psi, c));

            auto inv = encode_well_formed<PureState>(psi, start, topo);
            apply_schedule(inv, topo, seq_exchange());
            apply_schedule(inv, topo, seq_exchange_inverse());
            worst = std::min(worst, decoded_fidelity(inv, topo, identity, start, psi, c));
        }
    }
    c.expect(worst >= 1 - 1e-10, "fidelity " + fmt(worst));
    c.detail = "min fidelity " + fmt(worst);
}

// 5 ------------------------------------------------------------------------
void ccz(Check &c) {
    const auto topo = build_conveyor(4);
    std::mt19937_64 rng(501);
    std::vector<Axis> axes{axis_x};
    for (int i = 0; i < 5; ++i)
        axes.push_back(random_axis(rng));
    double err = 0;
    for (const Axis &n : axes) {
        for (Phase ph : {Phase::FP, Phase::PF}) {
            for (std::uint64_t k = 0; k < 16; ++k) {
                auto st = encode_well_formed<SparseState>(
                    LogicalStateVector::basis(4, k), ph, topo);
                const std::uint64_t idx = st.amplitudes().begin()->first;
                apply_schedule(st, topo, seq_ccz(n));
                const cplx want = (k & 7U) == 0 ? -1.0 : 1.0;
                c.expect(st.support_size() == 1, "support changed");
                err = std::max(err, std::abs(st.amplitude(idx) - want));
            }
        }
    }
    c.expect(err < 1e-12, "max deviation " + fmt(err));
    c.detail = std::to_string(axes.size()) + " axes, max deviation " + fmt(err);
}

// 6 ------------------------------------------------------------------------
void toffoli(Check &c) {
    const auto topo = build_conveyor(4);
    const LogicalCircuit ideal(4, {LogicalGate::toffoli(1, 3, 2)});
    std::mt19937_64 rng(601);
    std::vector<LogicalStateVector> inputs;
    for (std::uint64_t k = 0; k < 8; ++k)
        inputs.push_back(LogicalStateVector::basis(4, k));
    for (int t = 0; t < 10; ++t)
        inputs.push_back(random_logical_state(4, rng));

    double worst = 1.0;
    std::vector<double> phases;
    for (const auto &psi : inputs) {
        auto st = encode_well_formed<PureState>(psi, Phase::FP, topo);
        apply_schedule(st, topo, seq_toffoli());
        const auto want = encode_well_formed<PureState>(
            oracle::simulate_logical(ideal, psi), Phase::FP, topo);
        const cplx ip = inner_product(want, st);
        worst = std::min(worst, std::norm(ip));
        phases.push_back(std::arg(ip));
    }
    double spread = 0;
    for (double p : phases)
        spread = std::max(spread, std::abs(std::remainder(p - phases.front(), 2 * pi)));
    c.expect(worst >= 1 - 1e-10, "fidelity " + fmt(worst));
    c.expect(spread < 1e-9, "global phase spread " + fmt(spread));
    c.detail = "18 inputs, min fidelity " + fmt(worst) + ", common phase " +
               fmt(phases.front());
}

// 7 and 8 ------------------------------------------------------------------
template <StateBackend S>
S run_compiled(const CompileResult &res, const LogicalStateVector &psi,
               const DeviceTopology &topo) {
    S st = encode_well_formed<S>(psi, Phase::FP, topo);
    apply_schedule(st, topo, res.schedule);
    return st;
}

void compiler_end_to_end(Check &c) {
    const auto topo = build_conveyor(4);
    std::mt19937_64 rng(701);
    std::uniform_int_distribution<int> depth(1, 5);
    double worst = 1.0;
    double worst_residual = 0.0;
    std::size_t boundaries = 0;
    std::size_t pulses = 0;
    for (int t = 0; t < 20; ++t) {
        const auto circuit = random_circuit(4, depth(rng), rng);
        const auto psi = random_logical_state(4, rng);
        const auto res = compile(circuit, topo);
        pulses += res.pulse_count;
        for (Backend b : {Backend::dense, Backend::sparse}) {
            try {
                const VerifyOptions every_macro{.boundary_level = 1};
                const VerifyResult r =
                    b == Backend::dense
                        ? verify_compiled<PureState>(circuit, topo, res, psi,
                                                     Phase::FP, every_macro)
                        : verify_compiled<SparseState>(circuit, topo, res, psi,
                                                       Phase::FP, every_macro);
                worst = std::min(worst, r.fidelity);
                worst_residual = std::max(
                    {worst_residual, r.max_boundary_residual, r.final_residual});
                boundaries += r.boundaries_checked;
                c.expect(r.phase_matches, "final phase differs from the report");
            } catch (const NotWellFormed &e) {
                c.expect(false, "circuit " + std::to_string(t) + ": " + e.what());
            }
        }
    }
    c.expect(worst >= 1 - 1e-8, "fidelity " + fmt(worst));
    c.expect(worst_residual < 1e-9, "boundary residual " + fmt(worst_residual));
    c.detail = "20 circuits, " + std::to_string(pulses) + " pulses, " +
               std::to_string(boundaries) + " boundaries, min fidelity " +
               fmt(worst) + ", max residual " + fmt(worst_residual);
}

void backend_equivalence(Check &c) {
    double worst = 0.0;
    Check scratch;
    (void)exchange_trials(scratch, 4, Backend::dense, 50, 301, &worst);
    c.failures = scratch.failures;

    const auto topo = build_conveyor(4);
    std::mt19937_64 rng(701);
    std::uniform_int_distribution<int> depth(1, 5);
    for (int t = 0; t < 20; ++t) {
        const auto circuit = random_circuit(4, depth(rng), rng);
        const auto psi = random_logical_state(4, rng);
        const auto res = compile(circuit, topo);
        const auto d = run_compiled<PureState>(res, psi, topo);
        const auto s = run_compiled<SparseState>(res, psi, topo);
        worst = std::max(worst, l2_distance(d, s));
    }
    c.expect(worst < 1e-10, "L2 distance " + fmt(worst));
    c.detail = "max L2 distance " + fmt(worst);
}

// 9 ------------------------------------------------------------------------
void blockade(Check &c) {
    const std::vector<double> etas{4, 8, 16, 32, 64};
    SweepParams p;
    p.frame = Frame::lab;
    const auto two = sweep_blockade(etas, FragmentKind::two_neighbor, p);
    const auto three = sweep_blockade(etas, FragmentKind::three_neighbor, p);
    const std::vector<double> at32{32};
    const auto bare = sweep_blockade(at32, FragmentKind::three_neighbor_uncorrected, p);

    std::ostringstream errs;
    for (std::size_t i = 0; i < etas.size(); ++i) {
        errs << (i ? "," : "") << fmt(two[i].total_error());
        if (i > 0)
            c.expect(two[i].total_error() <= two[i - 1].total_error(),
                     "total error rises at eta " + fmt(etas[i]));
        const double scale = 1 - two[i].p_flip_gg;
        c.expect(std::abs(three[i].p_flip_gg - two[i].p_flip_gg) <= 5 * scale,
                 "corrected fragment differs at eta " + fmt(etas[i]));
    }
    c.expect(bare[0].p_flip_gg < 0.5,
             "uncorrected p_flip_gg " + fmt(bare[0].p_flip_gg));
    c.detail = "total error " + errs.str() + "; uncorrected p_flip_gg(32) " +
               fmt(bare[0].p_flip_gg);
}

// 10 -----------------------------------------------------------------------
void swap_percolation(Check &c) {
    std::mt19937_64 rng(1001);
    double worst = 1.0;
    int pairs = 0;
    for (int n : {4, 6}) {
        const auto topo = build_conveyor(n);
        for (int a = 1; a <= n; ++a) {
            for (int b = a + 1; b <= n; ++b) {
                const LogicalCircuit circuit(n, {LogicalGate::swap(a, b)});
                const auto res = compile(circuit, topo);
                ++pairs;
                for (int t = 0; t < 2; ++t) {
                    try {
                        const auto r = verify_compiled<SparseState>(
                            circuit, topo, res, random_logical_state(n, rng));
                        worst = std::min(worst, r.fidelity);
                    } catch (const NotWellFormed &e) {
                        c.expect(false, "swap(" + std::to_string(a) + "," +
                                            std::to_string(b) + "): " + e.what());
                    }
                }
            }
        }
    }
    c.expect(worst >= 1 - 1e-9, "fidelity " + fmt(worst));
    c.detail = std::to_string(pairs) + " pairs, min fidelity " + fmt(worst);
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "exchange branch tables", 1.0, branch_tables},
        {2, "paramagnetic track", 0.0, paramagnetic_track},
        {3, "exchange semantics", 30.0, exchange_semantics},
        {4, "concatenation and inverse", 0.0, concatenation},
        {5, "CCZ", 0.0, ccz},
        {6, "one-shot Toffoli", 0.0, toffoli},
        {7, "compiler end-to-end", 300.0, compiler_end_to_end},
        {8, "backend equivalence", 0.0, backend_equivalence},
        {9, "blockade regime", 120.0, blockade},
        {10, "swap percolation", 0.0, swap_percolation},
    };
    int failed = 0;
    for (const auto &cr : criteria) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.body(c);
        } catch (const std::exception &e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (cr.time_limit_s > 0)
            c.expect(secs < cr.time_limit_s,
                     "took " + fmt(secs) + " s, limit " + fmt(cr.time_limit_s) + " s");
        const bool ok = c.failures.empty();
        failed += ok ? 0 : 1;
        std::printf("criterion %2d %-28s %s  [%.2f s] %s\n", cr.id, cr.title,
                    ok ? "PASS" : "FAIL", secs, c.detail.c_str());
        for (const auto &f : c.failures)
            std::printf("    %s\n", f.c_str());
    }
    std::printf("%d of %zu criteria passed\n",
                static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
