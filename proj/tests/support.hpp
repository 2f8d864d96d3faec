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

// Fixtures shared by the unit tests and the acceptance binary.
#pragma once

#include "conveyor/conveyor.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

namespace conveyor::testing {

/// (-i)^m.
inline cplx minus_i_pow(int m) {
    static constexpr std::array<cplx, 4> table{
        cplx{1, 0}, cplx{0, -1}, cplx{-1, 0}, cplx{0, 1}};
    return table[static_cast<std::size_t>(((m % 4) + 4) % 4)];
}

/// One row of an exchange branch table: the compound amplitude is
/// (-i)^power times the basis state spelled by `bits`.
struct Branch {
    int power;
    std::string_view bits;
};

/// Q_j A B A Q_{j+1} after pulse prefixes 1..8 of the exchange sequence,
/// starting from |k_j>|F>|k_{j+1}>; rows are (k_j k_{j+1}) = gg, ge, eg, ee.
inline constexpr std::array<std::array<Branch, 8>, 4> compound_table{{
    {{{2, "gegeg"}, {2, "gegeg"}, {4, "ggggg"}, {5, "ggegg"},
      {5, "ggegg"}, {8, "eggge"}, {8, "eggge"}, {11, "ggegg"}}},
    {{{1, "gegge"}, {2, "geggg"}, {4, "gggeg"}, {4, "gggeg"},
      {6, "geggg"}, {7, "gegge"}, {8, "gggge"}, {11, "egegg"}}},
    {{{1, "eggeg"}, {2, "gggeg"}, {4, "geggg"}, {4, "geggg"},
      {6, "gggeg"}, {7, "eggeg"}, {8, "egggg"}, {11, "ggege"}}},
    {{{0, "eggge"}, {3, "ggegg"}, {3, "ggegg"}, {4, "ggggg"},
      {6, "gegeg"}, {6, "gegeg"}, {8, "ggggg"}, {11, "egege"}}},
}};

/// A B A of a paramagnetic sector after pulse prefixes 1..8.
inline constexpr std::array<Branch, 8> paramagnetic_table{{
    {0, "geg"}, {1, "ggg"}, {3, "ege"}, {3, "ege"},
    {5, "ggg"}, {6, "geg"}, {6, "geg"}, {7, "ggg"}}};

/// Sets bits for the given sites from a g/e string.
inline std::uint64_t spell(std::string_view bits, std::initializer_list<int> sites) {
    std::uint64_t idx = 0;
    std::size_t i = 0;
    for (int s : sites) {
        if (bits[i++] == 'e')
            idx |= std::uint64_t{1} << s;
    }
    return idx;
}

/**
 * Expected N=4 state after `prefix` exchange pulses (1..8) from the FP
 * basis state with IC bits (k1, k2, k3, k4). Compounds (Q1,S1,Q2) and
 * (Q3,S3,Q4) follow the compound table; S2 and S4 follow the paramagnetic
 * track.
 */
inline std::pair<std::uint64_t, cplx> expected_exchange_branch(
    const DeviceTopology &topo, std::array<int, 4> k, int prefix) {
    auto row = [](int a, int b) { return static_cast<std::size_t>(2 * a + b); };
    const auto step = static_cast<std::size_t>(prefix - 1);
    const Branch c1 = compound_table[row(k[0], k[1])][step];
    const Branch c2 = compound_table[row(k[2], k[3])][step];
    const Branch p = paramagnetic_table[step];
    const Sector s1 = topo.sector(1);
    const Sector s2 = topo.sector(2);
    const Sector s3 = topo.sector(3);
    const Sector s4 = topo.sector(4);
    std::uint64_t idx = 0;
    idx |= spell(c1.bits, {topo.ic_site(1), s1.first_a, s1.center_b, s1.last_a,
                           topo.ic_site(2)});
    idx |= spell(c2.bits, {topo.ic_site(3), s3.first_a, s3.center_b, s3.last_a,
                           topo.ic_site(4)});
    idx |= spell(p.bits, {s2.first_a, s2.center_b, s2.last_a});
    idx |= spell(p.bits, {s4.first_a, s4.center_b, s4.last_a});
    return {idx, minus_i_pow(c1.power + c2.power + 2 * p.power)};
}

} // namespace conveyor::testing
