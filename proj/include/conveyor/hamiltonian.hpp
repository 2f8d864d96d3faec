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
 * Time-domain model of one driven qubit and its ZZ-coupled neighbors.
 *
 * Units: hbar = 1. Qubit 0 of a fragment is driven; qubits 1..m-1 are its
 * neighbors. Basis bit i is qubit i with 0 = |g>, and sigma_z |e> = +|e>.
 */
#pragma once

#include "conveyor/error.hpp"
#include "conveyor/topology.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conveyor {

enum class Frame { lab, rotating_wave };

struct ContinuousModel {
    double omega_A{2 * std::numbers::pi * 6.0};
    double omega_B{2 * std::numbers::pi * 5.0};
    double zeta{0.0};
    double Omega{0.0}; ///< nominal Rabi amplitude; crossed qubits see 2x
    double omega_drive{0.0};
    double phi{0.0};
    double duration{0.0};
    Frame frame{Frame::lab};
    double dt{1e-3};
};

struct Fragment {
    int m{3}; ///< qubit count, 3 or 4
    Family driven_family{Family::B};
    bool driven_crossed{false};
    bool triangle_corrected{false};
};

enum class FragmentKind {
    two_neighbor,
    three_neighbor,
    three_neighbor_uncorrected
};

inline std::string_view to_string(FragmentKind k) {
    switch (k) {
    case FragmentKind::two_neighbor:
        return "two_neighbor";
    case FragmentKind::three_neighbor:
        return "three_neighbor";
    case FragmentKind::three_neighbor_uncorrected:
        return "three_neighbor_uncorrected";
    }
    return "?";
}

inline FragmentKind parse_fragment_kind(std::string_view s) {
    if (s == "two_neighbor")
        return FragmentKind::two_neighbor;
    if (s == "three_neighbor")
        return FragmentKind::three_neighbor;
    if (s == "three_neighbor_uncorrected")
        return FragmentKind::three_neighbor_uncorrected;
    throw InvalidArgument("unknown fragment kind '" + std::string(s) + "'");
}

/// B-regular qubit with two or three A-regular neighbors.
inline Fragment make_fragment(FragmentKind k) {
    switch (k) {
    case FragmentKind::two_neighbor:
        return {3, Family::B, false, false};
    case FragmentKind::three_neighbor:
        return {4, Family::B, false, true};
    case FragmentKind::three_neighbor_uncorrected:
        return {4, Family::B, false, false};
    }
    return {};
}

/// Star fragment around a device site.
inline Fragment fragment_from_topology(const DeviceTopology &topo, int site) {
    const Site &s = topo.site(site);
    const int deg = topo.degree(site);
    if (deg != 2 && deg != 3)
        throw InvalidArgument("fragment needs a site with 2 or 3 neighbors");
    if (s.species.crossing == Crossing::double_crossed)
        throw InvalidArgument("double-crossed sites are not modeled");
    return {deg + 1, s.species.family, s.species.crossing == Crossing::crossed,
            s.triangle_corrected};
}

namespace detail {

inline void check_fragment(const Fragment &f) {
    if (f.m != 3 && f.m != 4)
        throw InvalidArgument("fragment must have 3 or 4 qubits (got " +
                              std::to_string(f.m) + ")");
    if (f.driven_family == Family::C)
        throw InvalidArgument("C-family fragments are not modeled");
}

inline double nominal_omega(const Fragment &f, const ContinuousModel &m) {
    return f.driven_family == Family::A ? m.omega_A : m.omega_B;
}

inline double neighbor_omega(const Fragment &f, const ContinuousModel &m) {
    return f.driven_family == Family::A ? m.omega_B : m.omega_A;
}

inline double sz(std::uint64_t index, int q) {
    return ((index >> q) & 1U) ? 1.0 : -1.0;
}

/// Diagonal of H_0 (lab) or H_0 - omega_d/2 sigma_z^0 (rotating frame).
inline std::vector<double> static_diagonal(const Fragment &f,
                                           const ContinuousModel &m) {
    const std::uint64_t dim = std::uint64_t{1} << f.m;
    double w0 = nominal_omega(f, m) + (f.triangle_corrected ? m.zeta : 0.0);
    if (m.frame == Frame::rotating_wave)
        w0 -= m.omega_drive;
    const double wn = neighbor_omega(f, m);
    std::vector<double> d(dim);
    for (std::uint64_t a = 0; a < dim; ++a) {
        double e = w0 / 2 * sz(a, 0);
        for (int i = 1; i < f.m; ++i)
            e += wn / 2 * sz(a, i) + m.zeta / 2 * sz(a, 0) * sz(a, i);
        d[a] = e;
    }
    return d;
}

inline double effective_rabi(const Fragment &f, const ContinuousModel &m) {
    return f.driven_crossed ? 2 * m.Omega : m.Omega;
}

/// <e|V(t)|g> on the driven qubit.
inline std::complex<double> drive_element(const Fragment &f,
                                          const ContinuousModel &m, double t) {
    const double om = effective_rabi(f, m);
    if (m.frame == Frame::lab)
        return {0.0, -om * std::sin(m.omega_drive * t + m.phi)};
    return std::polar(om / 2, -m.phi);
}

} // namespace detail

/// sigma_z of the driven qubit uses the +zeta triangle correction; the drive
/// is Omega_eff sin(omega_d t + phi) sigma_y in the lab frame.
inline Eigen::MatrixXcd build_hamiltonian(const Fragment &f,
                                          const ContinuousModel &m, double t) {
    detail::check_fragment(f);
    const auto d = detail::static_diagonal(f, m);
    const Eigen::Index dim = static_cast<Eigen::Index>(d.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a)
        h(a, a) = d[static_cast<std::size_t>(a)];
    const std::complex<double> v = detail::drive_element(f, m, t);
    for (Eigen::Index a = 0; a < dim; a += 2) {
        h(a + 1, a) = v;
        h(a, a + 1) = std::conj(v);
    }
    return h;
}

inline void validate_model(const ContinuousModel &m) {
    if (!(m.omega_A > 0 && m.omega_B > 0 && m.omega_drive > 0))
        throw InvalidArgument("frequencies must be positive");
    if (!(m.zeta >= 0 && m.Omega >= 0))
        throw InvalidArgument("zeta and Omega must be non-negative");
    if (!(m.dt > 0 && m.duration >= 0))
        throw InvalidArgument("dt must be positive and duration non-negative");
    const double fastest = std::max({m.omega_A, m.omega_B, m.omega_drive});
    if (!(m.dt * fastest < 0.05))
        throw InvalidArgument("dt does not resolve the fastest frequency "
                              "(dt * omega must stay below 0.05)");
}

/**
 * Integrates i d psi/dt = H(t) psi from 0 to model.duration. The static
 * diagonal part is removed exactly (interaction picture); the drive is
 * integrated with classical RK4 on ceil(duration/dt) equal steps.
 */
inline Eigen::VectorXcd evolve(const Eigen::VectorXcd &psi0, const Fragment &f,
                               const ContinuousModel &m) {
    detail::check_fragment(f);
    validate_model(m);
    const auto d = detail::static_diagonal(f, m);
    const Eigen::Index dim = static_cast<Eigen::Index>(d.size());
    if (psi0.size() != dim)
        throw InvalidArgument("state dimension does not match the fragment");
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw InvalidArgument("evolve needs a unit-norm input");

    const std::size_t pairs = d.size() / 2;
    std::vector<double> nu(pairs);
    for (std::size_t p = 0; p < pairs; ++p)
        nu[p] = d[2 * p + 1] - d[2 * p];

    using C = std::complex<double>;
    const long steps =
        m.duration == 0 ? 0 : static_cast<long>(std::ceil(m.duration / m.dt));
    const double h = steps == 0 ? 0.0 : m.duration / static_cast<double>(steps);

    // c' = -i V_I(t) c, V_I couples (2p, 2p+1) with phase e^{i nu t}.
    std::vector<C> rot(pairs);
    auto deriv = [&](double t, const Eigen::VectorXcd &c, Eigen::VectorXcd &out) {
        const C v = detail::drive_element(f, m, t);
        for (std::size_t p = 0; p < pairs; ++p) {
            const C ph = std::polar(1.0, nu[p] * t);
            const C up = v * ph;              // <e|V_I|g>
            const C down = std::conj(up);     // <g|V_I|e>
            const auto g = static_cast<Eigen::Index>(2 * p);
            out(g) = C{0, -1} * down * c(g + 1);
            out(g + 1) = C{0, -1} * up * c(g);
        }
    };

    Eigen::VectorXcd c = psi0;
    Eigen::VectorXcd k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    for (long s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * h;
        deriv(t, c, k1);
        tmp = c + (h / 2) * k1;
        deriv(t + h / 2, tmp, k2);
        tmp = c + (h / 2) * k2;
        deriv(t + h / 2, tmp, k3);
        tmp = c + h * k3;
        deriv(t + h, tmp, k4);
        c += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }

    Eigen::VectorXcd out(dim);
    for (Eigen::Index a = 0; a < dim; ++a)
        out(a) = c(a) * std::polar(1.0, -d[static_cast<std::size_t>(a)] * m.duration);
    return out;
}

struct BlockadeRecord {
    double eta{0};
    double p_flip_gg{0};
    double p_leak_ge{0};
    double p_leak_ee{0};

    [[nodiscard]] double total_error() const {
        return (1 - p_flip_gg) + p_leak_ge + p_leak_ee;
    }
};

/// Driven-qubit |e> population after evolving from the basis state `start`.
inline double excited_population(const Fragment &f, const ContinuousModel &m,
                                 std::uint64_t start) {
    const Eigen::Index dim = Eigen::Index{1} << f.m;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi(static_cast<Eigen::Index>(start)) = 1.0;
    const Eigen::VectorXcd out = evolve(psi, f, m);
    double p = 0;
    for (Eigen::Index a = 1; a < dim; a += 2)
        p += std::norm(out(a));
    return p;
}

/**
 * Flip probability of the driven qubit with no neighbor excited, and its
 * leakage with one or two neighbors excited. The model must drive at
 * omega - 2 zeta with a pi pulse.
 */
inline BlockadeRecord blockade_fidelity(const Fragment &f,
                                        const ContinuousModel &m) {
    detail::check_fragment(f);
    const double target = detail::nominal_omega(f, m) - 2 * m.zeta;
    if (std::abs(m.omega_drive - target) > 1e-12 * std::abs(target))
        throw InvalidArgument("blockade_fidelity needs omega_drive = omega - 2 zeta");
    const double area = detail::effective_rabi(f, m) * m.duration;
    if (std::abs(area - std::numbers::pi) > 1e-9)
        throw InvalidArgument("blockade_fidelity needs a pi pulse "
                              "(Omega_eff * duration = pi)");
    BlockadeRecord r;
    r.eta = m.Omega > 0 ? m.zeta / m.Omega : 0;
    r.p_flip_gg = excited_population(f, m, 0b000);
    r.p_leak_ge = excited_population(f, m, 0b010);
    r.p_leak_ee = excited_population(f, m, 0b110);
    return r;
}

/// Sweep settings. zeta = eta * Omega at fixed Omega.
struct SweepParams {
    double omega_A{2 * std::numbers::pi * 6.0};
    double omega_B{2 * std::numbers::pi * 5.0};
    double Omega{2 * std::numbers::pi * 0.002};
    Frame frame{Frame::lab};
    double dt{1e-3};
};

/// Rectangular pi pulse at omega - 2 zeta for the given eta.
inline ContinuousModel blockade_model(const Fragment &f, double eta,
                                      const SweepParams &p = {}) {
    if (!(eta > 0))
        throw InvalidArgument("eta must be positive");
    ContinuousModel m;
    m.omega_A = p.omega_A;
    m.omega_B = p.omega_B;
    m.Omega = p.Omega;
    m.zeta = eta * p.Omega;
    m.omega_drive = detail::nominal_omega(f, m) - 2 * m.zeta;
    m.phi = 0;
    m.duration = std::numbers::pi / detail::effective_rabi(f, m);
    m.frame = p.frame;
    m.dt = p.dt;
    return m;
}

inline std::vector<BlockadeRecord> sweep_blockade(std::span<const double> etas,
                                                  FragmentKind kind,
                                                  const SweepParams &p = {}) {
    const Fragment f = make_fragment(kind);
    std::vector<BlockadeRecord> rows;
    rows.reserve(etas.size());
    for (double eta : etas) {
        rows.push_back(blockade_fidelity(f, blockade_model(f, eta, p)));
    }
    return rows;
}

inline void write_blockade_csv(std::ostream &os,
                               std::span<const BlockadeRecord> rows) {
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << "eta,p_flip_gg,p_leak_ge,p_leak_ee\n" << std::setprecision(12);
    for (const auto &r : rows)
        os << r.eta << ',' << r.p_flip_gg << ',' << r.p_leak_ge << ','
           << r.p_leak_ee << '\n';
    os.flags(flags);
    os.precision(prec);
}

} // namespace conveyor
