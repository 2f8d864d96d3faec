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
 * Exact pure states over the physical qubits of a device, with a dense and
 * a sparse backend, plus the well-formed encoding of logical states.
 *
 * Basis convention: qubit i is bit i of the basis index; 0 = |g>, 1 = |e>.
 */
#pragma once

#include "conveyor/error.hpp"
#include "conveyor/topology.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace conveyor {

using cplx = std::complex<double>;

/// Largest register the dense backend accepts (2^30 amplitudes = 16 GiB).
inline constexpr int max_dense_qubits = 30;
/// Largest register either backend can index.
inline constexpr int max_qubits = 64;

inline constexpr double default_prune_tolerance = 1e-12;
inline constexpr double decode_tolerance = 1e-9;

// ---------------------------------------------------------------------------
// Rotations.

struct Axis {
    double x{1.0};
    double y{0.0};
    double z{0.0};

    [[nodiscard]] double norm() const { return std::sqrt(x * x + y * y + z * z); }

    friend bool operator==(const Axis &, const Axis &) = default;
};

inline constexpr Axis axis_x{1.0, 0.0, 0.0};
inline constexpr Axis axis_y{0.0, 1.0, 0.0};
inline constexpr Axis axis_z{0.0, 0.0, 1.0};
/// (1, 0, 1)/sqrt(2); a pi rotation about it is a Hadamard up to a phase.
inline constexpr Axis axis_h{std::numbers::sqrt2 / 2, 0.0,
                             std::numbers::sqrt2 / 2};

inline void require_unit_axis(const Axis &n, double tol = 1e-12) {
    if (!(std::abs(n.norm() - 1.0) <= tol))
        throw InvalidArgument("rotation axis is not a unit vector");
}

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<cplx, 4>;

/// R(theta, n) = exp(-i theta/2 n.sigma).
inline Mat2 rotation_matrix(double theta, const Axis &n) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return {cplx{c, -s * n.z}, cplx{-s * n.y, -s * n.x},
            cplx{s * n.y, -s * n.x}, cplx{c, s * n.z}};
}

enum class Phase { FP, PF };

inline Phase flip(Phase p) { return p == Phase::FP ? Phase::PF : Phase::FP; }

inline std::string_view to_string(Phase p) {
    return p == Phase::FP ? "FP" : "PF";
}

inline Phase parse_phase(std::string_view s) {
    if (s == "FP")
        return Phase::FP;
    if (s == "PF")
        return Phase::PF;
    throw InvalidArgument("unknown phase label '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// State types.

namespace detail {

inline void check_qubit(int q, int n) {
    if (q < 0 || q >= n)
        throw InvalidArgument("invalid qubit id " + std::to_string(q));
}

inline std::uint64_t control_mask(std::span<const int> controls, int target,
                                  int n) {
    std::uint64_t m = 0;
    for (int c : controls) {
        check_qubit(c, n);
        if (c == target)
            throw InvalidArgument("target " + std::to_string(target) +
                                  " listed among its own controls");
        m |= std::uint64_t{1} << c;
    }
    return m;
}

} // namespace detail

/// Dense 2^n amplitude vector.
class PureState {
  public:
    PureState() = default;

    /// Zero vector on n qubits; most callers want all_ground instead.
    explicit PureState(int n_qubits) : n_(n_qubits) {
        if (n_qubits < 1 || n_qubits > max_dense_qubits)
            throw InvalidArgument("dense backend supports 1.." +
                                  std::to_string(max_dense_qubits) +
                                  " qubits (got " + std::to_string(n_qubits) +
                                  ")");
        amp_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    }

    [[nodiscard]] int n_qubits() const noexcept { return n_; }
    [[nodiscard]] std::uint64_t dim() const noexcept { return amp_.size(); }
    [[nodiscard]] std::vector<cplx> &amplitudes() noexcept { return amp_; }
    [[nodiscard]] const std::vector<cplx> &amplitudes() const noexcept {
        return amp_;
    }
    [[nodiscard]] cplx amplitude(std::uint64_t index) const {
        return index < amp_.size() ? amp_[index] : cplx{};
    }
    void set(std::uint64_t index, cplx a) { amp_.at(index) = a; }
    void add(std::uint64_t index, cplx a) { amp_.at(index) += a; }

    template <class F> void for_each_nonzero(F &&f) const {
        for (std::uint64_t i = 0; i < amp_.size(); ++i) {
            if (amp_[i] != cplx{})
                f(i, amp_[i]);
        }
    }

    void scale(cplx factor) {
        for (auto &a : amp_)
            a *= factor;
    }

    /**
     * Applies the 2x2 matrix u to `target` on the subspace where every
     * qubit in `controls` is |g>.
     */
    void apply_controlled(int target, std::span<const int> controls,
                          const Mat2 &u) {
        detail::check_qubit(target, n_);
        const std::uint64_t cm = detail::control_mask(controls, target, n_);
        apply_controlled_mask(target, cm, u);
    }

    void apply_controlled_mask(int target, std::uint64_t cm, const Mat2 &u) {
        const std::uint64_t t = std::uint64_t{1} << target;
        const std::uint64_t free = (dim() - 1) & ~(t | cm);
        std::uint64_t sub = free;
        while (true) {
            cplx &a0 = amp_[sub];
            cplx &a1 = amp_[sub | t];
            const cplx b0 = u[0] * a0 + u[1] * a1;
            const cplx b1 = u[2] * a0 + u[3] * a1;
            a0 = b0;
            a1 = b1;
            if (sub == 0)
                break;
            sub = (sub - 1) & free;
        }
    }

  private:
    int n_{0};
    std::vector<cplx> amp_;
};

/// Map from basis index to amplitude; entries below the prune tolerance are
/// dropped after every kernel.
class SparseState {
  public:
    SparseState() = default;

    explicit SparseState(int n_qubits,
                         double prune_tolerance = default_prune_tolerance)
        : n_(n_qubits), prune_(prune_tolerance) {
        if (n_qubits < 1 || n_qubits > max_qubits)
            throw InvalidArgument("sparse backend supports 1..64 qubits (got " +
                                  std::to_string(n_qubits) + ")");
    }

    [[nodiscard]] int n_qubits() const noexcept { return n_; }
    [[nodiscard]] double prune_tolerance() const noexcept { return prune_; }
    [[nodiscard]] std::size_t support_size() const noexcept {
        return amp_.size();
    }
    [[nodiscard]] const std::unordered_map<std::uint64_t, cplx> &
    amplitudes() const noexcept {
        return amp_;
    }
    [[nodiscard]] cplx amplitude(std::uint64_t index) const {
        auto it = amp_.find(index);
        return it == amp_.end() ? cplx{} : it->second;
    }
    void set(std::uint64_t index, cplx a) {
        check_index(index);
        if (std::abs(a) < prune_)
            amp_.erase(index);
        else
            amp_[index] = a;
    }
    void add(std::uint64_t index, cplx a) { set(index, amplitude(index) + a); }

    template <class F> void for_each_nonzero(F &&f) const {
        for (const auto &[i, a] : amp_)
            f(i, a);
    }

    void scale(cplx factor) {
        for (auto &[i, a] : amp_)
            a *= factor;
        prune();
    }

    void apply_controlled(int target, std::span<const int> controls,
                          const Mat2 &u) {
        detail::check_qubit(target, n_);
        const std::uint64_t cm = detail::control_mask(controls, target, n_);
        apply_controlled_mask(target, cm, u);
    }

    void apply_controlled_mask(int target, std::uint64_t cm, const Mat2 &u) {
        const std::uint64_t t = std::uint64_t{1} << target;
        std::unordered_map<std::uint64_t, cplx> next;
        next.reserve(amp_.size() * 2);
        for (const auto &[i, a] : amp_) {
            if (i & cm) {
                next[i] += a;
                continue;
            }
            const std::uint64_t base = i & ~t;
            if (i & t) {
                next[base] += u[1] * a;
                next[base | t] += u[3] * a;
            } else {
                next[base] += u[0] * a;
                next[base | t] += u[2] * a;
            }
        }
        amp_ = std::move(next);
        prune();
    }

    void prune() {
        std::erase_if(amp_, [this](const auto &kv) {
            return std::abs(kv.second) < prune_;
        });
    }

  private:
    void check_index(std::uint64_t index) const {
        if (n_ < 64 && (index >> n_) != 0)
            throw InvalidArgument("basis index out of range");
    }

    int n_{0};
    double prune_{default_prune_tolerance};
    std::unordered_map<std::uint64_t, cplx> amp_;
};

/// Either backend.
template <class S>
concept StateBackend =
    std::same_as<S, PureState> || std::same_as<S, SparseState>;

enum class Backend { dense, sparse };

inline std::string_view to_string(Backend b) {
    return b == Backend::dense ? "dense" : "sparse";
}

inline Backend parse_backend(std::string_view s) {
    if (s == "dense")
        return Backend::dense;
    if (s == "sparse")
        return Backend::sparse;
    throw InvalidArgument("unknown backend '" + std::string(s) + "'");
}

/// N-qubit logical amplitudes; bit (j-1) of the index is logical qubit j.
class LogicalStateVector {
  public:
    LogicalStateVector() = default;

    explicit LogicalStateVector(int n) : n_(n) {
        if (n < 1 || n > 24)
            throw InvalidArgument("logical register size must be 1..24");
        amp_.assign(std::size_t{1} << n, cplx{});
    }

    LogicalStateVector(int n, std::vector<cplx> amplitudes)
        : n_(n), amp_(std::move(amplitudes)) {
        if (n < 1 || n > 24 || amp_.size() != (std::size_t{1} << n))
            throw InvalidArgument("logical amplitude count must be 2^N");
    }

    /// Computational basis state |k>.
    static LogicalStateVector basis(int n, std::uint64_t k) {
        LogicalStateVector v(n);
        v.amp_.at(k) = 1.0;
        return v;
    }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return amp_.size(); }
    [[nodiscard]] std::vector<cplx> &amplitudes() noexcept { return amp_; }
    [[nodiscard]] const std::vector<cplx> &amplitudes() const noexcept {
        return amp_;
    }
    cplx &operator[](std::size_t k) { return amp_[k]; }
    const cplx &operator[](std::size_t k) const { return amp_[k]; }

  private:
    int n_{0};
    std::vector<cplx> amp_;
};

// ---------------------------------------------------------------------------
// Generic helpers.

template <StateBackend S> double norm(const S &s) {
    double w = 0;
    s.for_each_nonzero([&w](std::uint64_t, cplx a) { w += std::norm(a); });
    return std::sqrt(w);
}

inline double norm(const LogicalStateVector &v) {
    double w = 0;
    for (const auto &a : v.amplitudes())
        w += std::norm(a);
    return std::sqrt(w);
}

inline void normalize(LogicalStateVector &v) {
    const double nrm = norm(v);
    if (nrm == 0)
        throw InvalidArgument("cannot normalize the zero vector");
    for (auto &a : v.amplitudes())
        a /= nrm;
}

/// Basis state 0 on n qubits.
template <StateBackend S = PureState> S all_ground(int n_qubits) {
    S s(n_qubits);
    s.set(0, 1.0);
    return s;
}

template <StateBackend S>
void apply_controlled_rotation(S &state, int target,
                               std::span<const int> controls, double theta,
                               const Axis &n) {
    require_unit_axis(n);
    state.apply_controlled(target, controls, rotation_matrix(theta, n));
}

template <StateBackend A, StateBackend B>
cplx inner_product(const A &a, const B &b) {
    if (a.n_qubits() != b.n_qubits())
        throw InvalidArgument("state dimension mismatch");
    cplx acc{};
    a.for_each_nonzero(
        [&](std::uint64_t i, cplx x) { acc += std::conj(x) * b.amplitude(i); });
    return acc;
}

/// |<s1|s2>|^2.
template <StateBackend A, StateBackend B>
double fidelity(const A &a, const B &b) {
    return std::norm(inner_product(a, b));
}

/// L2 distance ||a - b||, without any phase alignment.
template <StateBackend A, StateBackend B>
double l2_distance(const A &a, const B &b) {
    if (a.n_qubits() != b.n_qubits())
        throw InvalidArgument("state dimension mismatch");
    double d = 0;
    a.for_each_nonzero([&](std::uint64_t i, cplx x) {
        d += std::norm(x - b.amplitude(i));
    });
    b.for_each_nonzero([&](std::uint64_t i, cplx y) {
        if (a.amplitude(i) == cplx{})
            d += std::norm(y);
    });
    return std::sqrt(d);
}

inline SparseState to_sparse(const PureState &dense,
                             double prune_tolerance = default_prune_tolerance) {
    SparseState s(dense.n_qubits(), prune_tolerance);
    dense.for_each_nonzero([&s](std::uint64_t i, cplx a) { s.set(i, a); });
    return s;
}

inline PureState to_dense(const SparseState &sparse) {
    PureState d(sparse.n_qubits());
    sparse.for_each_nonzero([&d](std::uint64_t i, cplx a) { d.set(i, a); });
    return d;
}

// ---------------------------------------------------------------------------
// Random states.

inline LogicalStateVector random_logical_state(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    LogicalStateVector v(n);
    for (auto &a : v.amplitudes())
        a = {gauss(rng), gauss(rng)};
    normalize(v);
    return v;
}

/// Global phase fixed so the largest-magnitude component is real positive.
inline LogicalStateVector canonical(LogicalStateVector v, double *phase_out = nullptr) {
    double largest = 0;
    for (const auto &a : v.amplitudes())
        largest = std::max(largest, std::abs(a));
    if (largest == 0)
        throw InvalidArgument("zero logical state has no canonical phase");
    double alpha = 0;
    for (const auto &a : v.amplitudes()) {
        if (std::abs(a) >= largest * (1 - 1e-9)) {
            alpha = std::arg(a);
            break;
        }
    }
    const cplx rot = std::polar(1.0, -alpha);
    for (auto &a : v.amplitudes())
        a *= rot;
    normalize(v);
    if (phase_out)
        *phase_out = alpha;
    return v;
}

// ---------------------------------------------------------------------------
// Well-formed encoding.

namespace detail {

struct EncodingMasks {
    std::vector<std::uint64_t> ic_bits; // bit for Q_j at [j-1]
    std::uint64_t ic_mask{0};
    std::uint64_t pattern_fp{0};
    std::uint64_t pattern_pf{0};
};

inline EncodingMasks encoding_masks(const DeviceTopology &topo) {
    if (topo.num_sites() > max_qubits)
        throw InvalidArgument("device too large for 64-bit basis indices");
    EncodingMasks m;
    for (int q : topo.ic_sites()) {
        const std::uint64_t b = std::uint64_t{1} << q;
        m.ic_bits.push_back(b);
        m.ic_mask |= b;
    }
    const auto &sectors = topo.sectors();
    for (std::size_t j = 0; j < sectors.size(); ++j) {
        const std::uint64_t b = std::uint64_t{1} << sectors[j].center_b;
        // S_1 is index 0: odd sectors are ferromagnetic in FP.
        if (j % 2 == 1)
            m.pattern_fp |= b;
        else
            m.pattern_pf |= b;
    }
    return m;
}

inline std::uint64_t scatter(std::uint64_t k, const EncodingMasks &m) {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < m.ic_bits.size(); ++j) {
        if ((k >> j) & 1U)
            idx |= m.ic_bits[j];
    }
    return idx;
}

inline std::uint64_t gather(std::uint64_t idx, const EncodingMasks &m) {
    std::uint64_t k = 0;
    for (std::size_t j = 0; j < m.ic_bits.size(); ++j) {
        if (idx & m.ic_bits[j])
            k |= std::uint64_t{1} << j;
    }
    return k;
}

} // namespace detail

/// Basis index of |k; phase; g> for logical basis index k.
inline std::uint64_t encoded_index(const DeviceTopology &topo, std::uint64_t k,
                                   Phase phase) {
    const auto m = detail::encoding_masks(topo);
    return detail::scatter(k, m) |
           (phase == Phase::FP ? m.pattern_fp : m.pattern_pf);
}

/**
 * sum_k psi_k |k; phase; g>: logical qubit j on Q_j, sectors alternating
 * F = |ggg> and P = |geg> (FP puts F on S_1), every other qubit in |g>.
 */
template <StateBackend S = PureState>
S encode_well_formed(const LogicalStateVector &psi, Phase phase,
                     const DeviceTopology &topo) {
    if (psi.n() != topo.n_logical())
        throw InvalidArgument("logical state has " + std::to_string(psi.n()) +
                              " qubits, device carries " +
                              std::to_string(topo.n_logical()));
    const auto m = detail::encoding_masks(topo);
    const std::uint64_t pattern =
        phase == Phase::FP ? m.pattern_fp : m.pattern_pf;
    S s(topo.num_sites());
    for (std::uint64_t k = 0; k < psi.dim(); ++k) {
        if (psi[k] != cplx{})
            s.set(detail::scatter(k, m) | pattern, psi[k]);
    }
    return s;
}

struct Decoded {
    LogicalStateVector psi; ///< canonical: largest component real positive
    Phase phase{Phase::FP};
    double global_phase{0}; ///< arg of the largest-magnitude component
    double residual{0};     ///< L2 weight outside the chosen subspace
};

/// Out-of-subspace L2 weight of `state` for both phases (FP, PF).
template <StateBackend S>
std::pair<double, double> well_formed_residuals(const S &state,
                                                const DeviceTopology &topo) {
    if (state.n_qubits() != topo.num_sites())
        throw InvalidArgument("state does not match the device size");
    const auto m = detail::encoding_masks(topo);
    double out_fp = 0;
    double out_pf = 0;
    state.for_each_nonzero([&](std::uint64_t i, cplx a) {
        const std::uint64_t rest = i & ~m.ic_mask;
        if (rest != m.pattern_fp)
            out_fp += std::norm(a);
        if (rest != m.pattern_pf)
            out_pf += std::norm(a);
    });
    return {std::sqrt(out_fp), std::sqrt(out_pf)};
}

/**
 * Inverse of encode_well_formed up to a global phase. Throws NotWellFormed
 * when the state is farther than `tolerance` (L2) from both subspaces.
 */
template <StateBackend S>
Decoded decode_well_formed(const S &state, const DeviceTopology &topo,
                           double tolerance = decode_tolerance) {
    const auto [r_fp, r_pf] = well_formed_residuals(state, topo);
    const Phase phase = r_fp <= r_pf ? Phase::FP : Phase::PF;
    const double residual = std::min(r_fp, r_pf);
    if (!(residual <= tolerance))
        throw NotWellFormed(residual);

    const auto m = detail::encoding_masks(topo);
    const std::uint64_t pattern =
        phase == Phase::FP ? m.pattern_fp : m.pattern_pf;
    LogicalStateVector psi(topo.n_logical());
    state.for_each_nonzero([&](std::uint64_t i, cplx a) {
        if ((i & ~m.ic_mask) == pattern)
            psi[detail::gather(i, m)] = a;
    });
    Decoded d;
    d.psi = canonical(std::move(psi), &d.global_phase);
    d.phase = phase;
    d.residual = residual;
    return d;
}

// ---------------------------------------------------------------------------
// CSV dump: index (hex), real, imag.

namespace detail {

inline void write_csv_row(std::ostream &os, std::uint64_t i, cplx a) {
    os << "0x" << std::hex << i << std::dec << ',' << a.real() << ','
       << a.imag() << '\n';
}

template <class Rows> void write_csv_rows(std::ostream &os, Rows rows) {
    std::sort(rows.begin(), rows.end(),
              [](const auto &x, const auto &y) { return x.first < y.first; });
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::setprecision(17);
    os << "index,real,imag\n";
    for (const auto &[i, a] : rows)
        write_csv_row(os, i, a);
    os.flags(flags);
    os.precision(prec);
}

inline std::vector<std::pair<std::uint64_t, cplx>>
read_csv_rows(std::istream &is) {
    std::vector<std::pair<std::uint64_t, cplx>> rows;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        if (!header_seen) {
            if (line != "index,real,imag")
                throw ParseError("expected header 'index,real,imag'", lineno);
            header_seen = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos)
            throw ParseError("expected 3 comma-separated fields", lineno);
        std::string_view idx(line.data(), c1);
        int base = 10;
        if (idx.starts_with("0x") || idx.starts_with("0X")) {
            idx.remove_prefix(2);
            base = 16;
        }
        std::uint64_t i = 0;
        auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), i, base);
        if (ec != std::errc{} || p != idx.data() + idx.size())
            throw ParseError("bad basis index '" + std::string(idx) + "'", lineno);
        try {
            std::size_t used = 0;
            const std::string re_s = line.substr(c1 + 1, c2 - c1 - 1);
            const std::string im_s = line.substr(c2 + 1);
            const double re = std::stod(re_s, &used);
            if (used != re_s.size())
                throw std::invalid_argument("trailing");
            const double im = std::stod(im_s, &used);
            if (used != im_s.size())
                throw std::invalid_argument("trailing");
            rows.emplace_back(i, cplx{re, im});
        } catch (const std::logic_error &) {
            throw ParseError("bad amplitude", lineno);
        }
    }
    if (!header_seen)
        throw ParseError("empty state file");
    return rows;
}

} // namespace detail

template <StateBackend S>
void write_state_csv(std::ostream &os, const S &state,
                     double threshold = default_prune_tolerance) {
    std::vector<std::pair<std::uint64_t, cplx>> rows;
    state.for_each_nonzero([&](std::uint64_t i, cplx a) {
        if (std::abs(a) > threshold)
            rows.emplace_back(i, a);
    });
    detail::write_csv_rows(os, std::move(rows));
}

inline void write_state_csv(std::ostream &os, const LogicalStateVector &v,
                            double threshold = default_prune_tolerance) {
    std::vector<std::pair<std::uint64_t, cplx>> rows;
    for (std::uint64_t k = 0; k < v.dim(); ++k) {
        if (std::abs(v[k]) > threshold)
            rows.emplace_back(k, v[k]);
    }
    detail::write_csv_rows(os, std::move(rows));
}

template <StateBackend S = SparseState>
S read_state_csv(std::istream &is, int n_qubits) {
    S s(n_qubits);
    for (const auto &[i, a] : detail::read_csv_rows(is)) {
        if (n_qubits < 64 && (i >> n_qubits) != 0)
            throw ParseError("basis index exceeds register size");
        s.add(i, a);
    }
    return s;
}

/// Reads a logical state and normalizes it.
inline LogicalStateVector read_logical_csv(std::istream &is, int n) {
    LogicalStateVector v(n);
    for (const auto &[k, a] : detail::read_csv_rows(is)) {
        if (k >= v.dim())
            throw ParseError("logical index exceeds 2^N");
        v[k] += a;
    }
    normalize(v);
    return v;
}

} // namespace conveyor
