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
 * Conveyor-belt device graph: sites, species, ZZ adjacency and the
 * IC-site / sector indexing shared by every other module.
 *
 * Index convention for a device with N logical qubits: the loop holds 4N
 * sites, IC site Q_j sits at loop index 4(j-1), and sector S_j occupies the
 * three following indices (A, B, A). The baseline design adds one A-crossed
 * site at index 4N coupled to Q_1, Q_2, Q_3; the two-coupler variants add
 * two coupler sites at 4N and 4N+1.
 */
#pragma once

#include "conveyor/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace conveyor {

enum class Family { A, B, C };
enum class Crossing { regular, crossed, double_crossed };

struct Species {
    Family family{Family::A};
    Crossing crossing{Crossing::regular};

    friend bool operator==(const Species &, const Species &) = default;
};

struct Site {
    int index{0};
    Species species{};
    bool triangle_corrected{false};
    bool on_loop{true};

    friend bool operator==(const Site &, const Site &) = default;
};

/// Three sites between Q_j and Q_{j+1}, clockwise.
struct Sector {
    int first_a{0};
    int center_b{0};
    int last_a{0};

    friend bool operator==(const Sector &, const Sector &) = default;
};

/// In-loop coupler of a variant design; couples IC sites Q_first, Q_second
/// (1-based).
struct Coupler {
    int site{0};
    int first{0};
    int second{0};

    friend bool operator==(const Coupler &, const Coupler &) = default;
};

enum class Variant {
    baseline,
    two_coupler_three_species,
    two_coupler_double_crossed
};

inline std::string_view to_string(Family f) {
    switch (f) {
    case Family::A:
        return "A";
    case Family::B:
        return "B";
    case Family::C:
        return "C";
    }
    return "?";
}

inline std::string_view to_string(Crossing c) {
    switch (c) {
    case Crossing::regular:
        return "regular";
    case Crossing::crossed:
        return "crossed";
    case Crossing::double_crossed:
        return "double_crossed";
    }
    return "?";
}

inline std::string_view to_string(Variant v) {
    switch (v) {
    case Variant::baseline:
        return "baseline";
    case Variant::two_coupler_three_species:
        return "two_coupler_three_species";
    case Variant::two_coupler_double_crossed:
        return "two_coupler_double_crossed";
    }
    return "?";
}

inline Family parse_family(std::string_view s) {
    if (s == "A")
        return Family::A;
    if (s == "B")
        return Family::B;
    if (s == "C")
        return Family::C;
    throw ParseError("unknown family '" + std::string(s) + "'");
}

inline Crossing parse_crossing(std::string_view s) {
    if (s == "regular")
        return Crossing::regular;
    if (s == "crossed")
        return Crossing::crossed;
    if (s == "double_crossed")
        return Crossing::double_crossed;
    throw ParseError("unknown crossing '" + std::string(s) + "'");
}

inline Variant parse_variant(std::string_view s) {
    if (s == "baseline")
        return Variant::baseline;
    if (s == "two_coupler_three_species")
        return Variant::two_coupler_three_species;
    if (s == "two_coupler_double_crossed")
        return Variant::two_coupler_double_crossed;
    throw InvalidArgument("unknown variant kind '" + std::string(s) + "'");
}

/**
 * Immutable device graph.
 *
 * Construction only checks that edge endpoints are valid site ids; all
 * structural invariants are reported by validate() so that hand-built or
 * loaded graphs can be diagnosed instead of rejected outright.
 */
class DeviceTopology {
  public:
    struct Parts {
        int n_logical{0};
        Variant variant{Variant::baseline};
        std::vector<Site> sites;
        std::vector<std::pair<int, int>> edges;
        std::vector<int> ic_sites;
        std::vector<Sector> sectors;
        std::optional<int> central_site;
        std::vector<Coupler> couplers;
        std::vector<int> init_targets;
    };

    explicit DeviceTopology(Parts parts) : parts_(std::move(parts)) {
        const int n = num_sites();
        adjacency_.resize(static_cast<std::size_t>(n));
        for (auto [a, b] : parts_.edges) {
            if (a < 0 || a >= n || b < 0 || b >= n) {
                throw InvalidArgument("edge (" + std::to_string(a) + "," +
                                      std::to_string(b) +
                                      ") references an unknown site");
            }
            adjacency_[static_cast<std::size_t>(a)].push_back(b);
            if (a != b)
                adjacency_[static_cast<std::size_t>(b)].push_back(a);
        }
        for (auto &row : adjacency_) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
        }
        if (n <= 64) {
            masks_.resize(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < n; ++i) {
                for (int j : adjacency_[static_cast<std::size_t>(i)]) {
                    if (j != i)
                        masks_[static_cast<std::size_t>(i)] |=
                            std::uint64_t{1} << j;
                }
            }
        }
    }

    [[nodiscard]] int n_logical() const noexcept { return parts_.n_logical; }
    [[nodiscard]] Variant variant() const noexcept { return parts_.variant; }
    [[nodiscard]] int num_sites() const noexcept {
        return static_cast<int>(parts_.sites.size());
    }
    [[nodiscard]] const std::vector<Site> &sites() const noexcept {
        return parts_.sites;
    }
    [[nodiscard]] const Site &site(int i) const {
        check_site(i);
        return parts_.sites[static_cast<std::size_t>(i)];
    }
    [[nodiscard]] const std::vector<std::pair<int, int>> &edges() const {
        return parts_.edges;
    }
    /// Sorted neighbor ids of site i.
    [[nodiscard]] std::span<const int> neighbors(int i) const {
        check_site(i);
        return adjacency_[static_cast<std::size_t>(i)];
    }
    [[nodiscard]] int degree(int i) const {
        return static_cast<int>(neighbors(i).size());
    }
    /// Bit mask of the neighbors of i; only available when the device has
    /// at most 64 sites.
    [[nodiscard]] std::uint64_t neighbor_mask(int i) const {
        check_site(i);
        if (masks_.empty())
            throw InvalidArgument("device too large for 64-bit basis masks");
        return masks_[static_cast<std::size_t>(i)];
    }
    [[nodiscard]] const std::vector<int> &ic_sites() const noexcept {
        return parts_.ic_sites;
    }
    /// Site id of IC site Q_j, j in 1..N.
    [[nodiscard]] int ic_site(int j) const {
        if (j < 1 || j > static_cast<int>(parts_.ic_sites.size()))
            throw InvalidArgument("IC index " + std::to_string(j) +
                                  " out of range");
        return parts_.ic_sites[static_cast<std::size_t>(j - 1)];
    }
    [[nodiscard]] const std::vector<Sector> &sectors() const noexcept {
        return parts_.sectors;
    }
    /// Sector S_j, j in 1..N.
    [[nodiscard]] const Sector &sector(int j) const {
        if (j < 1 || j > static_cast<int>(parts_.sectors.size()))
            throw InvalidArgument("sector index " + std::to_string(j) +
                                  " out of range");
        return parts_.sectors[static_cast<std::size_t>(j - 1)];
    }
    [[nodiscard]] std::optional<int> central_site() const noexcept {
        return parts_.central_site;
    }
    [[nodiscard]] const std::vector<Coupler> &couplers() const noexcept {
        return parts_.couplers;
    }
    [[nodiscard]] const std::vector<int> &init_targets() const noexcept {
        return parts_.init_targets;
    }
    [[nodiscard]] const Parts &parts() const noexcept { return parts_; }

    /// Ascending ids of every site of the given species.
    [[nodiscard]] std::vector<int> sites_of(Species s) const {
        std::vector<int> out;
        for (const auto &site : parts_.sites) {
            if (site.species == s)
                out.push_back(site.index);
        }
        return out;
    }

  private:
    void check_site(int i) const {
        if (i < 0 || i >= num_sites())
            throw InvalidArgument("invalid site id " + std::to_string(i));
    }

    Parts parts_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::uint64_t> masks_;
};

namespace detail {

inline void add_loop_and_sectors(DeviceTopology::Parts &p, int n) {
    const int loop = 4 * n;
    for (int j = 1; j <= n; ++j) {
        const int base = 4 * (j - 1);
        const Crossing q_crossing =
            j == 2 ? Crossing::crossed : Crossing::regular;
        p.sites.push_back({base, {Family::B, q_crossing}, false, true});
        p.sites.push_back({base + 1, {Family::A, Crossing::regular}, false, true});
        p.sites.push_back({base + 2, {Family::B, Crossing::regular}, false, true});
        p.sites.push_back({base + 3, {Family::A, Crossing::regular}, false, true});
        p.ic_sites.push_back(base);
        p.sectors.push_back({base + 1, base + 2, base + 3});
    }
    for (int i = 0; i < loop; ++i)
        p.edges.emplace_back(i, (i + 1) % loop);
}

inline void mark_triangles(DeviceTopology::Parts &p) {
    std::vector<int> degree(p.sites.size(), 0);
    for (auto [a, b] : p.edges) {
        ++degree[static_cast<std::size_t>(a)];
        ++degree[static_cast<std::size_t>(b)];
    }
    for (auto &s : p.sites)
        s.triangle_corrected = degree[static_cast<std::size_t>(s.index)] == 3;
}

} // namespace detail

/// Baseline conveyor with 4N+1 sites. Requires N even and N >= 4.
inline DeviceTopology build_conveyor(int n) {
    if (n < 4 || n % 2 != 0) {
        throw InvalidArgument(
            "conveyor needs an even number of logical qubits N >= 4 (got " +
            std::to_string(n) + ")");
    }
    DeviceTopology::Parts p;
    p.n_logical = n;
    p.variant = Variant::baseline;
    detail::add_loop_and_sectors(p, n);

    const int central = 4 * n;
    p.sites.push_back({central, {Family::A, Crossing::crossed}, false, false});
    p.central_site = central;
    for (int j = 1; j <= 3; ++j)
        p.edges.emplace_back(central, p.ic_sites[static_cast<std::size_t>(j - 1)]);

    for (int j = 2; j <= n; j += 2)
        p.init_targets.push_back(p.sectors[static_cast<std::size_t>(j - 1)].center_b);

    detail::mark_triangles(p);
    return DeviceTopology(std::move(p));
}

/**
 * Two-coupler designs: the central A-crossed qubit is replaced by two in-loop
 * couplers on the pairs (Q_1, Q_3) and (Q_4, Q_8). The (Q_1, Q_3) coupler is
 * the lower-Rabi one (C-regular, resp. A-crossed); the (Q_4, Q_8) coupler is
 * C-crossed, resp. A-double-crossed. Requires N even and N >= 8.
 */
inline DeviceTopology build_variant(Variant kind, int n) {
    if (kind == Variant::baseline)
        throw InvalidArgument("build_variant: use build_conveyor for the "
                              "baseline design");
    if (kind != Variant::two_coupler_three_species &&
        kind != Variant::two_coupler_double_crossed)
        throw InvalidArgument("build_variant: unknown variant kind");
    if (n < 8 || n % 2 != 0) {
        throw InvalidArgument("two-coupler variants need an even N >= 8 "
                              "(the (Q_4, Q_8) pair must exist); got " +
                              std::to_string(n));
    }
    DeviceTopology::Parts p;
    p.n_logical = n;
    p.variant = kind;
    detail::add_loop_and_sectors(p, n);

    const bool three_species = kind == Variant::two_coupler_three_species;
    const Species low = three_species
                            ? Species{Family::C, Crossing::regular}
                            : Species{Family::A, Crossing::crossed};
    const Species high = three_species
                             ? Species{Family::C, Crossing::crossed}
                             : Species{Family::A, Crossing::double_crossed};
    const std::array<std::pair<int, int>, 2> pairs{{{1, 3}, {4, 8}}};
    const std::array<Species, 2> species{low, high};
    for (std::size_t c = 0; c < 2; ++c) {
        const int site = 4 * n + static_cast<int>(c);
        p.sites.push_back({site, species[c], false, false});
        p.couplers.push_back({site, pairs[c].first, pairs[c].second});
        p.edges.emplace_back(site, p.ic_sites[static_cast<std::size_t>(pairs[c].first - 1)]);
        p.edges.emplace_back(site, p.ic_sites[static_cast<std::size_t>(pairs[c].second - 1)]);
    }
    detail::mark_triangles(p);
    return DeviceTopology(std::move(p));
}

/// Symmetric, irreflexive neighbor lookup (sorted ids).
inline std::vector<int> neighbors(const DeviceTopology &topo, int site) {
    auto span = topo.neighbors(site);
    std::vector<int> out;
    for (int j : span) {
        if (j != site)
            out.push_back(j);
    }
    return out;
}

/**
 * Checks every structural invariant of the device graph and returns one
 * human-readable line per violation. An empty result means the topology is
 * valid.
 */
inline std::vector<std::string> validate(const DeviceTopology &topo) {
    std::vector<std::string> v;
    auto report = [&v](auto &&...parts) {
        std::ostringstream os;
        (os << ... << parts);
        v.push_back(os.str());
    };

    const int n = topo.n_logical();
    const int num = topo.num_sites();
    const bool baseline = topo.variant() == Variant::baseline;

    if (n < 4 || n % 2 != 0)
        report("N must be even and >= 4 (got ", n, ")");
    if (!baseline && n < 8)
        report("two-coupler variants need N >= 8 (got ", n, ")");
    const int expected_sites = baseline ? 4 * n + 1 : 4 * n + 2;
    if (num != expected_sites)
        report("site count ", num, " != expected ", expected_sites);

    for (int i = 0; i < num; ++i) {
        if (topo.sites()[static_cast<std::size_t>(i)].index != i)
            report("site table entry ", i, " carries index ",
                   topo.sites()[static_cast<std::size_t>(i)].index);
    }

    // Adjacency: irreflexive, no duplicate couplings, bipartite by family.
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : topo.edges()) {
        if (a == b) {
            report("site ", a, ": self-coupling");
            continue;
        }
        auto key = std::minmax(a, b);
        if (!seen.insert({key.first, key.second}).second)
            report("edge (", key.first, ",", key.second, ") listed twice");
        const Family fa = topo.site(a).species.family;
        const Family fb = topo.site(b).species.family;
        if (fa == fb)
            report("edge (", key.first, ",", key.second, ") joins two ",
                   to_string(fa), "-family sites");
    }

    for (const auto &s : topo.sites()) {
        const int deg = static_cast<int>(neighbors(topo, s.index).size());
        if (s.triangle_corrected != (deg == 3))
            report("site ", s.index, ": triangle flag ",
                   s.triangle_corrected ? "set" : "clear", " but degree is ",
                   deg);
        const bool variant_species =
            s.species.family == Family::C ||
            s.species.crossing == Crossing::double_crossed;
        if (baseline && variant_species)
            report("site ", s.index,
                   ": C-family or double-crossed species in baseline design");
    }

    // Loop structure.
    int loop_count = 0;
    for (const auto &s : topo.sites()) {
        if (!s.on_loop)
            continue;
        ++loop_count;
        int loop_neighbors = 0;
        for (int j : neighbors(topo, s.index)) {
            if (topo.site(j).on_loop)
                ++loop_neighbors;
        }
        if (loop_neighbors != 2)
            report("site ", s.index, ": loop site has ", loop_neighbors,
                   " loop neighbors (expected 2)");
    }
    if (loop_count != 4 * n)
        report("loop holds ", loop_count, " sites (expected ", 4 * n, ")");

    // IC sites and sectors.
    const auto &ic = topo.ic_sites();
    const auto &sectors = topo.sectors();
    if (static_cast<int>(ic.size()) != n)
        report("expected ", n, " IC sites, found ", ic.size());
    if (static_cast<int>(sectors.size()) != n)
        report("expected ", n, " sectors, found ", sectors.size());
    auto valid_id = [num](int i) { return i >= 0 && i < num; };
    auto adjacent = [&topo](int a, int b) {
        auto nb = topo.neighbors(a);
        return std::binary_search(nb.begin(), nb.end(), b);
    };
    for (std::size_t j = 0; j < ic.size(); ++j) {
        if (!valid_id(ic[j])) {
            report("Q_", j + 1, " references invalid site ", ic[j]);
            continue;
        }
        if (topo.site(ic[j]).species.family != Family::B)
            report("Q_", j + 1, " (site ", ic[j], ") is not a B-type qubit");
    }
    if (ic.size() == sectors.size() && !ic.empty()) {
        const std::size_t count = ic.size();
        for (std::size_t j = 0; j < count; ++j) {
            const Sector &s = sectors[j];
            if (!valid_id(s.first_a) || !valid_id(s.center_b) ||
                !valid_id(s.last_a) || !valid_id(ic[j]) ||
                !valid_id(ic[(j + 1) % count])) {
                report("S_", j + 1, " references invalid sites");
                continue;
            }
            if (topo.site(s.first_a).species.family != Family::A ||
                topo.site(s.center_b).species.family != Family::B ||
                topo.site(s.last_a).species.family != Family::A)
                report("S_", j + 1, " does not follow the (A, B, A) pattern");
            const int q = ic[j];
            const int q_next = ic[(j + 1) % count];
            if (!adjacent(q, s.first_a) || !adjacent(s.first_a, s.center_b) ||
                !adjacent(s.center_b, s.last_a) || !adjacent(s.last_a, q_next))
                report("S_", j + 1, " does not sit between Q_", j + 1,
                       " and Q_", (j + 1) % count + 1);
        }
    }

    // Crossed qubits.
    const auto b_crossed = topo.sites_of({Family::B, Crossing::crossed});
    if (ic.size() >= 2 &&
        (b_crossed.size() != 1 || b_crossed.front() != ic[1]))
        report("unique B-crossed must be Q_2");

    if (baseline) {
        const auto a_crossed = topo.sites_of({Family::A, Crossing::crossed});
        const auto central = topo.central_site();
        if (!central || !valid_id(*central)) {
            report("baseline design has no central site");
        } else {
            if (a_crossed.size() != 1 || a_crossed.front() != *central)
                report("central site must be the unique A-crossed site");
            if (ic.size() >= 3) {
                std::vector<int> want{ic[0], ic[1], ic[2]};
                std::sort(want.begin(), want.end());
                if (neighbors(topo, *central) != want)
                    report("central site must couple exactly Q_1, Q_2, Q_3");
            }
            if (topo.site(*central).on_loop)
                report("central site must not lie on the loop");
        }
        std::vector<int> want_init;
        for (std::size_t j = 2; j <= sectors.size(); j += 2)
            want_init.push_back(sectors[j - 1].center_b);
        if (topo.init_targets() != want_init)
            report("init targets must be the centers of S_2, S_4, ..., S_N");
        if (!topo.couplers().empty())
            report("baseline design must not list couplers");
    } else {
        const auto &couplers = topo.couplers();
        const std::array<std::pair<int, int>, 2> pairs{{{1, 3}, {4, 8}}};
        if (couplers.size() != 2) {
            report("two-coupler variant must list exactly 2 couplers");
        } else {
            const bool three = topo.variant() == Variant::two_coupler_three_species;
            const std::array<Species, 2> want{
                three ? Species{Family::C, Crossing::regular}
                      : Species{Family::A, Crossing::crossed},
                three ? Species{Family::C, Crossing::crossed}
                      : Species{Family::A, Crossing::double_crossed}};
            for (std::size_t c = 0; c < 2; ++c) {
                const Coupler &cp = couplers[c];
                if (cp.first != pairs[c].first || cp.second != pairs[c].second) {
                    report("coupler ", c, " must couple (Q_", pairs[c].first,
                           ", Q_", pairs[c].second, ")");
                    continue;
                }
                if (!valid_id(cp.site) ||
                    static_cast<int>(ic.size()) < pairs[c].second) {
                    report("coupler ", c, " references invalid sites");
                    continue;
                }
                if (topo.site(cp.site).species != want[c])
                    report("coupler ", c, " (site ", cp.site,
                           ") has the wrong species");
                std::vector<int> nb{ic[static_cast<std::size_t>(cp.first - 1)],
                                    ic[static_cast<std::size_t>(cp.second - 1)]};
                std::sort(nb.begin(), nb.end());
                if (neighbors(topo, cp.site) != nb)
                    report("coupler ", c, " (site ", cp.site,
                           ") must have exactly its two IC neighbors");
            }
        }
        if (topo.central_site())
            report("variant design must not have a central site");
        if (!topo.init_targets().empty())
            report("variant design has no init line");
    }

    // Partition: IC sites, sector sites, central/couplers cover every site once.
    std::vector<int> owner_count(static_cast<std::size_t>(std::max(num, 0)), 0);
    auto own = [&](int i) {
        if (valid_id(i))
            ++owner_count[static_cast<std::size_t>(i)];
    };
    for (int q : ic)
        own(q);
    for (const auto &s : sectors) {
        own(s.first_a);
        own(s.center_b);
        own(s.last_a);
    }
    if (topo.central_site())
        own(*topo.central_site());
    for (const auto &c : topo.couplers())
        own(c.site);
    for (int i = 0; i < num; ++i) {
        const int c = owner_count[static_cast<std::size_t>(i)];
        if (c != 1)
            report("site ", i, " is claimed by ", c,
                   " roles (expected exactly 1)");
    }
    return v;
}

// ---------------------------------------------------------------------------
// JSON document, "format": 1.

inline nlohmann::json topology_to_json(const DeviceTopology &topo) {
    using nlohmann::json;
    json doc;
    doc["format"] = 1;
    doc["n_logical"] = topo.n_logical();
    doc["variant"] = std::string(to_string(topo.variant()));
    json sites = json::array();
    for (const auto &s : topo.sites()) {
        sites.push_back({{"index", s.index},
                         {"family", std::string(to_string(s.species.family))},
                         {"crossing", std::string(to_string(s.species.crossing))},
                         {"triangle", s.triangle_corrected},
                         {"on_loop", s.on_loop}});
    }
    doc["sites"] = std::move(sites);
    json edges = json::array();
    for (auto [a, b] : topo.edges())
        edges.push_back({a, b});
    doc["edges"] = std::move(edges);
    doc["ic_sites"] = topo.ic_sites();
    json sectors = json::array();
    for (const auto &s : topo.sectors())
        sectors.push_back({s.first_a, s.center_b, s.last_a});
    doc["sectors"] = std::move(sectors);
    doc["central_site"] =
        topo.central_site() ? json(*topo.central_site()) : json(nullptr);
    json couplers = json::array();
    for (const auto &c : topo.couplers())
        couplers.push_back({{"site", c.site}, {"pair", {c.first, c.second}}});
    doc["couplers"] = std::move(couplers);
    doc["init_targets"] = topo.init_targets();
    return doc;
}

inline DeviceTopology topology_from_json(const nlohmann::json &doc) {
    try {
        if (doc.at("format").get<int>() != 1)
            throw ParseError("unsupported topology format version");
        DeviceTopology::Parts p;
        p.n_logical = doc.at("n_logical").get<int>();
        p.variant = parse_variant(doc.at("variant").get<std::string>());
        for (const auto &s : doc.at("sites")) {
            Site site;
            site.index = s.at("index").get<int>();
            site.species = {parse_family(s.at("family").get<std::string>()),
                            parse_crossing(s.at("crossing").get<std::string>())};
            site.triangle_corrected = s.at("triangle").get<bool>();
            site.on_loop = s.at("on_loop").get<bool>();
            p.sites.push_back(site);
        }
        for (const auto &e : doc.at("edges"))
            p.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        p.ic_sites = doc.at("ic_sites").get<std::vector<int>>();
        for (const auto &s : doc.at("sectors"))
            p.sectors.push_back(
                {s.at(0).get<int>(), s.at(1).get<int>(), s.at(2).get<int>()});
        if (!doc.at("central_site").is_null())
            p.central_site = doc.at("central_site").get<int>();
        for (const auto &c : doc.at("couplers"))
            p.couplers.push_back({c.at("site").get<int>(),
                                  c.at("pair").at(0).get<int>(),
                                  c.at("pair").at(1).get<int>()});
        p.init_targets = doc.at("init_targets").get<std::vector<int>>();
        return DeviceTopology(std::move(p));
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("malformed topology document: ") +
                         e.what());
    } catch (const InvalidArgument &e) {
        throw ParseError(e.what());
    }
}

inline DeviceTopology topology_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return topology_from_json(doc);
}

inline DeviceTopology topology_from_json(const std::string &text) {
    return topology_from_json(std::string_view(text));
}

inline DeviceTopology topology_from_json(const char *text) {
    return topology_from_json(std::string_view(text));
}

} // namespace conveyor
