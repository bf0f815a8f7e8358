/*
 * Copyright 2026 The spe-reach Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Player-partitioned timed automata and their region games.
//
// A clock region is the class of valuations sharing, per clock c with maximal
// guard constant m_c: the integer part (or "beyond m_c"), whether the
// fractional part is zero, and the relative order of the nonzero fractional
// parts. Regions are kept in a canonical form so that equality of regions is
// plain structural equality.

#pragma once

#include <boost/rational.hpp>

#include <map>

#include "game.hpp"

namespace spe {

using ClockId = std::uint32_t;
using LocationId = std::uint32_t;
using Rational = boost::rational<std::int64_t>;
using ClockValuation = std::vector<Rational>;

enum class Comparator { le, lt, eq, gt, ge };

struct ClockConstraint {
    ClockId clock = 0;
    Comparator op = Comparator::le;
    std::uint32_t constant = 0;
};

// Conjunction; empty means true.
using Guard = std::vector<ClockConstraint>;

struct TimedTransition {
    LocationId from = 0;
    LetterId letter = 0;
    Guard guard;
    std::vector<ClockId> reset;
    LocationId to = 0;
};

struct PPTA {
    std::size_t players = 1;
    std::vector<std::string> alphabet;
    std::vector<std::string> clocks;
    std::vector<std::string> location_names;
    std::vector<PlayerId> owner;
    std::vector<TimedTransition> transitions;
    std::vector<std::vector<LocationId>> goals;  // one list per player
    LocationId initial = 0;

    std::size_t num_locations() const { return location_names.size(); }
    std::size_t num_clocks() const { return clocks.size(); }
};

inline std::vector<std::string> validate_ppta(const PPTA& a) {
    std::vector<std::string> out;
    const std::size_t nl = a.num_locations();
    const std::size_t nc = a.num_clocks();
    if (nl == 0) out.push_back("automaton has no locations");
    if (a.players == 0 || a.players > kMaxPlayers) {
        out.push_back("player count " + std::to_string(a.players) + " out of range");
    }
    if (a.owner.size() != nl) out.push_back("owner table does not cover every location");
    for (LocationId l = 0; l < std::min(nl, a.owner.size()); ++l) {
        if (a.owner[l] >= a.players) {
            out.push_back("location '" + a.location_names[l] + "' has unknown owner " +
                          std::to_string(a.owner[l]));
        }
    }
    if (a.goals.size() != a.players) out.push_back("expected one goal list per player");
    for (PlayerId i = 0; i < a.goals.size(); ++i) {
        for (LocationId l : a.goals[i]) {
            if (l >= nl) out.push_back("goal list of player " + std::to_string(i) + " has unknown location");
        }
    }
    for (std::size_t k = 0; k < a.transitions.size(); ++k) {
        const auto& t = a.transitions[k];
        const std::string where = "transition " + std::to_string(k);
        if (t.from >= nl || t.to >= nl) out.push_back(where + " references an unknown location");
        if (t.letter >= a.alphabet.size()) out.push_back(where + " uses an unknown letter");
        for (const auto& atom : t.guard) {
            if (atom.clock >= nc) out.push_back(where + " guards an unknown clock");
        }
        for (ClockId c : t.reset) {
            if (c >= nc) out.push_back(where + " resets an unknown clock");
        }
    }
    if (nl > 0 && a.initial >= nl) out.push_back("initial location does not exist");
    return out;
}

/// Largest constant compared against each clock; 0 for clocks never guarded.
inline std::vector<std::uint32_t> clock_maxima(const PPTA& a) {
    std::vector<std::uint32_t> maxima(a.num_clocks(), 0);
    for (const auto& t : a.transitions) {
        for (const auto& atom : t.guard) {
            maxima[atom.clock] = std::max(maxima[atom.clock], atom.constant);
        }
    }
    return maxima;
}

inline bool compare(const Rational& value, Comparator op, std::uint32_t constant) {
    const Rational c(static_cast<std::int64_t>(constant));
    switch (op) {
        case Comparator::le: return value <= c;
        case Comparator::lt: return value < c;
        case Comparator::eq: return value == c;
        case Comparator::gt: return value > c;
        case Comparator::ge: return value >= c;
    }
    return false;
}

inline bool satisfies(const ClockValuation& nu, const Guard& g) {
    return std::all_of(g.begin(), g.end(), [&](const ClockConstraint& atom) {
        return compare(nu[atom.clock], atom.op, atom.constant);
    });
}

inline ClockValuation delay(ClockValuation nu, const Rational& d) {
    for (auto& v : nu) v += d;
    return nu;
}

inline ClockValuation reset_valuation(ClockValuation nu, std::span<const ClockId> reset) {
    for (ClockId c : reset) nu[c] = 0;
    return nu;
}

struct ClockRegion {
    // Beyond clocks are stored with integer = 0 and frac_zero = false.
    struct Clock {
        bool beyond = false;
        std::uint32_t integer = 0;
        bool frac_zero = true;

        friend auto operator<=>(const Clock&, const Clock&) = default;
    };

    std::vector<Clock> clocks;
    // Non-beyond clocks with nonzero fraction, grouped by equal fraction and
    // sorted by increasing fraction; each group sorted by clock id.
    std::vector<std::vector<ClockId>> frac_order;

    friend auto operator<=>(const ClockRegion&, const ClockRegion&) = default;

    static ClockRegion zero(std::size_t clocks) {
        ClockRegion r;
        r.clocks.resize(clocks);
        return r;
    }

    bool all_beyond() const {
        return std::all_of(clocks.begin(), clocks.end(), [](const Clock& c) { return c.beyond; });
    }

    std::size_t fractional_clocks() const {
        std::size_t n = 0;
        for (const auto& group : frac_order) n += group.size();
        return n;
    }
};

inline ClockRegion::Clock beyond_clock() { return {true, 0, false}; }

inline ClockRegion region_of(const ClockValuation& nu, std::span<const std::uint32_t> maxima) {
    if (nu.size() != maxima.size()) {
        throw PreconditionError("valuation has " + std::to_string(nu.size()) + " clocks, expected " +
                                std::to_string(maxima.size()));
    }
    ClockRegion r;
    r.clocks.resize(nu.size());
    std::vector<std::pair<Rational, ClockId>> fractions;
    for (ClockId c = 0; c < nu.size(); ++c) {
        const Rational& v = nu[c];
        if (v < 0) throw PreconditionError("clock values must be nonnegative");
        if (v > Rational(static_cast<std::int64_t>(maxima[c]))) {
            r.clocks[c] = beyond_clock();
            continue;
        }
        const std::int64_t whole = boost::rational_cast<std::int64_t>(v);  // truncation = floor
        const Rational frac = v - whole;
        // Boost 1.74 rational == int recurses forever under C++20; test the numerator.
        r.clocks[c] = {false, static_cast<std::uint32_t>(whole), frac.numerator() == 0};
        if (frac.numerator() != 0) fractions.emplace_back(frac, c);
    }
    std::sort(fractions.begin(), fractions.end());
    for (std::size_t k = 0; k < fractions.size(); ++k) {
        if (k == 0 || fractions[k].first != fractions[k - 1].first) r.frac_order.emplace_back();
        r.frac_order.back().push_back(fractions[k].second);
    }
    return r;
}

inline bool region_equiv(const ClockValuation& a, const ClockValuation& b,
                         std::span<const std::uint32_t> maxima) {
    return region_of(a, maxima) == region_of(b, maxima);
}

/// Regions met by letting time elapse from r, in order, starting with r itself
/// and ending with the region where every clock is beyond its maximum.
inline std::vector<ClockRegion> time_successors(const ClockRegion& r,
                                                std::span<const std::uint32_t> maxima) {
    std::vector<ClockRegion> chain{r};
    for (;;) {
        ClockRegion next = chain.back();
        if (next.all_beyond()) break;

        std::vector<ClockId> on_integer;
        for (ClockId c = 0; c < next.clocks.size(); ++c) {
            if (!next.clocks[c].beyond && next.clocks[c].frac_zero) on_integer.push_back(c);
        }
        if (!on_integer.empty()) {
            // Clocks sitting on an integer leave it; they now carry the smallest fraction.
            std::vector<ClockId> fresh;
            for (ClockId c : on_integer) {
                if (next.clocks[c].integer == maxima[c]) {
                    next.clocks[c] = beyond_clock();
                } else {
                    next.clocks[c].frac_zero = false;
                    fresh.push_back(c);
                }
            }
            if (!fresh.empty()) next.frac_order.insert(next.frac_order.begin(), fresh);
        } else {
            // The largest fractions reach the next integer.
            for (ClockId c : next.frac_order.back()) {
                next.clocks[c].integer += 1;
                next.clocks[c].frac_zero = true;
            }
            next.frac_order.pop_back();
        }
        chain.push_back(std::move(next));
    }
    return chain;
}

/// Every valuation of r satisfies g. Requires each guard constant to be at
/// most the maximum used to build r.
inline bool guard_sat_region(const Guard& g, const ClockRegion& r,
                             std::span<const std::uint32_t> maxima) {
    for (const auto& atom : g) {
        if (atom.constant > maxima[atom.clock]) {
            throw PreconditionError("guard constant exceeds the clock maximum");
        }
        const auto& c = r.clocks[atom.clock];
        const std::uint32_t n = atom.constant;
        bool ok = false;
        if (c.beyond) {
            ok = atom.op == Comparator::gt || atom.op == Comparator::ge;
        } else if (c.frac_zero) {
            ok = compare(Rational(static_cast<std::int64_t>(c.integer)), atom.op, n);
        } else {
            // value in (integer, integer + 1)
            switch (atom.op) {
                case Comparator::le:
                case Comparator::lt: ok = c.integer < n; break;
                case Comparator::eq: ok = false; break;
                case Comparator::gt:
                case Comparator::ge: ok = c.integer >= n; break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

inline ClockRegion reset_region(ClockRegion r, std::span<const ClockId> reset) {
    for (ClockId c : reset) {
        r.clocks[c] = ClockRegion::Clock{};
        for (auto& group : r.frac_order) std::erase(group, c);
    }
    std::erase_if(r.frac_order, [](const auto& group) { return group.empty(); });
    return r;
}

/// Valuation in r whose fractions are (j+1)/(k+1) for the j-th fractional
/// group (k = number of clocks); beyond clocks get maximum + 1.
inline ClockValuation representative(const ClockRegion& r, std::span<const std::uint32_t> maxima) {
    const std::int64_t denom = static_cast<std::int64_t>(r.clocks.size()) + 1;
    ClockValuation nu(r.clocks.size());
    for (ClockId c = 0; c < r.clocks.size(); ++c) {
        const auto& cl = r.clocks[c];
        nu[c] = cl.beyond ? Rational(static_cast<std::int64_t>(maxima[c]) + 1)
                          : Rational(static_cast<std::int64_t>(cl.integer));
    }
    for (std::size_t j = 0; j < r.frac_order.size(); ++j) {
        for (ClockId c : r.frac_order[j]) nu[c] += Rational(static_cast<std::int64_t>(j) + 1, denom);
    }
    return nu;
}

namespace detail {

inline void ordered_partitions(std::vector<ClockId> items, std::vector<std::vector<ClockId>>& prefix,
                               std::vector<std::vector<std::vector<ClockId>>>& out) {
    if (items.empty()) {
        out.push_back(prefix);
        return;
    }
    const std::size_t n = items.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<ClockId> block, rest;
        for (std::size_t k = 0; k < n; ++k) ((mask >> k) & 1u ? block : rest).push_back(items[k]);
        prefix.push_back(block);
        ordered_partitions(rest, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace detail

/// Every canonical region for the given maxima.
inline std::vector<ClockRegion> enumerate_regions(std::span<const std::uint32_t> maxima) {
    const std::size_t k = maxima.size();
    // Per-clock states: 2m+1 bounded ones (m+1 integers, m open intervals) plus beyond.
    std::vector<std::vector<ClockRegion::Clock>> states(k);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::uint32_t i = 0; i <= maxima[c]; ++i) {
            states[c].push_back({false, i, true});
            if (i < maxima[c]) states[c].push_back({false, i, false});
        }
        states[c].push_back(beyond_clock());
    }
    std::vector<ClockRegion> out;
    std::vector<std::size_t> pick(k, 0);
    for (;;) {
        ClockRegion base;
        std::vector<ClockId> fractional;
        for (ClockId c = 0; c < k; ++c) {
            base.clocks.push_back(states[c][pick[c]]);
            if (!base.clocks[c].beyond && !base.clocks[c].frac_zero) fractional.push_back(c);
        }
        std::vector<std::vector<ClockId>> prefix;
        std::vector<std::vector<std::vector<ClockId>>> orders;
        detail::ordered_partitions(fractional, prefix, orders);
        for (auto& order : orders) {
            ClockRegion r = base;
            r.frac_order = std::move(order);
            out.push_back(std::move(r));
        }
        std::size_t c = 0;
        while (c < k && ++pick[c] == states[c].size()) pick[c++] = 0;
        if (c == k) break;
    }
    return out;
}

inline std::string describe_region(const ClockRegion& r, std::span<const std::string> clock_names,
                                   std::span<const std::uint32_t> maxima) {
    std::string out;
    for (ClockId c = 0; c < r.clocks.size(); ++c) {
        const auto& cl = r.clocks[c];
        if (c) out += ';';
        out += clock_names[c];
        if (cl.beyond) {
            out += ">" + std::to_string(maxima[c]);
        } else if (cl.frac_zero) {
            out += "=" + std::to_string(cl.integer);
        } else {
            out += "∈(" + std::to_string(cl.integer) + "," + std::to_string(cl.integer + 1) + ")";
        }
    }
    if (r.fractional_clocks() >= 2) {
        out += "|frac ";
        for (std::size_t j = 0; j < r.frac_order.size(); ++j) {
            if (j) out += '<';
            for (std::size_t k = 0; k < r.frac_order[j].size(); ++k) {
                if (k) out += '=';
                out += clock_names[r.frac_order[j][k]];
            }
        }
    }
    return out;
}

class DeadlockError : public GameError {
public:
    explicit DeadlockError(std::string vertex)
        : GameError("region '" + vertex +
                    "' has no enabled transition; add an always-enabled self-loop to its location"),
          vertex_(std::move(vertex)) {}
    const std::string& vertex() const { return vertex_; }

private:
    std::string vertex_;
};

struct RegionGame {
    FiniteGame game;
    std::vector<std::pair<LocationId, ClockRegion>> origin;
    std::vector<std::uint32_t> maxima;
};

/// Reachable part of the region game from (initial location, zero region).
/// Edge (l, r) -a-> (l', [Y := 0] r'') for every transition (l, a, g, Y, l')
/// and every time successor r'' of r satisfying g.
inline RegionGame build_region_game(const PPTA& a, std::size_t cap = std::size_t{1} << 22) {
    if (auto report = validate_ppta(a); !report.empty()) {
        std::string msg = "invalid timed automaton:";
        for (const auto& line : report) msg += "\n  " + line;
        throw GameError(msg);
    }
    RegionGame rg;
    rg.maxima = clock_maxima(a);
    FiniteGame& g = rg.game;
    g.players = a.players;
    g.alphabet = a.alphabet;
    g.targets.assign(a.players, {});

    std::vector<std::vector<std::size_t>> outgoing(a.num_locations());
    for (std::size_t k = 0; k < a.transitions.size(); ++k) outgoing[a.transitions[k].from].push_back(k);

    std::vector<std::vector<bool>> is_goal(a.players, std::vector<bool>(a.num_locations(), false));
    for (PlayerId i = 0; i < a.players; ++i) {
        for (LocationId l : a.goals[i]) is_goal[i][l] = true;
    }

    std::map<std::pair<LocationId, ClockRegion>, VertexId> index;
    auto intern = [&](LocationId l, ClockRegion r) -> VertexId {
        auto key = std::make_pair(l, std::move(r));
        if (auto it = index.find(key); it != index.end()) return it->second;
        if (rg.origin.size() >= cap) {
            throw CapacityExceeded("region game exceeds " + std::to_string(cap) + " vertices", cap);
        }
        const auto id = static_cast<VertexId>(rg.origin.size());
        std::string name = a.location_names[l];
        if (a.num_clocks() > 0) name += "|" + describe_region(key.second, a.clocks, rg.maxima);
        g.vertex_names.push_back(std::move(name));
        g.owner.push_back(a.owner[l]);
        for (PlayerId i = 0; i < a.players; ++i) {
            if (is_goal[i][l]) g.targets[i].push_back(id);
        }
        rg.origin.push_back(key);
        index.emplace(std::move(key), id);
        return id;
    };

    g.initial = intern(a.initial, ClockRegion::zero(a.num_clocks()));
    std::set<Edge> edges;
    for (VertexId v = 0; v < rg.origin.size(); ++v) {
        const auto [loc, region] = rg.origin[v];
        const auto later = time_successors(region, rg.maxima);
        bool enabled = false;
        for (std::size_t k : outgoing[loc]) {
            const auto& t = a.transitions[k];
            for (const auto& r : later) {
                if (!guard_sat_region(t.guard, r, rg.maxima)) continue;
                const VertexId w = intern(t.to, reset_region(r, t.reset));
                edges.insert({v, t.letter, w});
                enabled = true;
            }
        }
        if (!enabled) throw DeadlockError(g.vertex_names[v]);
    }
    g.edges.assign(edges.begin(), edges.end());
    return rg;
}

}  // namespace spe
