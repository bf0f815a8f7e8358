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

// Explicit finite turn-based reachability games: arenas, lasso plays and
// gain profiles. Every other part of the library builds on these types.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spe {

using VertexId = std::uint32_t;
using PlayerId = std::uint32_t;
using LetterId = std::uint32_t;

// Bit i set <=> player i belongs to the set.
using PlayerSet = std::uint32_t;

// Extended games have up to |V| * 2^|players| vertices and profiles are
// enumerated exhaustively, so the player count is kept small.
inline constexpr std::size_t kMaxPlayers = 20;

class GameError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Raised when a product construction would exceed the configured vertex cap.
class CapacityExceeded : public std::runtime_error {
public:
    CapacityExceeded(std::string what, std::size_t cap)
        : std::runtime_error(std::move(what)), cap_(cap) {}
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

inline bool contains(PlayerSet set, PlayerId i) { return (set >> i) & 1u; }

inline PlayerSet all_players(std::size_t n) {
    return n >= 32 ? ~PlayerSet{0} : ((PlayerSet{1} << n) - 1u);
}

inline std::string format_player_set(PlayerSet set) {
    std::string out = "{";
    bool first = true;
    for (PlayerId i = 0; i < 32; ++i) {
        if (contains(set, i)) {
            if (!first) out += ',';
            out += std::to_string(i);
            first = false;
        }
    }
    return out + "}";
}

/// One win/lose bit per player.
class GainProfile {
public:
    GainProfile() = default;
    GainProfile(std::size_t players, PlayerSet winners)
        : players_(players), bits_(winners & all_players(players)) {}

    std::size_t size() const { return players_; }
    PlayerSet winners() const { return bits_; }
    PlayerSet losers() const { return ~bits_ & all_players(players_); }
    bool operator[](PlayerId i) const { return contains(bits_, i); }

    friend bool operator==(const GainProfile&, const GainProfile&) = default;

    // Pointwise order on {0,1}^n.
    friend bool pointwise_leq(const GainProfile& a, const GainProfile& b) {
        return a.players_ == b.players_ && (a.bits_ & ~b.bits_) == 0;
    }

    std::string to_string() const {
        std::string out = "(";
        for (PlayerId i = 0; i < players_; ++i) {
            if (i) out += ',';
            out += (*this)[i] ? '1' : '0';
        }
        return out + ")";
    }

private:
    std::size_t players_ = 0;
    PlayerSet bits_ = 0;
};

/// Bounds x <= Gain <= y of the constrained existence problem.
struct ConstraintProfile {
    GainProfile lower;
    GainProfile upper;

    bool well_formed() const {
        return lower.size() == upper.size() && pointwise_leq(lower, upper);
    }
    bool admits(const GainProfile& p) const {
        return pointwise_leq(lower, p) && pointwise_leq(p, upper);
    }

    static ConstraintProfile unconstrained(std::size_t players) {
        return {GainProfile(players, 0), GainProfile(players, all_players(players))};
    }
    static ConstraintProfile exactly(const GainProfile& p) { return {p, p}; }

    friend bool operator==(const ConstraintProfile&, const ConstraintProfile&) = default;
};

struct Edge {
    VertexId from = 0;
    LetterId letter = 0;
    VertexId to = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Turn-based reachability game. Plain value type; use validate_game() before
/// handing a hand-built instance to the algorithms.
struct FiniteGame {
    std::size_t players = 1;
    std::vector<std::string> alphabet;
    std::vector<std::string> vertex_names;
    std::vector<PlayerId> owner;
    std::vector<Edge> edges;
    std::vector<std::vector<VertexId>> targets;  // one list per player
    VertexId initial = 0;

    std::size_t num_vertices() const { return vertex_names.size(); }
};

/// Deduplicated successor lists, sorted ascending. Letters are dropped: two
/// edges between the same pair of vertices denote one move.
inline std::vector<std::vector<VertexId>> successor_lists(const FiniteGame& g) {
    std::vector<std::vector<VertexId>> succ(g.num_vertices());
    for (const Edge& e : g.edges) {
        if (e.from < succ.size() && e.to < succ.size()) succ[e.from].push_back(e.to);
    }
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return succ;
}

/// target_masks(g)[v] = set of players whose target set contains v.
inline std::vector<PlayerSet> target_masks(const FiniteGame& g) {
    std::vector<PlayerSet> masks(g.num_vertices(), 0);
    for (PlayerId i = 0; i < g.targets.size() && i < 32; ++i) {
        for (VertexId v : g.targets[i]) {
            if (v < masks.size()) masks[v] |= PlayerSet{1} << i;
        }
    }
    return masks;
}

enum class ViolationKind {
    NoVertices,
    PlayerCount,
    TargetListCount,
    OwnerOutOfRange,
    DanglingEdge,
    LetterOutOfRange,
    DanglingTarget,
    InitialOutOfRange,
    BlockingVertex,
};

struct Violation {
    ViolationKind kind;
    std::size_t index;  // vertex, edge or player index depending on kind
    std::string message;
};

inline std::vector<Violation> validate_game(const FiniteGame& g) {
    std::vector<Violation> out;
    const std::size_t n = g.num_vertices();
    auto name = [&](VertexId v) {
        return v < n ? "'" + g.vertex_names[v] + "'" : "#" + std::to_string(v);
    };

    if (n == 0) out.push_back({ViolationKind::NoVertices, 0, "game has no vertices"});
    if (g.players == 0 || g.players > kMaxPlayers) {
        out.push_back({ViolationKind::PlayerCount, g.players,
                       "player count " + std::to_string(g.players) + " outside [1, " +
                           std::to_string(kMaxPlayers) + "]"});
    }
    if (g.targets.size() != g.players) {
        out.push_back({ViolationKind::TargetListCount, g.targets.size(),
                       "expected " + std::to_string(g.players) + " target lists, got " +
                           std::to_string(g.targets.size())});
    }
    if (g.owner.size() != n) {
        out.push_back({ViolationKind::OwnerOutOfRange, g.owner.size(),
                       "owner table has " + std::to_string(g.owner.size()) +
                           " entries for " + std::to_string(n) + " vertices"});
    }
    for (VertexId v = 0; v < std::min(n, g.owner.size()); ++v) {
        if (g.owner[v] >= g.players) {
            out.push_back({ViolationKind::OwnerOutOfRange, v,
                           "vertex " + name(v) + " has unknown owner " +
                               std::to_string(g.owner[v])});
        }
    }
    std::vector<bool> has_move(n, false);
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const Edge& e = g.edges[k];
        if (e.from >= n || e.to >= n) {
            out.push_back({ViolationKind::DanglingEdge, k,
                           "edge " + std::to_string(k) + " " + name(e.from) + " -> " +
                               name(e.to) + " references an unknown vertex"});
            continue;
        }
        if (e.letter >= g.alphabet.size()) {
            out.push_back({ViolationKind::LetterOutOfRange, k,
                           "edge " + std::to_string(k) + " uses unknown letter " +
                               std::to_string(e.letter)});
        }
        has_move[e.from] = true;
    }
    for (PlayerId i = 0; i < g.targets.size(); ++i) {
        for (VertexId v : g.targets[i]) {
            if (v >= n) {
                out.push_back({ViolationKind::DanglingTarget, i,
                               "target set of player " + std::to_string(i) +
                                   " contains unknown vertex " + name(v)});
            }
        }
    }
    if (n > 0 && g.initial >= n) {
        out.push_back({ViolationKind::InitialOutOfRange, g.initial,
                       "initial vertex " + name(g.initial) + " does not exist"});
    }
    for (VertexId v = 0; v < n; ++v) {
        if (!has_move[v]) {
            out.push_back({ViolationKind::BlockingVertex, v,
                           "vertex " + name(v) + " has no outgoing edge"});
        }
    }
    return out;
}

/// Throws GameError listing every violation, or returns normally.
inline void require_valid(const FiniteGame& g) {
    auto report = validate_game(g);
    if (report.empty()) return;
    std::ostringstream msg;
    msg << "invalid game:";
    for (const auto& v : report) msg << "\n  " << v.message;
    throw GameError(msg.str());
}

/// The infinite play prefix . cycle^omega. Letters are not recorded.
struct LassoPlay {
    std::vector<VertexId> prefix;
    std::vector<VertexId> cycle;

    VertexId first() const { return prefix.empty() ? cycle.front() : prefix.front(); }

    friend bool operator==(const LassoPlay&, const LassoPlay&) = default;
    friend auto operator<=>(const LassoPlay&, const LassoPlay&) = default;
};

/// Throws GameError if some consecutive pair of the lasso (including the
/// closing step cycle.back() -> cycle.front()) has no edge in g.
inline void require_valid_lasso(const FiniteGame& g, std::span<const VertexId> prefix,
                                std::span<const VertexId> cycle) {
    if (cycle.empty()) throw GameError("lasso cycle is empty");
    std::set<std::pair<VertexId, VertexId>> moves;
    for (const Edge& e : g.edges) moves.emplace(e.from, e.to);
    auto check = [&](VertexId a, VertexId b) {
        if (!moves.contains({a, b})) {
            auto nm = [&](VertexId v) {
                return v < g.num_vertices() ? g.vertex_names[v] : "#" + std::to_string(v);
            };
            throw GameError("lasso uses missing edge " + nm(a) + " -> " + nm(b));
        }
    };
    for (std::size_t k = 0; k + 1 < prefix.size(); ++k) check(prefix[k], prefix[k + 1]);
    if (!prefix.empty()) check(prefix.back(), cycle.front());
    for (std::size_t k = 0; k + 1 < cycle.size(); ++k) check(cycle[k], cycle[k + 1]);
    check(cycle.back(), cycle.front());
}

inline void require_valid_lasso(const FiniteGame& g, const LassoPlay& rho) {
    require_valid_lasso(g, rho.prefix, rho.cycle);
}

/// Player i wins iff some vertex of prefix or cycle lies in targets[i]; the
/// vertices visited by prefix . cycle^omega are exactly those.
inline GainProfile gain_of_lasso(const FiniteGame& g, const LassoPlay& rho) {
    require_valid_lasso(g, rho);
    const auto masks = target_masks(g);
    PlayerSet won = 0;
    for (VertexId v : rho.prefix) won |= masks[v];
    for (VertexId v : rho.cycle) won |= masks[v];
    return GainProfile(g.players, won);
}

/// Rolls a lasso into its shortest prefix: while the last prefix vertex equals
/// the last cycle vertex, the cycle is rotated right and the prefix shrinks.
/// Does not shorten a cycle that is a repetition of a smaller one.
inline LassoPlay roll_back(LassoPlay rho) {
    while (!rho.prefix.empty() && rho.prefix.back() == rho.cycle.back()) {
        std::rotate(rho.cycle.rbegin(), rho.cycle.rbegin() + 1, rho.cycle.rend());
        rho.prefix.pop_back();
    }
    return rho;
}

}  // namespace spe
