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

// Labeling fixpoint over the extended game and the constrained-existence
// decision built on it.
//
// A labeling assigns 0/1 to every extended vertex. A play is consistent with a
// labeling when, at every position owned by player i, the suffix from that
// position is winning for i whenever the label there is 1. Starting from the
// all-zero labeling, each step sets the label of a vertex v owned by i to
//
//     max over successors v' of  min { gain_i(rho) | rho from v' consistent }
//
// and the limit labels characterize exactly the outcomes of subgame perfect
// equilibria: an SPE with gain p exists iff a play from the initial vertex
// with gain p is consistent with the limit labeling.

#pragma once

#include <deque>
#include <functional>
#include <optional>

#include "extended.hpp"

namespace spe {

class Labeling {
public:
    Labeling() = default;
    explicit Labeling(std::size_t n, std::uint8_t fill = 0) : values_(n, fill) {}

    std::size_t size() const { return values_.size(); }
    std::uint8_t operator[](VertexId v) const { return values_[v]; }
    std::uint8_t& operator[](VertexId v) { return values_[v]; }
    std::span<const std::uint8_t> values() const { return values_; }

    friend bool operator==(const Labeling&, const Labeling&) = default;

    friend bool pointwise_leq(const Labeling& a, const Labeling& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a.values_[k] > b.values_[k]) return false;
        }
        return true;
    }

private:
    std::vector<std::uint8_t> values_;
};

/// Checks consistency directly from the definition. Suffix gains are computed
/// backwards through the prefix; every cycle position has the gain of the
/// whole cycle.
inline bool is_consistent(const ExtendedGame& x, const Labeling& lambda,
                          std::span<const VertexId> prefix,
                          std::span<const VertexId> cycle) {
    if (cycle.empty()) throw GameError("lasso cycle is empty");
    auto check_vertex = [&](VertexId v) {
        if (v >= x.num_vertices()) {
            throw GameError("lasso visits unknown extended vertex " + std::to_string(v));
        }
        if (v >= lambda.size()) {
            throw GameError("labeling is undefined on extended vertex " + std::to_string(v));
        }
    };
    PlayerSet suffix = 0;
    for (VertexId v : cycle) {
        check_vertex(v);
        suffix |= x.satisfied[v];
    }
    for (VertexId v : cycle) {
        if (lambda[v] && !contains(suffix, x.owner(v))) return false;
    }
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
        check_vertex(*it);
        suffix |= x.satisfied[*it];
        if (lambda[*it] && !contains(suffix, x.owner(*it))) return false;
    }
    return true;
}

inline bool is_consistent(const ExtendedGame& x, const Labeling& lambda,
                          const LassoPlay& rho) {
    require_valid_lasso(x.game, rho);
    return is_consistent(x, lambda, rho.prefix, rho.cycle);
}

/// Search for consistent plays with a prescribed gain profile p. With W the
/// winners and L the losers of p, a play has gain p and is consistent iff it
/// never visits a vertex whose satisfied set meets L, never visits a vertex
/// owned by a loser with label 1, and eventually reaches satisfied set W.
/// After also removing vertices with no way to continue forever, such a play
/// exists from v iff a vertex with satisfied set W is reachable from v.
class ConsistentPlaySearch {
public:
    explicit ConsistentPlaySearch(const ExtendedGame& x) : x_(&x), pred_(x.num_vertices()) {
        for (VertexId v = 0; v < x.num_vertices(); ++v) {
            for (VertexId w : x.succ[v]) pred_[w].push_back(v);
        }
    }

    /// alive[v] = 1 iff v survives the pruning for profile p.
    std::vector<std::uint8_t> surviving(const Labeling& lambda, const GainProfile& p) const {
        const ExtendedGame& x = *x_;
        const std::size_t n = x.num_vertices();
        const PlayerSet losers = p.losers();
        std::vector<std::uint8_t> alive(n, 0);
        for (VertexId v = 0; v < n; ++v) {
            alive[v] = (x.satisfied[v] & losers) == 0 &&
                       !(contains(losers, x.owner(v)) && lambda[v] == 1);
        }
        std::vector<std::uint32_t> out_degree(n, 0);
        std::deque<VertexId> dead;
        for (VertexId v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            for (VertexId w : x.succ[v]) out_degree[v] += alive[w];
            if (out_degree[v] == 0) dead.push_back(v);
        }
        while (!dead.empty()) {
            const VertexId v = dead.front();
            dead.pop_front();
            alive[v] = 0;
            for (VertexId u : pred_[v]) {
                if (alive[u] && --out_degree[u] == 0) dead.push_back(u);
            }
        }
        return alive;
    }

    /// starts[v] = 1 iff some consistent play from v has gain profile p.
    std::vector<std::uint8_t> starts(const Labeling& lambda, const GainProfile& p) const {
        const ExtendedGame& x = *x_;
        auto alive = surviving(lambda, p);
        std::vector<std::uint8_t> mark(x.num_vertices(), 0);
        std::deque<VertexId> queue;
        for (VertexId v = 0; v < x.num_vertices(); ++v) {
            if (alive[v] && x.satisfied[v] == p.winners()) {
                mark[v] = 1;
                queue.push_back(v);
            }
        }
        while (!queue.empty()) {
            const VertexId v = queue.front();
            queue.pop_front();
            for (VertexId u : pred_[v]) {
                if (alive[u] && !mark[u]) {
                    mark[u] = 1;
                    queue.push_back(u);
                }
            }
        }
        return mark;
    }

    /// Shortest path from start to a vertex with satisfied set W, closed by
    /// the first cycle met when always taking the smallest surviving successor.
    std::optional<LassoPlay> witness(const Labeling& lambda, VertexId start,
                                     const GainProfile& p) const {
        const ExtendedGame& x = *x_;
        auto alive = surviving(lambda, p);
        if (!alive[start]) return std::nullopt;

        constexpr VertexId kNone = ~VertexId{0};
        std::vector<VertexId> parent(x.num_vertices(), kNone);
        std::deque<VertexId> queue{start};
        parent[start] = start;
        std::optional<VertexId> goal;
        while (!queue.empty()) {
            const VertexId v = queue.front();
            queue.pop_front();
            if (x.satisfied[v] == p.winners()) {
                goal = v;
                break;
            }
            for (VertexId w : x.succ[v]) {
                if (alive[w] && parent[w] == kNone) {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if (!goal) return std::nullopt;

        std::vector<VertexId> path;
        for (VertexId v = *goal; v != start; v = parent[v]) path.push_back(v);
        path.push_back(start);
        std::reverse(path.begin(), path.end());

        // Every surviving vertex has a surviving successor, so this walk closes.
        constexpr std::size_t kUnseen = ~std::size_t{0};
        std::vector<std::size_t> seen_at(x.num_vertices(), kUnseen);
        for (std::size_t k = 0; k < path.size(); ++k) seen_at[path[k]] = k;
        VertexId cur = path.back();
        for (;;) {
            VertexId next = kNone;
            for (VertexId w : x.succ[cur]) {
                if (alive[w]) {
                    next = w;
                    break;
                }
            }
            if (seen_at[next] != kUnseen) {
                LassoPlay rho;
                rho.prefix.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(seen_at[next]));
                rho.cycle.assign(path.begin() + static_cast<std::ptrdiff_t>(seen_at[next]), path.end());
                return rho;
            }
            seen_at[next] = path.size();
            path.push_back(next);
            cur = next;
        }
    }

private:
    const ExtendedGame* x_;
    std::vector<std::vector<VertexId>> pred_;
};

/// A consistent lasso from `start` with gain exactly p, if one exists.
inline std::optional<LassoPlay> exists_consistent_play(const ExtendedGame& x,
                                                       const Labeling& lambda,
                                                       VertexId start,
                                                       const GainProfile& p) {
    if (start >= x.num_vertices()) {
        throw PreconditionError("start vertex " + std::to_string(start) +
                                " is not an extended vertex");
    }
    if (lambda.size() != x.num_vertices()) throw GameError("labeling is not total");
    if (p.size() != x.game.players) throw PreconditionError("gain profile has wrong length");
    return ConsistentPlaySearch(x).witness(lambda, start, p);
}

/// One application of the labeling recurrence. A successor from which no
/// consistent play exists at all contributes min = 1.
inline Labeling lambda_step(const ExtendedGame& x, const ConsistentPlaySearch& search,
                            const Labeling& lambda) {
    const std::size_t n = x.num_vertices();
    const std::size_t players = x.game.players;
    // can_lose[v]: players i for which some consistent play from v has gain_i = 0.
    std::vector<PlayerSet> can_lose(n, 0);
    for (PlayerSet w = 0; w < all_players(players); ++w) {
        const GainProfile p(players, w);
        const auto from = search.starts(lambda, p);
        for (VertexId v = 0; v < n; ++v) {
            if (from[v]) can_lose[v] |= p.losers();
        }
    }
    Labeling next(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        const PlayerId i = x.owner(v);
        for (VertexId w : x.succ[v]) {
            if (!contains(can_lose[w], i)) {
                next[v] = 1;
                break;
            }
        }
    }
    return next;
}

inline Labeling lambda_step(const ExtendedGame& x, const Labeling& lambda) {
    if (lambda.size() != x.num_vertices()) throw GameError("labeling is not total");
    return lambda_step(x, ConsistentPlaySearch(x), lambda);
}

struct FixpointResult {
    Labeling labeling;
    // Least k with lambda^{k+1} == lambda^k.
    std::size_t k_star = 0;
    // Number of lambda_step applications performed (k_star + 1).
    std::size_t steps = 0;
};

/// Iterates from the all-zero labeling until two consecutive labelings agree.
/// `on_step(k, lambda_k)` is called for every labeling computed, starting at k = 0.
inline FixpointResult compute_lambda_star(
    const ExtendedGame& x,
    const std::function<void(std::size_t, const Labeling&)>& on_step = {}) {
    const ConsistentPlaySearch search(x);
    Labeling current(x.num_vertices(), 0);
    if (on_step) on_step(0, current);
    for (std::size_t k = 0;; ++k) {
        Labeling next = lambda_step(x, search, current);
        if (on_step) on_step(k + 1, next);
        if (next == current) return {std::move(current), k, k + 1};
        current = std::move(next);
    }
}

struct Witness {
    GainProfile gain;
    LassoPlay extended;  // over extended vertices
    LassoPlay base;      // projected onto the original game
};

struct Decision {
    bool answer = false;
    std::optional<Witness> witness;
};

/// Holds the extended game and its limit labeling so that several constraint
/// profiles can be decided against one game.
class Solver {
public:
    explicit Solver(FiniteGame g, std::size_t cap = kDefaultVertexCap)
        : game_(std::move(g)),
          extended_(build_extended_game(game_, cap)),
          fixpoint_(compute_lambda_star(extended_)) {}

    const FiniteGame& game() const { return game_; }
    const ExtendedGame& extended() const { return extended_; }
    const FixpointResult& fixpoint() const { return fixpoint_; }
    const Labeling& lambda_star() const { return fixpoint_.labeling; }

    /// Profiles in [lower, upper] are tried in ascending order of their
    /// winner bit mask (player 0 least significant); the first hit is returned.
    Decision decide(const ConstraintProfile& c) const {
        const std::size_t players = game_.players;
        if (c.lower.size() != players || c.upper.size() != players) {
            throw PreconditionError("constraint has " + std::to_string(c.lower.size()) +
                                    " entries for a " + std::to_string(players) +
                                    "-player game");
        }
        if (!c.well_formed()) throw PreconditionError("constraint lower bound exceeds upper bound");
        const ConsistentPlaySearch search(extended_);
        for (PlayerSet w = 0; w <= all_players(players); ++w) {
            const GainProfile p(players, w);
            if (!c.admits(p)) continue;
            if (auto rho = search.witness(lambda_star(), extended_.initial(), p)) {
                Witness wit{p, *rho, project(*rho)};
                return {true, std::move(wit)};
            }
        }
        return {false, std::nullopt};
    }

private:
    LassoPlay project(const LassoPlay& rho) const {
        LassoPlay out;
        for (VertexId v : rho.prefix) out.prefix.push_back(extended_.base[v]);
        for (VertexId v : rho.cycle) out.cycle.push_back(extended_.base[v]);
        return roll_back(std::move(out));
    }

    FiniteGame game_;
    ExtendedGame extended_;
    FixpointResult fixpoint_;
};

inline Decision decide_constrained_existence(const FiniteGame& g, const ConstraintProfile& c,
                                             std::size_t cap = kDefaultVertexCap) {
    return Solver(g, cap).decide(c);
}

}  // namespace spe
