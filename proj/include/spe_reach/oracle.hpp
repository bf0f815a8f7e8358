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

// Brute-force reference decision procedure for small instances.
//
// Runs the same labeling recurrence as fixpoint.hpp but answers every inner
// question ("is there a consistent play from v with gain ...?") by listing
// lassos and checking each one against the definition. No graph pruning or
// reachability search from fixpoint.hpp is used here.
//
// Lassos whose vertices are pairwise distinct are enough: a consistent play
// reaches its final satisfied set at some position; cutting the loops before
// that position and stopping at the first repeated vertex after it leaves a
// lasso built from vertices of the original play, each with the same suffix
// gain as before, so it is still consistent and has the same gain.

#pragma once

#include "fixpoint.hpp"

namespace spe {

class OracleRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kOracleMaxVertices = 64;
inline constexpr std::size_t kOracleMaxPlayers = 6;

/// Lassos from `start` with a walk prefix of length <= max_prefix and a simple
/// cycle of length in [1, max_cycle]. Each play is listed once: a lasso whose
/// last prefix vertex equals its last cycle vertex is skipped, since rolling
/// it back gives a shorter listed lasso for the same play.
inline std::vector<LassoPlay> enumerate_lassos(const FiniteGame& g, VertexId start,
                                               std::size_t max_prefix, std::size_t max_cycle) {
    if (max_cycle < 1) throw PreconditionError("cycle bound must be at least 1");
    const auto succ = successor_lists(g);
    std::vector<LassoPlay> out;

    std::vector<VertexId> prefix;
    std::vector<VertexId> cycle;
    std::vector<bool> in_cycle(g.num_vertices(), false);

    auto emit_cycles = [&](auto&& self, VertexId head) -> void {
        const VertexId cur = cycle.back();
        for (VertexId w : succ[cur]) {
            if (w == head) {
                if (prefix.empty() || prefix.back() != cycle.back()) out.push_back({prefix, cycle});
            } else if (!in_cycle[w] && cycle.size() < max_cycle) {
                in_cycle[w] = true;
                cycle.push_back(w);
                self(self, head);
                cycle.pop_back();
                in_cycle[w] = false;
            }
        }
    };
    auto cycles_from = [&](VertexId head) {
        in_cycle[head] = true;
        cycle.assign(1, head);
        emit_cycles(emit_cycles, head);
        in_cycle[head] = false;
        cycle.clear();
    };
    auto walk = [&](auto&& self) -> void {
        if (prefix.empty()) {
            cycles_from(start);
        } else {
            for (VertexId w : succ[prefix.back()]) cycles_from(w);
        }
        if (prefix.size() == max_prefix) return;
        if (prefix.empty()) {
            prefix.push_back(start);
            self(self);
            prefix.pop_back();
        } else {
            for (VertexId w : succ[prefix.back()]) {
                prefix.push_back(w);
                self(self);
                prefix.pop_back();
            }
        }
    };
    walk(walk);
    return out;
}

/// Calls visit(prefix, cycle) for every lasso from start whose vertices are
/// pairwise distinct; stops early when visit returns false.
template <typename Visit>
void for_each_simple_lasso(const std::vector<std::vector<VertexId>>& succ, VertexId start,
                           Visit&& visit) {
    std::vector<VertexId> path{start};
    std::vector<std::size_t> position(succ.size(), ~std::size_t{0});
    position[start] = 0;
    bool stop = false;
    auto dfs = [&](auto&& self) -> void {
        const VertexId cur = path.back();
        for (VertexId w : succ[cur]) {
            if (stop) return;
            if (position[w] != ~std::size_t{0}) {
                std::span<const VertexId> all(path);
                if (!visit(all.first(position[w]), all.subspan(position[w]))) stop = true;
            } else {
                position[w] = path.size();
                path.push_back(w);
                self(self);
                path.pop_back();
                position[w] = ~std::size_t{0};
            }
        }
    };
    dfs(dfs);
}

namespace detail {

inline void require_oracle_size(const ExtendedGame& x, std::size_t max_vertices) {
    if (x.num_vertices() > max_vertices) {
        throw OracleRefused("oracle refuses extended game with " +
                            std::to_string(x.num_vertices()) + " vertices (limit " +
                            std::to_string(max_vertices) + ")");
    }
    if (x.game.players > kOracleMaxPlayers) {
        throw OracleRefused("oracle supports at most " + std::to_string(kOracleMaxPlayers) +
                            " players");
    }
}

inline PlayerSet lasso_gain(const ExtendedGame& x, std::span<const VertexId> prefix,
                            std::span<const VertexId> cycle) {
    PlayerSet won = 0;
    for (VertexId v : prefix) won |= x.satisfied[v];
    for (VertexId v : cycle) won |= x.satisfied[v];
    return won;
}

}  // namespace detail

/// Bit w of the result is set iff a lambda-consistent play from start has
/// winner set w.
inline std::uint64_t oracle_profiles(const ExtendedGame& x, const Labeling& lambda,
                                     VertexId start) {
    const auto succ = successor_lists(x.game);
    std::uint64_t found = 0;
    for_each_simple_lasso(succ, start, [&](auto prefix, auto cycle) {
        if (is_consistent(x, lambda, prefix, cycle)) {
            found |= std::uint64_t{1} << detail::lasso_gain(x, prefix, cycle);
        }
        return true;
    });
    return found;
}

/// Same as oracle_profiles, over an explicit list of lassos.
inline std::uint64_t oracle_profiles(const ExtendedGame& x, const Labeling& lambda,
                                     const std::vector<LassoPlay>& lassos) {
    std::uint64_t found = 0;
    for (const auto& rho : lassos) {
        if (is_consistent(x, lambda, rho.prefix, rho.cycle)) {
            found |= std::uint64_t{1} << detail::lasso_gain(x, rho.prefix, rho.cycle);
        }
    }
    return found;
}

inline Labeling oracle_lambda_star(const ExtendedGame& x,
                                   std::size_t max_vertices = kOracleMaxVertices) {
    detail::require_oracle_size(x, max_vertices);
    const std::size_t n = x.num_vertices();
    const PlayerSet everyone = all_players(x.game.players);
    const auto succ = successor_lists(x.game);

    Labeling lambda(n, 0);
    for (;;) {
        // can_lose[v]: players i having a consistent play from v that i loses.
        std::vector<PlayerSet> can_lose(n, 0);
        for (VertexId v = 0; v < n; ++v) {
            const PlayerSet possible = everyone & ~x.satisfied[v];
            if (possible == 0) continue;
            for_each_simple_lasso(succ, v, [&](auto prefix, auto cycle) {
                if (is_consistent(x, lambda, prefix, cycle)) {
                    can_lose[v] |= everyone & ~detail::lasso_gain(x, prefix, cycle);
                }
                return can_lose[v] != possible;
            });
        }
        Labeling next(n, 0);
        for (VertexId v = 0; v < n; ++v) {
            for (VertexId w : succ[v]) {
                if (!contains(can_lose[w], x.owner(v))) next[v] = 1;
            }
        }
        if (next == lambda) return lambda;
        lambda = std::move(next);
    }
}

struct OracleResult {
    Labeling lambda;
    // Bit w set iff some SPE outcome from the initial vertex has winner set w.
    std::uint64_t profiles = 0;

    bool admits(const ConstraintProfile& c) const {
        for (PlayerSet w = 0; w < 64; ++w) {
            if (((profiles >> w) & 1u) && c.admits(GainProfile(c.lower.size(), w))) return true;
        }
        return false;
    }
};

inline OracleResult oracle_solve(const FiniteGame& g, std::size_t max_vertices = kOracleMaxVertices) {
    ExtendedGame x;
    try {
        x = build_extended_game(g, max_vertices);
    } catch (const CapacityExceeded&) {
        throw OracleRefused("oracle refuses extended games above " + std::to_string(max_vertices) +
                            " vertices");
    }
    OracleResult r{oracle_lambda_star(x, max_vertices), 0};
    r.profiles = oracle_profiles(x, r.lambda, x.initial());
    return r;
}

inline bool oracle_decide(const FiniteGame& g, const ConstraintProfile& c,
                          std::size_t max_vertices = kOracleMaxVertices) {
    if (c.lower.size() != g.players || !c.well_formed()) {
        throw PreconditionError("malformed constraint profile");
    }
    return oracle_solve(g, max_vertices).admits(c);
}

}  // namespace spe
