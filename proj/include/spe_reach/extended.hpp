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

// Extended game: the product of a reachability game with the set of players
// that have already visited their target set. Only the part reachable from
// the initial vertex is materialized.

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>

#include "game.hpp"

namespace spe {

inline constexpr std::size_t kDefaultVertexCap = std::size_t{1} << 22;

struct ExtendedGame {
    // Arena over extended vertices. targets[i] = { x | i in satisfied[x] }.
    FiniteGame game;
    std::vector<VertexId> base;          // origin: underlying vertex
    std::vector<PlayerSet> satisfied;    // origin: players already satisfied
    std::vector<std::vector<VertexId>> succ;

    std::size_t num_vertices() const { return base.size(); }
    VertexId initial() const { return game.initial; }
    PlayerId owner(VertexId x) const { return game.owner[x]; }

    /// Index of (v, I) if it was materialized.
    std::optional<VertexId> find(VertexId v, PlayerSet I) const {
        auto it = index_.find(key(v, I));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::string describe(VertexId x, const FiniteGame& g) const {
        return g.vertex_names[base[x]] + " " + format_player_set(satisfied[x]);
    }

private:
    static std::uint64_t key(VertexId v, PlayerSet I) {
        return (std::uint64_t{v} << 32) | I;
    }
    std::unordered_map<std::uint64_t, VertexId> index_;

    friend ExtendedGame build_extended_game(const FiniteGame&, std::size_t);
};

/// Breadth-first unfolding of (v0, I0) where I0 = players targeting v0, with
/// edges ((v,I), a, (v', I | targets-of(v'))). Throws CapacityExceeded if more
/// than `cap` extended vertices are reachable.
inline ExtendedGame build_extended_game(const FiniteGame& g,
                                        std::size_t cap = kDefaultVertexCap) {
    require_valid(g);
    const auto masks = target_masks(g);

    std::vector<std::vector<std::pair<LetterId, VertexId>>> moves(g.num_vertices());
    for (const Edge& e : g.edges) moves[e.from].emplace_back(e.letter, e.to);
    for (auto& m : moves) {
        std::sort(m.begin(), m.end());
        m.erase(std::unique(m.begin(), m.end()), m.end());
    }

    ExtendedGame x;
    x.game.players = g.players;
    x.game.alphabet = g.alphabet;
    x.game.targets.assign(g.players, {});

    std::deque<VertexId> queue;
    auto intern = [&](VertexId v, PlayerSet I) -> VertexId {
        auto [it, fresh] = x.index_.try_emplace(ExtendedGame::key(v, I),
                                                static_cast<VertexId>(x.base.size()));
        if (fresh) {
            if (x.base.size() >= cap) {
                throw CapacityExceeded("extended game exceeds " + std::to_string(cap) +
                                           " vertices",
                                       cap);
            }
            const VertexId id = it->second;
            x.base.push_back(v);
            x.satisfied.push_back(I);
            x.game.vertex_names.push_back(g.vertex_names[v] + format_player_set(I));
            x.game.owner.push_back(g.owner[v]);
            for (PlayerId i = 0; i < g.players; ++i) {
                if (contains(I, i)) x.game.targets[i].push_back(id);
            }
            queue.push_back(id);
        }
        return it->second;
    };

    x.game.initial = intern(g.initial, masks[g.initial]);
    while (!queue.empty()) {
        const VertexId cur = queue.front();
        queue.pop_front();
        const VertexId v = x.base[cur];
        const PlayerSet I = x.satisfied[cur];
        for (auto [letter, w] : moves[v]) {
            const VertexId next = intern(w, I | masks[w]);
            x.game.edges.push_back({cur, letter, next});
        }
    }
    x.succ = successor_lists(x.game);
    return x;
}

/// The extended play corresponding to a base play from v0. Since the
/// satisfied set only grows, the extended trace becomes periodic after at
/// most players+1 unrollings of the base cycle.
inline LassoPlay lift_lasso(const ExtendedGame& x, const FiniteGame& g,
                            const LassoPlay& rho) {
    require_valid_lasso(g, rho);
    if (rho.first() != g.initial) {
        throw PreconditionError("lasso does not start at the initial vertex '" +
                                g.vertex_names[g.initial] + "'");
    }
    const auto masks = target_masks(g);
    LassoPlay out;
    PlayerSet I = 0;
    auto push = [&](VertexId v) {
        I |= masks[v];
        auto id = x.find(v, I);
        if (!id) throw PreconditionError("extended game does not belong to this base game");
        out.prefix.push_back(*id);
    };
    for (VertexId v : rho.prefix) push(v);
    for (;;) {
        const PlayerSet before = I;
        const std::size_t start = out.prefix.size();
        for (VertexId v : rho.cycle) push(v);
        if (I == before) {
            out.cycle.assign(out.prefix.begin() + static_cast<std::ptrdiff_t>(start),
                             out.prefix.end());
            out.prefix.resize(start);
            break;
        }
    }
    return roll_back(std::move(out));
}

}  // namespace spe
