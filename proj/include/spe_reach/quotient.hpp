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

// Quotient of a finite game by a supplied equivalence. When the equivalence
// is a bisimulation that respects the owner partition and the target sets,
// the quotient has exactly the same SPE gain profiles as the original game.

#pragma once

#include <map>
#include <optional>
#include <set>

#include "game.hpp"

namespace spe {

/// class_of[v] = equivalence class of v; ids are dense in [0, num_classes()).
struct EquivalenceMap {
    std::vector<std::uint32_t> class_of;

    std::size_t num_classes() const {
        return class_of.empty()
                   ? 0
                   : std::size_t{*std::max_element(class_of.begin(), class_of.end())} + 1;
    }

    static EquivalenceMap identity(std::size_t n) {
        EquivalenceMap eq;
        eq.class_of.resize(n);
        for (std::uint32_t v = 0; v < n; ++v) eq.class_of[v] = v;
        return eq;
    }
};

namespace detail {

inline void require_total(const FiniteGame& g, const EquivalenceMap& eq) {
    if (eq.class_of.size() != g.num_vertices()) {
        throw PreconditionError("equivalence covers " + std::to_string(eq.class_of.size()) +
                                " vertices, game has " + std::to_string(g.num_vertices()));
    }
    std::vector<bool> used(eq.num_classes(), false);
    for (auto c : eq.class_of) used[c] = true;
    if (std::find(used.begin(), used.end(), false) != used.end()) {
        throw PreconditionError("equivalence class ids are not dense");
    }
}

// Compares a per-vertex attribute across each class.
template <typename Attr>
bool uniform_per_class(const FiniteGame& g, const EquivalenceMap& eq, Attr attr) {
    require_total(g, eq);
    std::vector<std::optional<decltype(attr(VertexId{}))>> seen(eq.num_classes());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        auto& slot = seen[eq.class_of[v]];
        auto value = attr(v);
        if (!slot) {
            slot = std::move(value);
        } else if (*slot != value) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

inline bool check_respects_partition(const FiniteGame& g, const EquivalenceMap& eq) {
    return detail::uniform_per_class(g, eq, [&](VertexId v) { return g.owner[v]; });
}

inline bool check_respects_targets(const FiniteGame& g, const EquivalenceMap& eq) {
    const auto masks = target_masks(g);
    return detail::uniform_per_class(g, eq, [&](VertexId v) { return masks[v]; });
}

/// eq is a bisimulation iff all members of a class have the same set of
/// (letter, successor class) moves.
inline bool check_bisimulation(const FiniteGame& g, const EquivalenceMap& eq) {
    detail::require_total(g, eq);
    std::vector<std::set<std::pair<LetterId, std::uint32_t>>> moves(g.num_vertices());
    for (const Edge& e : g.edges) moves[e.from].emplace(e.letter, eq.class_of[e.to]);
    return detail::uniform_per_class(g, eq, [&](VertexId v) { return moves[v]; });
}

struct QuotientGame {
    FiniteGame game;
    std::vector<std::vector<VertexId>> members;  // class id -> original vertices
};

inline QuotientGame quotient_game(const FiniteGame& g, const EquivalenceMap& eq) {
    require_valid(g);
    if (!check_respects_partition(g, eq)) {
        throw PreconditionError("equivalence does not respect the partition");
    }
    if (!check_respects_targets(g, eq)) {
        throw PreconditionError("equivalence does not respect the target sets");
    }
    if (!check_bisimulation(g, eq)) {
        throw PreconditionError("equivalence is not a bisimulation");
    }

    QuotientGame q;
    const std::size_t classes = eq.num_classes();
    q.members.resize(classes);
    for (VertexId v = 0; v < g.num_vertices(); ++v) q.members[eq.class_of[v]].push_back(v);

    FiniteGame& out = q.game;
    out.players = g.players;
    out.alphabet = g.alphabet;
    out.owner.resize(classes);
    out.vertex_names.resize(classes);
    for (std::uint32_t c = 0; c < classes; ++c) {
        const auto& m = q.members[c];
        out.owner[c] = g.owner[m.front()];
        if (m.size() == 1) {
            out.vertex_names[c] = g.vertex_names[m.front()];
        } else {
            std::string name = "[";
            for (std::size_t k = 0; k < m.size(); ++k) {
                if (k) name += ',';
                name += g.vertex_names[m[k]];
            }
            out.vertex_names[c] = name + "]";
        }
    }
    std::set<Edge> edges;
    for (const Edge& e : g.edges) edges.insert({eq.class_of[e.from], e.letter, eq.class_of[e.to]});
    out.edges.assign(edges.begin(), edges.end());
    out.targets.resize(g.players);
    for (PlayerId i = 0; i < g.players; ++i) {
        std::set<VertexId> t;
        for (VertexId v : g.targets[i]) t.insert(eq.class_of[v]);
        out.targets[i].assign(t.begin(), t.end());
    }
    out.initial = eq.class_of[g.initial];
    return q;
}

}  // namespace spe
