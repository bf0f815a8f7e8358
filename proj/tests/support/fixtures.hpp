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

// Small hand-written games shared by the test suites.

#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "spe_reach/game.hpp"
#include "spe_reach/timed.hpp"

namespace spe::testing {

// Game over a one-letter alphabet. Edges are (from, to) name pairs.
inline FiniteGame make_game(std::size_t players, std::vector<std::string> names,
                            std::vector<PlayerId> owners,
                            std::initializer_list<std::pair<const char*, const char*>> edges,
                            std::vector<std::vector<std::string>> targets,
                            const std::string& initial) {
    FiniteGame g;
    g.players = players;
    g.alphabet = {"a"};
    g.vertex_names = std::move(names);
    g.owner = std::move(owners);
    auto id = [&](const std::string& n) {
        for (VertexId v = 0; v < g.vertex_names.size(); ++v) {
            if (g.vertex_names[v] == n) return v;
        }
        throw std::logic_error("fixture: unknown vertex " + n);
    };
    for (auto [from, to] : edges) g.edges.push_back({id(from), 0, id(to)});
    for (const auto& t : targets) {
        g.targets.emplace_back();
        for (const auto& n : t) g.targets.back().push_back(id(n));
    }
    g.initial = id(initial);
    return g;
}

// A -> B, B -> B; player 0 owns both and targets B.
inline FiniteGame g1() {
    return make_game(1, {"A", "B"}, {0, 0}, {{"A", "B"}, {"B", "B"}}, {{"B"}}, "A");
}

// A -> B, A -> C, B -> B, C -> C; player 0 owns all and targets B.
inline FiniteGame g2() {
    return make_game(1, {"A", "B", "C"}, {0, 0, 0},
                     {{"A", "B"}, {"A", "C"}, {"B", "B"}, {"C", "C"}}, {{"B"}}, "A");
}

// One location l0 owned by player 0 with a self-loop; F_0 empty.
inline FiniteGame lonely_loop() {
    return make_game(1, {"v"}, {0}, {{"v", "v"}}, {{}}, "v");
}

// Timed automaton: l0 -> l1 if c <= 1, l0 -> l2 if c > 1, self-loops on l1
// and l2 without guards or resets; player 0 owns everything and targets l1.
inline PPTA one_clock_ppta() {
    PPTA a;
    a.players = 1;
    a.alphabet = {"a", "b", "loop"};
    a.clocks = {"c"};
    a.location_names = {"l0", "l1", "l2"};
    a.owner = {0, 0, 0};
    a.transitions = {
        {0, 0, {{0, Comparator::le, 1}}, {}, 1},
        {0, 1, {{0, Comparator::gt, 1}}, {}, 2},
        {1, 2, {}, {}, 1},
        {2, 2, {}, {}, 2},
    };
    a.goals = {{1}};
    a.initial = 0;
    return a;
}

// Clock-free automaton with the shape of g2().
inline PPTA zero_clock_ppta() {
    PPTA a;
    a.players = 1;
    a.alphabet = {"a"};
    a.location_names = {"A", "B", "C"};
    a.owner = {0, 0, 0};
    a.transitions = {{0, 0, {}, {}, 1}, {0, 0, {}, {}, 2}, {1, 0, {}, {}, 1}, {2, 0, {}, {}, 2}};
    a.goals = {{1}};
    a.initial = 0;
    return a;
}

}  // namespace spe::testing
