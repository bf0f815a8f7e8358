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

#include <catch_amalgamated.hpp>

#include <random>

#include "spe_reach/fixpoint.hpp"
#include "spe_reach/quotient.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace spe;
using namespace spe::testing;

namespace {

// Structural equality up to edge order and duplicates.
bool same_game(const FiniteGame& a, const FiniteGame& b) {
    auto edge_set = [](const FiniteGame& g) { return std::set<Edge>(g.edges.begin(), g.edges.end()); };
    auto target_sets = [](const FiniteGame& g) {
        std::vector<std::set<VertexId>> out;
        for (const auto& t : g.targets) out.emplace_back(t.begin(), t.end());
        return out;
    };
    return a.players == b.players && a.num_vertices() == b.num_vertices() && a.owner == b.owner &&
           a.initial == b.initial && edge_set(a) == edge_set(b) && target_sets(a) == target_sets(b);
}

}  // namespace

TEST_CASE("identity equivalence") {
    const auto g = g2();
    const auto id = EquivalenceMap::identity(g.num_vertices());
    CHECK(check_respects_partition(g, id));
    CHECK(check_respects_targets(g, id));
    CHECK(check_bisimulation(g, id));
    const auto q = quotient_game(g, id);
    CHECK(same_game(q.game, g));
    CHECK(q.game.vertex_names == g.vertex_names);
}

TEST_CASE("side-condition checkers reject bad classes") {
    auto g = make_game(2, {"A", "B", "C"}, {0, 1, 0}, {{"A", "B"}, {"A", "C"}, {"B", "B"}, {"C", "C"}},
                       {{"B"}, {}}, "A");
    CHECK_FALSE(check_respects_partition(g, {{0, 0, 1}}));
    CHECK(check_respects_partition(g, {{0, 1, 0}}));
    CHECK_FALSE(check_respects_targets(g, {{0, 1, 1}}));
    CHECK(check_respects_targets(g, {{0, 1, 0}}));

    // A has an 'a' move, D has only a 'b' move
    FiniteGame h = make_game(1, {"A", "D"}, {0, 0}, {{"A", "A"}}, {{}}, "A");
    h.alphabet.push_back("b");
    h.edges.push_back({1, 1, 1});
    CHECK_FALSE(check_bisimulation(h, {{0, 0}}));
    CHECK_THROWS_WITH(quotient_game(h, {{0, 0}}), Catch::Matchers::ContainsSubstring("bisimulation"));

    CHECK_THROWS_AS(check_respects_partition(g, {{0, 1}}), PreconditionError);
    CHECK_THROWS_AS(check_respects_partition(g, {{0, 2, 2}}), PreconditionError);
}

TEST_CASE("G2 with B and C merged is rejected") {
    CHECK_THROWS_WITH(quotient_game(g2(), {{0, 1, 1}}), Catch::Matchers::ContainsSubstring("target"));
}

TEST_CASE("cloned games quotient back to the original") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 100; ++round) {
        const auto g = random_game(rng, 1 + round % 6, 1 + round % 3);
        const auto cloned = clone_game(g, rng);
        REQUIRE(validate_game(cloned.game).empty());
        CHECK(check_respects_partition(cloned.game, cloned.clones));
        CHECK(check_respects_targets(cloned.game, cloned.clones));
        CHECK(check_bisimulation(cloned.game, cloned.clones));
        const auto q = quotient_game(cloned.game, cloned.clones);
        CHECK(same_game(q.game, g));
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            CHECK(q.members[v] == std::vector<VertexId>{2 * v, 2 * v + 1});
            CHECK(q.game.vertex_names[v] == "[" + g.vertex_names[v] + "#0," + g.vertex_names[v] + "#1]");
        }
    }
}

TEST_CASE("quotienting preserves every decision") {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 60; ++round) {
        const std::size_t players = 1 + round % 2;
        const auto g = random_game(rng, 2 + round % 4, players);
        const auto cloned = clone_game(g, rng);
        const Solver original(g);
        const Solver doubled(cloned.game);
        const Solver folded(quotient_game(cloned.game, cloned.clones).game);
        const Solver identity(quotient_game(g, EquivalenceMap::identity(g.num_vertices())).game);
        for (PlayerSet lo = 0; lo <= all_players(players); ++lo) {
            for (PlayerSet hi = lo; hi <= all_players(players); ++hi) {
                if ((lo & ~hi) != 0) continue;
                const ConstraintProfile c{GainProfile(players, lo), GainProfile(players, hi)};
                const bool expected = original.decide(c).answer;
                CHECK(doubled.decide(c).answer == expected);
                CHECK(folded.decide(c).answer == expected);
                CHECK(identity.decide(c).answer == expected);
            }
        }
    }
}
