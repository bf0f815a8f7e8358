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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "spe_reach/cli.hpp"

using namespace spe;
using namespace spe::cli;
using Catch::Matchers::ContainsSubstring;

namespace {

const std::string kSamples = SPE_SAMPLES_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

template <typename F>
Run capture(F&& f) {
    std::ostringstream out, err;
    const int code = f(out, err);
    return {code, out.str(), err.str()};
}

Run solve(const std::string& file, std::vector<std::string> flags, bool witness = false, bool lambda = false,
          bool oracle = false) {
    SolveOptions opt;
    opt.player_flags = std::move(flags);
    opt.witness = witness;
    opt.lambda = lambda;
    opt.oracle = oracle;
    return capture([&](auto& o, auto& e) { return run_solve(kSamples + "/" + file, opt, o, e); });
}

Run solve_timed(const std::string& file, std::vector<std::string> flags, std::string regions_out = "") {
    SolveOptions opt;
    opt.player_flags = std::move(flags);
    opt.regions_out = std::move(regions_out);
    opt.oracle = true;
    return capture([&](auto& o, auto& e) { return run_solve_timed(kSamples + "/" + file, opt, o, e); });
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("spe_reach_test_" + name)).string();
}

int exit_status(const std::string& args) {
    const std::string cmd = std::string(SPE_REACH_BINARY) + " " + args + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST_CASE("constraint flags") {
    const auto spec = parse_constraint({"0=win", "2=lose"}, 3);
    CHECK(spec.to_string() == "0=win 1=any 2=lose");
    const auto c = spec.profile();
    CHECK(c.lower == GainProfile(3, 0b001));
    CHECK(c.upper == GainProfile(3, 0b011));
    CHECK(parse_constraint({}, 2).profile() == ConstraintProfile::unconstrained(2));
    CHECK_THROWS_AS(parse_constraint({"3=win"}, 2), InputError);
    CHECK_THROWS_AS(parse_constraint({"0=maybe"}, 2), InputError);
    CHECK_THROWS_AS(parse_constraint({"win"}, 2), InputError);
    CHECK_THROWS_AS(parse_constraint({"-1=win"}, 2), InputError);
    CHECK(all_constraint_specs(2).size() == 9);
    CHECK(all_constraint_specs(3).size() == 27);
}

TEST_CASE("solve on G2") {
    const auto win = solve("g2.json", {"0=win"}, true);
    CHECK(win.code == kYes);
    CHECK(win.out == "YES\ngain: (1)\nwitness:\n  prefix A  {}\n  cycle  B  {0}\n");

    const auto lose = solve("g2.json", {"0=lose"}, true);
    CHECK(lose.code == kNo);
    CHECK(lose.out == "NO\n");

    const auto table = solve("g2.json", {}, false, true, true);
    CHECK(table.code == kYes);
    CHECK_THAT(table.out, ContainsSubstring("lambda*: k* = 1 (2 steps), 3 extended vertices"));
    CHECK_THAT(table.out, ContainsSubstring("  A  {}  owner 0  lambda 1"));
    CHECK_THAT(table.out, ContainsSubstring("  C  {}  owner 0  lambda 0"));
    CHECK_THAT(table.out, ContainsSubstring("oracle: agrees (YES)"));
}

TEST_CASE("input errors exit with 2") {
    const auto blocking = solve("blocking.json", {});
    CHECK(blocking.code == kInputError);
    CHECK_THAT(blocking.err, ContainsSubstring("'C'"));

    CHECK(solve("missing.json", {}).code == kInputError);
    CHECK(solve("g2.json", {"1=win"}).code == kInputError);
    CHECK(solve("timed_1clock.json", {}).code == kInputError);

    const auto dead = solve_timed("timed_deadlock.json", {});
    CHECK(dead.code == kInputError);
    CHECK_THAT(dead.err, ContainsSubstring("l1|c>1"));
}

TEST_CASE("capacity limit exits with 3") {
    SolveOptions opt;
    opt.cap = 2;
    const auto r = capture([&](auto& o, auto& e) { return run_solve(kSamples + "/g2.json", opt, o, e); });
    CHECK(r.code == kCapacityExceeded);
    CHECK_THAT(r.err, ContainsSubstring("SPE_REACH_MAX_EXT_VERTICES"));
    const auto t = capture([&](auto& o, auto& e) { return run_regions(kSamples + "/timed_1clock.json", 3, o, e); });
    CHECK(t.code == kCapacityExceeded);
}

TEST_CASE("timed pipeline") {
    const auto win = solve_timed("timed_1clock.json", {"0=win"});
    CHECK(win.code == kYes);
    CHECK_THAT(win.out, ContainsSubstring("oracle: agrees (YES)"));
    const auto lose = solve_timed("timed_1clock.json", {"0=lose"});
    CHECK(lose.code == kNo);
    CHECK_THAT(lose.out, ContainsSubstring("oracle: agrees (NO)"));

    for (const std::string flag : {"0=win", "0=lose", "0=any"}) {
        CHECK(solve_timed("timed_0clock.json", {flag}).code == solve("g2.json", {flag}).code);
    }

    SolveOptions opt;
    opt.player_flags = {"0=win"};
    opt.witness = true;
    const auto shown = capture([&](auto& o, auto& e) { return run_solve_timed(kSamples + "/timed_1clock.json", opt, o, e); });
    CHECK_THAT(shown.out, ContainsSubstring("prefix l0|c=0"));
    CHECK_THAT(shown.out, ContainsSubstring("cycle  l1|c=0"));
}

TEST_CASE("emitted region games solve like the timed input") {
    for (const std::string file : {"timed_1clock.json", "timed_0clock.json", "timed_2clock.json"}) {
        const auto emitted = capture([&](auto& o, auto& e) { return run_regions(kSamples + "/" + file, kDefaultVertexCap, o, e); });
        REQUIRE(emitted.code == 0);
        const std::string path = temp_path(file);
        {
            std::ofstream f(path);
            f << emitted.out;
        }
        const auto written = temp_path("written_" + file);
        const auto ppta = load_ppta(kSamples + "/" + file);
        for (const auto& spec : all_constraint_specs(ppta.players)) {
            std::vector<std::string> flags;
            std::istringstream words(spec.to_string());
            for (std::string w; words >> w;) flags.push_back(w);
            SolveOptions opt;
            opt.player_flags = flags;
            opt.witness = true;
            const auto direct = capture([&](auto& o, auto& e) { return run_solve(path, opt, o, e); });
            opt.regions_out = written;
            const auto timed = capture([&](auto& o, auto& e) { return run_solve_timed(kSamples + "/" + file, opt, o, e); });
            CHECK(direct.code == timed.code);
            CHECK(direct.out == timed.out);
        }
        std::ifstream back(written);
        std::stringstream contents;
        contents << back.rdbuf();
        CHECK(contents.str() == emitted.out);
        std::filesystem::remove(path);
        std::filesystem::remove(written);
    }

    const auto zero = capture([&](auto& o, auto& e) { return run_regions(kSamples + "/timed_0clock.json", kDefaultVertexCap, o, e); });
    CHECK(parse_game(nlohmann::json::parse(zero.out)).num_vertices() == 3);
}

TEST_CASE("oracle check") {
    SolveOptions opt;
    const auto r = capture([&](auto& o, auto& e) { return run_oracle_check(kSamples + "/two_player.json", opt, o, e); });
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("lambda*: agree"));
    CHECK_THAT(r.out, ContainsSubstring("ok   0=any 1=any"));
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 10);
}

TEST_CASE("executable exit codes") {
    const std::string g2 = kSamples + "/g2.json";
    CHECK(exit_status("solve " + g2 + " --player 0=win") == 0);
    CHECK(exit_status("solve " + g2 + " --player 0=lose") == 1);
    CHECK(exit_status("solve " + kSamples + "/blocking.json") == 2);
    CHECK(exit_status("solve") == 2);
    CHECK(exit_status("frobnicate") == 2);
    CHECK(exit_status("solve-timed " + kSamples + "/timed_1clock.json --player 0=win") == 0);
    CHECK(exit_status("solve-timed " + kSamples + "/timed_deadlock.json") == 2);
    CHECK(exit_status("regions " + kSamples + "/timed_1clock.json") == 0);
    CHECK(exit_status("oracle-check " + g2) == 0);
    CHECK(exit_status("--help") == 0);
    CHECK(exit_status("solve " + g2 + " --player 0=win --witness --lambda --oracle") == 0);
    // capacity comes from the environment
    const std::string cmd = "SPE_REACH_MAX_EXT_VERTICES=2 " + std::string(SPE_REACH_BINARY) + " solve " + g2 + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(raw) == 3);
    const std::string bad = "SPE_REACH_MAX_EXT_VERTICES=lots " + std::string(SPE_REACH_BINARY) + " solve " + g2 + " >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(bad.c_str())) == 2);
}
