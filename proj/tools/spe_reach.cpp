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

#include <CLI11.hpp>

#include <iostream>

#include "spe_reach/cli.hpp"

int main(int argc, char** argv) {
    using namespace spe::cli;

    CLI::App app{"Constrained existence of subgame perfect equilibria in reachability games"};
    app.require_subcommand(1);

    SolveOptions opt;
    std::string path;

    auto add_solve_flags = [&](CLI::App* cmd) {
        cmd->add_option("file", path, "input JSON file")->required();
        cmd->add_option("--player", opt.player_flags, "constraint <i>=<win|lose|any> (repeatable)");
        cmd->add_flag("--witness", opt.witness, "print the witness gain profile and lasso");
        cmd->add_flag("--lambda", opt.lambda, "print the fixpoint labeling and k*");
        cmd->add_flag("--oracle", opt.oracle, "cross-check the answer with the brute-force oracle");
    };

    auto* solve = app.add_subcommand("solve", "decide a finite game");
    add_solve_flags(solve);

    auto* solve_timed = app.add_subcommand("solve-timed", "decide a timed automaton via its region game");
    add_solve_flags(solve_timed);
    solve_timed->add_option("--regions", opt.regions_out, "also write the region game to this file");

    auto* regions = app.add_subcommand("regions", "print the region game of a timed automaton");
    regions->add_option("file", path, "timed automaton JSON file")->required();

    auto* oracle_check = app.add_subcommand("oracle-check", "compare solver and oracle on a finite game");
    oracle_check->add_option("file", path, "input JSON file")->required();
    oracle_check->add_option("--player", opt.player_flags, "check only this constraint (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        opt.cap = vertex_cap_from_env();
    } catch (const spe::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }

    if (*solve) return run_solve(path, opt, std::cout, std::cerr);
    if (*solve_timed) return run_solve_timed(path, opt, std::cout, std::cerr);
    if (*regions) return run_regions(path, opt.cap, std::cout, std::cerr);
    return run_oracle_check(path, opt, std::cout, std::cerr);
}
