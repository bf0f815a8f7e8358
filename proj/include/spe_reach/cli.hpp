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

// Command drivers behind the spe-reach executable. They write to the given
// streams and return the process exit code, so they can be tested in-process.

#pragma once

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "fixpoint.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "timed.hpp"

namespace spe::cli {

enum ExitCode : int {
    kYes = 0,
    kNo = 1,
    kInputError = 2,
    kCapacityExceeded = 3,
};

enum class Requirement { any, win, lose };

/// Per-player requirement; win = (1,1), lose = (0,0), any = (0,1).
struct ConstraintSpec {
    std::vector<Requirement> players;

    ConstraintProfile profile() const {
        PlayerSet lower = 0, upper = 0;
        for (PlayerId i = 0; i < players.size(); ++i) {
            if (players[i] == Requirement::win) lower |= PlayerSet{1} << i;
            if (players[i] != Requirement::lose) upper |= PlayerSet{1} << i;
        }
        return {GainProfile(players.size(), lower), GainProfile(players.size(), upper)};
    }

    std::string to_string() const {
        std::string out;
        for (PlayerId i = 0; i < players.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(i) + "=";
            out += players[i] == Requirement::win ? "win" : players[i] == Requirement::lose ? "lose" : "any";
        }
        return out;
    }
};

/// Parses repeated "<i>=<win|lose|any>" flags; players not mentioned are "any".
inline ConstraintSpec parse_constraint(const std::vector<std::string>& flags, std::size_t players) {
    ConstraintSpec spec{std::vector<Requirement>(players, Requirement::any)};
    for (const auto& flag : flags) {
        const auto eq = flag.find('=');
        if (eq == std::string::npos) throw InputError("--player " + flag + ": expected <i>=<win|lose|any>");
        const std::string index = flag.substr(0, eq);
        const std::string what = flag.substr(eq + 1);
        if (index.empty() || index.find_first_not_of("0123456789") != std::string::npos) {
            throw InputError("--player " + flag + ": player index must be a number");
        }
        const auto i = std::stoul(index);
        if (i >= players) {
            throw InputError("--player " + flag + ": game has players 0.." + std::to_string(players - 1));
        }
        if (what == "win") {
            spec.players[i] = Requirement::win;
        } else if (what == "lose") {
            spec.players[i] = Requirement::lose;
        } else if (what == "any") {
            spec.players[i] = Requirement::any;
        } else {
            throw InputError("--player " + flag + ": expected win, lose or any");
        }
    }
    return spec;
}

/// Every spec in {any, win, lose}^players.
inline std::vector<ConstraintSpec> all_constraint_specs(std::size_t players) {
    std::vector<ConstraintSpec> out;
    ConstraintSpec cur{std::vector<Requirement>(players, Requirement::any)};
    for (;;) {
        out.push_back(cur);
        std::size_t i = 0;
        for (; i < players; ++i) {
            auto& r = cur.players[i];
            r = r == Requirement::any ? Requirement::win
              : r == Requirement::win ? Requirement::lose
                                      : Requirement::any;
            if (r != Requirement::any) break;
        }
        if (i == players) break;
    }
    return out;
}

/// SPE_REACH_MAX_EXT_VERTICES, or 2^22 when unset.
inline std::size_t vertex_cap_from_env() {
    const char* raw = std::getenv("SPE_REACH_MAX_EXT_VERTICES");
    if (!raw || !*raw) return kDefaultVertexCap;
    char* end = nullptr;
    const auto value = std::strtoull(raw, &end, 10);
    if (*end != '\0' || value == 0) {
        throw InputError(std::string("SPE_REACH_MAX_EXT_VERTICES: invalid value '") + raw + "'");
    }
    return value;
}

struct SolveOptions {
    std::vector<std::string> player_flags;
    bool witness = false;
    bool lambda = false;
    bool oracle = false;
    std::string regions_out;  // solve-timed only; empty = do not write
    std::size_t cap = kDefaultVertexCap;
};

namespace detail {

inline void print_lasso_rows(std::ostream& out, const Solver& s, const char* part,
                             std::span<const VertexId> ext) {
    for (VertexId x : ext) {
        out << "  " << std::left << std::setw(7) << part << s.game().vertex_names[s.extended().base[x]]
            << "  " << format_player_set(s.extended().satisfied[x]) << "\n";
    }
}

inline void print_witness(std::ostream& out, const Solver& s, const Witness& w) {
    out << "gain: " << w.gain.to_string() << "\n";
    out << "witness:\n";
    print_lasso_rows(out, s, "prefix", w.extended.prefix);
    print_lasso_rows(out, s, "cycle", w.extended.cycle);
}

inline void print_lambda(std::ostream& out, const Solver& s) {
    const auto& x = s.extended();
    const auto& fp = s.fixpoint();
    out << "lambda*: k* = " << fp.k_star << " (" << fp.steps << " steps), " << x.num_vertices()
        << " extended vertices\n";
    for (VertexId v = 0; v < x.num_vertices(); ++v) {
        out << "  " << s.game().vertex_names[x.base[v]] << "  " << format_player_set(x.satisfied[v])
            << "  owner " << x.owner(v) << "  lambda " << int(fp.labeling[v]) << "\n";
    }
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const CapacityExceeded& e) {
        err << "error: " << e.what() << " (raise SPE_REACH_MAX_EXT_VERTICES to allow more)\n";
        return kCapacityExceeded;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const GameError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace detail

/// Decides the constraint on an already loaded game and prints the report.
inline int solve_finite(const FiniteGame& g, const SolveOptions& opt, std::ostream& out,
                        std::ostream& err) {
    return detail::guarded(err, [&]() -> int {
        require_valid(g);
        const auto spec = parse_constraint(opt.player_flags, g.players);
        const Solver solver(g, opt.cap);
        const Decision d = solver.decide(spec.profile());
        out << (d.answer ? "YES" : "NO") << "\n";
        if (opt.witness && d.witness) detail::print_witness(out, solver, *d.witness);
        if (opt.lambda) detail::print_lambda(out, solver);
        if (opt.oracle) {
            try {
                const bool expected = oracle_decide(g, spec.profile());
                out << "oracle: " << (expected == d.answer ? "agrees" : "DISAGREES") << " ("
                    << (expected ? "YES" : "NO") << ")\n";
            } catch (const OracleRefused& e) {
                out << "oracle: skipped (" << e.what() << ")\n";
            }
        }
        return d.answer ? kYes : kNo;
    });
}

inline int run_solve(const std::string& path, const SolveOptions& opt, std::ostream& out,
                     std::ostream& err) {
    return detail::guarded(err, [&]() -> int { return solve_finite(load_game(path), opt, out, err); });
}

inline int run_solve_timed(const std::string& path, const SolveOptions& opt, std::ostream& out,
                           std::ostream& err) {
    return detail::guarded(err, [&]() -> int {
        const RegionGame rg = build_region_game(load_ppta(path), opt.cap);
        if (!opt.regions_out.empty()) {
            std::ofstream file(opt.regions_out);
            if (!file) throw InputError(opt.regions_out + ": cannot write file");
            file << game_to_json(rg.game).dump(2) << "\n";
        }
        return solve_finite(rg.game, opt, out, err);
    });
}

/// Writes the region game of a timed automaton in the finite-game format.
inline int run_regions(const std::string& path, std::size_t cap, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&]() -> int {
        const RegionGame rg = build_region_game(load_ppta(path), cap);
        out << game_to_json(rg.game).dump(2) << "\n";
        return kYes;
    });
}

/// Compares solver and oracle on every constraint spec (or only on the one
/// given by --player flags). Exit 0 if they always agree, 1 otherwise.
inline int run_oracle_check(const std::string& path, const SolveOptions& opt, std::ostream& out,
                            std::ostream& err) {
    return detail::guarded(err, [&]() -> int {
        const FiniteGame g = load_game(path);
        require_valid(g);
        std::vector<ConstraintSpec> specs;
        if (opt.player_flags.empty()) {
            specs = all_constraint_specs(g.players);
        } else {
            specs.push_back(parse_constraint(opt.player_flags, g.players));
        }
        OracleResult reference;
        try {
            reference = oracle_solve(g);
        } catch (const OracleRefused& e) {
            err << "error: " << e.what() << "\n";
            return kCapacityExceeded;
        }
        const Solver solver(g, opt.cap);
        bool all_agree = true;
        const bool same_lambda = reference.lambda == solver.lambda_star();
        all_agree &= same_lambda;
        out << "lambda*: " << (same_lambda ? "agree" : "DIFFER") << "\n";
        for (const auto& spec : specs) {
            const bool mine = solver.decide(spec.profile()).answer;
            const bool theirs = reference.admits(spec.profile());
            all_agree &= mine == theirs;
            out << (mine == theirs ? "ok   " : "FAIL ") << spec.to_string() << ": solver "
                << (mine ? "YES" : "NO") << ", oracle " << (theirs ? "YES" : "NO") << "\n";
        }
        return all_agree ? kYes : kNo;
    });
}

}  // namespace spe::cli
