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

// JSON reading and writing of finite games and timed automata.
//
// Finite game:
//   {"players": n, "alphabet": [..], "vertices": [{"name", "owner"}],
//    "edges": [{"from", "letter", "to"}], "targets": [[names] per player],
//    "initial": name}
// Timed automaton:
//   {"players": n, "alphabet": [..], "clocks": [..],
//    "locations": [{"name", "owner"}],
//    "transitions": [{"from", "letter", "guard": [{"clock", "op", "const"}],
//                     "reset": [clocks], "to"}],
//    "goals": [[names] per player], "initial": name}
// Owners are 0-based player indices; comparator ops are le, lt, eq, gt, ge.

#pragma once

#include <json.hpp>

#include <fstream>
#include <unordered_map>

#include "game.hpp"
#include "timed.hpp"

namespace spe {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

using nlohmann::json;

inline const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw InputError(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(where + ": missing field \"" + key + "\"");
    return *it;
}

inline std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw InputError(where + ": expected a string");
    return j.get<std::string>();
}

inline std::uint64_t as_natural(const json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        throw InputError(where + ": expected a nonnegative integer");
    }
    return j.get<std::uint64_t>();
}

inline const json& as_array(const json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array");
    return j;
}

// Name -> index table with duplicate detection.
class NameTable {
public:
    NameTable(std::string kind) : kind_(std::move(kind)) {}

    void add(const std::string& name, const std::string& where) {
        if (!index_.emplace(name, static_cast<std::uint32_t>(index_.size())).second) {
            throw InputError(where + ": duplicate " + kind_ + " '" + name + "'");
        }
    }
    std::uint32_t lookup(const json& j, const std::string& where) const {
        const std::string name = as_string(j, where);
        auto it = index_.find(name);
        if (it == index_.end()) throw InputError(where + ": unknown " + kind_ + " '" + name + "'");
        return it->second;
    }

private:
    std::string kind_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

inline std::size_t read_players(const json& j) {
    const auto n = as_natural(field(j, "players", "root"), "players");
    if (n == 0 || n > kMaxPlayers) {
        throw InputError("players: must be between 1 and " + std::to_string(kMaxPlayers));
    }
    return n;
}

inline std::vector<std::string> read_names(const json& arr, const std::string& where,
                                           NameTable& table) {
    std::vector<std::string> out;
    as_array(arr, where);
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string at = where + "[" + std::to_string(k) + "]";
        out.push_back(as_string(arr[k], at));
        table.add(out.back(), at);
    }
    return out;
}

inline std::vector<std::vector<std::uint32_t>> read_per_player(const json& arr,
                                                               const std::string& where,
                                                               std::size_t players,
                                                               const NameTable& table) {
    as_array(arr, where);
    if (arr.size() != players) {
        throw InputError(where + ": expected " + std::to_string(players) + " lists, got " +
                         std::to_string(arr.size()));
    }
    std::vector<std::vector<std::uint32_t>> out(players);
    for (std::size_t i = 0; i < players; ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        as_array(arr[i], at);
        for (std::size_t k = 0; k < arr[i].size(); ++k) {
            out[i].push_back(table.lookup(arr[i][k], at + "[" + std::to_string(k) + "]"));
        }
    }
    return out;
}

// Reads [{"name", "owner"}] into names and owners.
inline void read_owned(const json& arr, const std::string& where, std::size_t players,
                       NameTable& table, std::vector<std::string>& names,
                       std::vector<PlayerId>& owners) {
    as_array(arr, where);
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string at = where + "[" + std::to_string(k) + "]";
        names.push_back(as_string(field(arr[k], "name", at), at + ".name"));
        table.add(names.back(), at + ".name");
        const auto owner = as_natural(field(arr[k], "owner", at), at + ".owner");
        if (owner >= players) {
            throw InputError(at + ".owner: player " + std::to_string(owner) + " does not exist");
        }
        owners.push_back(static_cast<PlayerId>(owner));
    }
}

inline Comparator parse_op(const std::string& op, const std::string& where) {
    if (op == "le") return Comparator::le;
    if (op == "lt") return Comparator::lt;
    if (op == "eq") return Comparator::eq;
    if (op == "gt") return Comparator::gt;
    if (op == "ge") return Comparator::ge;
    throw InputError(where + ": unknown comparator '" + op + "' (use le, lt, eq, gt, ge)");
}

inline const char* op_name(Comparator op) {
    switch (op) {
        case Comparator::le: return "le";
        case Comparator::lt: return "lt";
        case Comparator::eq: return "eq";
        case Comparator::gt: return "gt";
        case Comparator::ge: return "ge";
    }
    return "?";
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace detail

inline FiniteGame parse_game(const nlohmann::json& j) {
    using namespace detail;
    FiniteGame g;
    g.players = read_players(j);

    NameTable letters("letter");
    g.alphabet = read_names(field(j, "alphabet", "root"), "alphabet", letters);

    NameTable vertices("vertex");
    read_owned(field(j, "vertices", "root"), "vertices", g.players, vertices, g.vertex_names, g.owner);

    const auto& edges = as_array(field(j, "edges", "root"), "edges");
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const std::string at = "edges[" + std::to_string(k) + "]";
        g.edges.push_back({vertices.lookup(field(edges[k], "from", at), at + ".from"),
                           letters.lookup(field(edges[k], "letter", at), at + ".letter"),
                           vertices.lookup(field(edges[k], "to", at), at + ".to")});
    }
    g.targets = read_per_player(field(j, "targets", "root"), "targets", g.players, vertices);
    g.initial = vertices.lookup(field(j, "initial", "root"), "initial");
    return g;
}

inline nlohmann::json game_to_json(const FiniteGame& g) {
    nlohmann::json j;
    j["players"] = g.players;
    j["alphabet"] = g.alphabet;
    j["vertices"] = nlohmann::json::array();
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        j["vertices"].push_back({{"name", g.vertex_names[v]}, {"owner", g.owner[v]}});
    }
    j["edges"] = nlohmann::json::array();
    for (const Edge& e : g.edges) {
        j["edges"].push_back({{"from", g.vertex_names[e.from]},
                              {"letter", g.alphabet[e.letter]},
                              {"to", g.vertex_names[e.to]}});
    }
    j["targets"] = nlohmann::json::array();
    for (const auto& t : g.targets) {
        auto names = nlohmann::json::array();
        for (VertexId v : t) names.push_back(g.vertex_names[v]);
        j["targets"].push_back(std::move(names));
    }
    j["initial"] = g.vertex_names[g.initial];
    return j;
}

inline PPTA parse_ppta(const nlohmann::json& j) {
    using namespace detail;
    PPTA a;
    a.players = read_players(j);

    NameTable letters("letter");
    a.alphabet = read_names(field(j, "alphabet", "root"), "alphabet", letters);
    NameTable clocks("clock");
    a.clocks = read_names(field(j, "clocks", "root"), "clocks", clocks);
    NameTable locations("location");
    read_owned(field(j, "locations", "root"), "locations", a.players, locations, a.location_names,
               a.owner);

    const auto& transitions = as_array(field(j, "transitions", "root"), "transitions");
    for (std::size_t k = 0; k < transitions.size(); ++k) {
        const auto& tj = transitions[k];
        const std::string at = "transitions[" + std::to_string(k) + "]";
        TimedTransition t;
        t.from = locations.lookup(field(tj, "from", at), at + ".from");
        t.letter = letters.lookup(field(tj, "letter", at), at + ".letter");
        t.to = locations.lookup(field(tj, "to", at), at + ".to");
        if (tj.contains("guard")) {
            const auto& guard = as_array(tj["guard"], at + ".guard");
            for (std::size_t m = 0; m < guard.size(); ++m) {
                const std::string gat = at + ".guard[" + std::to_string(m) + "]";
                ClockConstraint atom;
                atom.clock = clocks.lookup(field(guard[m], "clock", gat), gat + ".clock");
                atom.op = parse_op(as_string(field(guard[m], "op", gat), gat + ".op"), gat + ".op");
                const auto c = as_natural(field(guard[m], "const", gat), gat + ".const");
                if (c > (std::uint64_t{1} << 30)) throw InputError(gat + ".const: constant too large");
                atom.constant = static_cast<std::uint32_t>(c);
                t.guard.push_back(atom);
            }
        }
        if (tj.contains("reset")) {
            const auto& reset = as_array(tj["reset"], at + ".reset");
            for (std::size_t m = 0; m < reset.size(); ++m) {
                t.reset.push_back(clocks.lookup(reset[m], at + ".reset[" + std::to_string(m) + "]"));
            }
        }
        a.transitions.push_back(std::move(t));
    }
    a.goals = read_per_player(field(j, "goals", "root"), "goals", a.players, locations);
    a.initial = locations.lookup(field(j, "initial", "root"), "initial");
    return a;
}

inline nlohmann::json ppta_to_json(const PPTA& a) {
    nlohmann::json j;
    j["players"] = a.players;
    j["alphabet"] = a.alphabet;
    j["clocks"] = a.clocks;
    j["locations"] = nlohmann::json::array();
    for (LocationId l = 0; l < a.num_locations(); ++l) {
        j["locations"].push_back({{"name", a.location_names[l]}, {"owner", a.owner[l]}});
    }
    j["transitions"] = nlohmann::json::array();
    for (const auto& t : a.transitions) {
        auto guard = nlohmann::json::array();
        for (const auto& atom : t.guard) {
            guard.push_back({{"clock", a.clocks[atom.clock]},
                             {"op", detail::op_name(atom.op)},
                             {"const", atom.constant}});
        }
        auto reset = nlohmann::json::array();
        for (ClockId c : t.reset) reset.push_back(a.clocks[c]);
        j["transitions"].push_back({{"from", a.location_names[t.from]},
                                    {"letter", a.alphabet[t.letter]},
                                    {"guard", guard},
                                    {"reset", reset},
                                    {"to", a.location_names[t.to]}});
    }
    j["goals"] = nlohmann::json::array();
    for (const auto& goal : a.goals) {
        auto names = nlohmann::json::array();
        for (LocationId l : goal) names.push_back(a.location_names[l]);
        j["goals"].push_back(std::move(names));
    }
    j["initial"] = a.location_names[a.initial];
    return j;
}

inline FiniteGame load_game(const std::string& path) {
    const auto j = detail::read_json_file(path);
    try {
        return parse_game(j);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline PPTA load_ppta(const std::string& path) {
    const auto j = detail::read_json_file(path);
    try {
        return parse_ppta(j);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace spe
