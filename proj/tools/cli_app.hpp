#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <modwalk/modwalk.hpp>

namespace modwalk::cli {

using nlohmann::json;

enum Exit : int { Ok = 0, Infeasible = 1, Usage = 2, Internal = 3 };

struct Failure {
    int code;
    json error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{Usage, {{"kind", "io"}, {"message", "cannot read " + path}}};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json edge_list(const DirectedGraph& g, const EdgeSet& set) {
    json out = json::array();
    for (EdgeId id : set) out.push_back({g.edge(id).source, g.edge(id).target});
    return out;
}

inline CostMode parse_cost_mode(const std::string& s) {
    return s == "weights" ? CostMode::EdgeCosts : CostMode::EdgeCount;
}

struct Output {
    std::ostream& out;
    bool human;

    void emit(const json& j) const {
        if (!human) {
            out << j.dump() << '\n';
            return;
        }
        for (auto it = j.begin(); it != j.end(); ++it) out << it.key() << ": " << it.value().dump() << '\n';
    }
};

inline json solution_json(const DirectedGraph& g, const std::optional<Solution>& sol, const SolveStats& st) {
    json j;
    j["status"] = sol ? "ok" : "infeasible";
    j["cost"] = sol ? json(sol->cost) : json(nullptr);
    j["edges"] = sol ? edge_list(g, sol->edges) : json::array();
    json walks = json::array();
    if (sol)
        for (const Walk& w : sol->witnesses) walks.push_back(w.vertices());
    j["witnesses"] = walks;
    j["stats"] = {{"expanded_states", st.expanded_states}, {"omega_used", st.omega_used}, {"wall_ms", st.wall_ms}};
    return j;
}

inline json oracle_json(const DirectedGraph& g, const std::optional<OracleResult>& r) {
    return {{"status", r ? "ok" : "infeasible"},
            {"cost", r ? json(r->cost) : json(nullptr)},
            {"edges", r ? edge_list(g, r->edges) : json::array()}};
}

// Reads the "edges" field of a solution object and maps it to ids of g.
inline EdgeSet read_solution_edges(const std::string& text, const DirectedGraph& g) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Failure{Usage, {{"kind", "parse"}, {"message", std::string("solution file: ") + e.what()}}};
    }
    if (!j.contains("edges") || !j["edges"].is_array())
        throw Failure{Usage, {{"kind", "parse"}, {"message", "solution file has no edges array"}}};
    EdgeSet out;
    for (const json& e : j["edges"]) {
        auto id = g.find_edge(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
        if (!id) throw Failure{Usage, {{"kind", "validation"}, {"message", "solution edge " + e.dump() + " is not in the transformed graph"}}};
        out.push_back(*id);
    }
    return normalize(std::move(out));
}

inline std::vector<Vertex> parse_vertex_list(const std::string& s) {
    std::vector<Vertex> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(static_cast<Vertex>(std::stoul(item)));
    return out;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Edge-minimum walks of modular length: solver, oracles, reductions and walk analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json-lines";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json-lines"}));

    std::string instance_path, cost_mode = "count";
    std::size_t omega = 0, budget = 10'000'000;
    unsigned threads = 1;
    bool exhaustive = false;

    auto add_solver_flags = [&](CLI::App* sub) {
        sub->add_option("instance", instance_path, "Instance file")->required();
        sub->add_option("--omega", omega, "Domain size bound (default from the modulus and k)");
        sub->add_option("--cost-mode", cost_mode, "Objective")->check(CLI::IsMember({"count", "weights"}));
        sub->add_option("--budget", budget, "Expanded-state cap");
        sub->add_option("--threads", threads, "Worker threads for successor generation")->check(CLI::PositiveNumber);
        sub->add_flag("--exhaustive", exhaustive, "Explore every configuration move");
    };
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve an EWM instance");
    add_solver_flags(solve_cmd);
    CLI::App* dsnm_cmd = app.add_subcommand("solve-dsnm", "Solve a DSNM instance");
    add_solver_flags(dsnm_cmd);

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "Brute-force or exact reference answer");
    std::string problem = "dsnm", method = "brute";
    std::string terminals_arg;
    oracle_cmd->add_option("instance", instance_path, "Instance file")->required();
    oracle_cmd->add_option("--problem", problem, "Problem")->check(CLI::IsMember({"dsnm", "scss", "scssm"}));
    oracle_cmd->add_option("--method", method, "brute: subset enumeration; exact: chain contraction with branch and bound")
        ->check(CLI::IsMember({"brute", "exact"}));
    oracle_cmd->add_option("--terminals", terminals_arg, "Comma-separated terminals for scss");
    oracle_cmd->add_option("--cost-mode", cost_mode, "Objective")->check(CLI::IsMember({"count", "weights"}));

    CLI::App* reduce_cmd = app.add_subcommand("reduce", "Apply a reduction and print the transformed instance");
    std::string kind, decode_path;
    reduce_cmd->add_option("instance", instance_path, "Instance file")->required();
    reduce_cmd->add_option("--kind", kind, "Reduction")
        ->required()
        ->check(CLI::IsMember({"scss-to-ewm", "lengths-to-unit", "vertex-to-edge-costs", "edge-to-vertex-costs", "undirected"}));
    reduce_cmd->add_option("--terminals", terminals_arg, "Comma-separated terminals for scss-to-ewm");
    reduce_cmd->add_option("--decode", decode_path, "Solution of the transformed instance to map back");

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Segment and chunk structure of a walk");
    std::string walk_path;
    std::uint32_t q_arg = 0;
    analyze_cmd->add_option("--walk", walk_path, "Vertex sequence file")->required();
    analyze_cmd->add_option("--instance", instance_path, "Graph the walk lives in");
    analyze_cmd->add_option("--q", q_arg, "Modulus (default: the instance's, else 2)");

    CLI::App* gen_cmd = app.add_subcommand("gen", "Deterministic random instance");
    std::uint64_t seed = 0;
    GeneratorParams gp;
    bool undirected = false, no_loops = false;
    gen_cmd->add_option("--seed", seed, "Seed")->required();
    gen_cmd->add_option("--n", gp.vertices, "Vertices");
    gen_cmd->add_option("--m", gp.edges, "Edges");
    gen_cmd->add_option("--k", gp.requirements, "Requirements");
    gen_cmd->add_option("--q", gp.modulus, "Modulus (maximum per requirement when k > 1)");
    gen_cmd->add_option("--max-cost", gp.max_cost, "Add edge costs in 1..max");
    gen_cmd->add_option("--max-length", gp.max_length, "Add edge lengths in 0..max");
    gen_cmd->add_flag("--undirected", undirected, "Undirected graph");
    gen_cmd->add_flag("--no-loops", no_loops, "No self-loops");

    const Output o{out, false};
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        o.emit({{"status", "error"}, {"error", {{"kind", "usage"}, {"message", e.what()}}}});
        err << "error: " << e.what() << '\n';
        return Usage;
    }
    const Output output{out, format == "human"};

    auto fail = [&](int code, const json& error) {
        output.emit({{"status", "error"}, {"error", error}});
        err << "error: " << error.value("message", "") << '\n';
        return code;
    };

    try {
        if (*solve_cmd || *dsnm_cmd) {
            const Instance inst = parse_instance(read_file(instance_path));
            if (!inst.directed) throw Failure{Usage, {{"kind", "validation"}, {"message", "solve takes directed instances; use reduce --kind undirected first"}}};
            if (*solve_cmd && inst.spec.k() != 1)
                throw Failure{Usage, {{"kind", "validation"}, {"message", "solve takes an ewm query; use solve-dsnm"}}};
            SolverParams p;
            p.omega = omega;
            p.cost_mode = parse_cost_mode(cost_mode);
            p.state_budget = budget;
            p.threads = threads;
            p.exhaustive = exhaustive;
            SolveStats st;
            auto sol = solve(inst.graph, inst.spec, p, &st);
            output.emit(solution_json(inst.graph, sol, st));
            return sol ? Ok : Infeasible;
        }
        if (*oracle_cmd) {
            const Instance inst = parse_instance(read_file(instance_path));
            const CostMode mode = parse_cost_mode(cost_mode);
            if (!inst.directed) {
                const Requirement& r = inst.spec.pairs().at(0);
                auto res = brute_force_undirected_ewm(inst.undirected, r.source, r.target, r.remainder, r.modulus);
                json j = {{"status", res ? "ok" : "infeasible"}, {"cost", res ? json(res->cost) : json(nullptr)}};
                json edges = json::array();
                if (res)
                    for (EdgeId id : res->edges) edges.push_back({inst.undirected.edge(id).source, inst.undirected.edge(id).target});
                j["edges"] = edges;
                output.emit(j);
                return res ? Ok : Infeasible;
            }
            std::optional<OracleResult> res;
            if (!inst.vertex_costs.empty() && problem == "dsnm" && mode == CostMode::EdgeCosts)
                res = brute_force_vertex_cost_dsnm(inst.graph, inst.vertex_costs, inst.spec);
            else if (problem == "scss")
                res = brute_force_scss(inst.graph, terminals_arg.empty() ? inst.spec.terminals() : parse_vertex_list(terminals_arg));
            else if (problem == "scssm")
                res = brute_force_scssm(inst.graph, inst.spec, mode);
            else if (method == "exact")
                res = exact_dsnm(inst.graph, inst.spec, mode, inst.graph.has_lengths() ? LengthMode::EdgeLengths : LengthMode::Unit);
            else
                res = brute_force_dsnm(inst.graph, inst.spec, mode, inst.graph.has_lengths() ? LengthMode::EdgeLengths : LengthMode::Unit);
            output.emit(oracle_json(inst.graph, res));
            return res ? Ok : Infeasible;
        }
        if (*reduce_cmd) {
            const Instance inst = parse_instance(read_file(instance_path));
            std::optional<ReductionArtifact> art;
            if (kind == "undirected") {
                if (inst.directed) throw Failure{Usage, {{"kind", "validation"}, {"message", "undirected reduction needs an undirected instance"}}};
                if (inst.spec.k() != 1) throw Failure{Usage, {{"kind", "validation"}, {"message", "undirected reduction takes an ewm query"}}};
                const Requirement& r = inst.spec.pairs()[0];
                const UndirectedModulus um = reduce_undirected_modulus(r.source, r.target, r.remainder, r.modulus);
                if (um.drop) {
                    output.emit({{"status", "drop"}, {"message", "the empty walk satisfies the requirement"}});
                    return Ok;
                }
                art = undirected_to_directed(inst.undirected, r.source, r.target, um.remainder, um.modulus);
            } else {
                if (!inst.directed) throw Failure{Usage, {{"kind", "validation"}, {"message", "this reduction needs a directed instance"}}};
                if (kind == "scss-to-ewm")
                    art = scss_to_ewm(inst.graph, terminals_arg.empty() ? inst.spec.terminals() : parse_vertex_list(terminals_arg));
                else if (kind == "lengths-to-unit")
                    art = lengths_to_unit(inst.graph, inst.spec);
                else if (kind == "vertex-to-edge-costs")
                    art = vertex_costs_to_edge_costs(
                        inst.graph, inst.vertex_costs.empty() ? std::vector<Weight>(inst.graph.vertex_count(), 0) : inst.vertex_costs,
                        inst.spec);
                else
                    art = edge_costs_to_vertex_costs(inst.graph, inst.spec);
            }
            if (!decode_path.empty()) {
                const EdgeSet sol = read_solution_edges(read_file(decode_path), art->transformed);
                const EdgeSet back = decode(*art, sol);
                json edges = json::array();
                for (EdgeId id : back) {
                    const Edge e = inst.directed ? inst.graph.edge(id) : inst.undirected.edge(id);
                    edges.push_back({e.source, e.target});
                }
                output.emit({{"status", "ok"}, {"cost", back.size()}, {"edges", edges}});
                return Ok;
            }
            Instance t;
            t.directed = true;
            t.graph = art->transformed;
            t.spec = art->spec;
            t.vertex_costs = art->vertex_costs;
            out << write_instance(t);
            return Ok;
        }
        if (*analyze_cmd) {
            const std::vector<Vertex> seq = parse_vertex_sequence(read_file(walk_path));
            std::optional<Instance> inst;
            if (!instance_path.empty()) inst = parse_instance(read_file(instance_path));
            const DirectedGraph g = inst ? inst->graph : graph_of_sequence(seq);
            const std::uint32_t q = q_arg ? q_arg : inst ? static_cast<std::uint32_t>(inst->spec.q()) : 2;
            const Walk w = Walk::from_vertices(g, seq);
            const SegmentDecomposition dec = segment_decomposition(w, q);
            json segs = json::array();
            for (const Segment& s : dec.segments) {
                json js = {{"range", {s.range.first, s.range.last}}};
                if (s.detour) {
                    js["detour"] = {s.detour->first_index, s.range.last};
                    js["delta"] = s.detour->delta;
                }
                segs.push_back(js);
            }
            json chunks = json::array();
            for (const Chunk& c : chunk_decomposition(w).chunks)
                chunks.push_back({{"range", {c.range.first, c.range.last}}, {"kind", to_string(c.kind)}});
            output.emit({{"segments", segs},
                         {"chunks", chunks},
                         {"ordering", chunk_vertex_order(w)},
                         {"cutwidth_of_ordering", chunk_order_cutwidth(w)},
                         {"three_xi_bound", 3 * dec.count()}});
            return Ok;
        }
        if (*gen_cmd) {
            gp.directed = !undirected;
            gp.self_loops = !no_loops;
            out << write_instance(random_instance(seed, gp));
            return Ok;
        }
    } catch (const Failure& f) {
        return fail(f.code, f.error);
    } catch (const ParseError& e) {
        return fail(Usage, {{"kind", "parse"}, {"message", e.what()}, {"line", e.line()}});
    } catch (const ValidationError& e) {
        return fail(Usage, {{"kind", "validation"}, {"message", e.what()}});
    } catch (const PreconditionError& e) {
        return fail(Usage, {{"kind", "precondition"}, {"message", e.what()}});
    } catch (const CapacityError& e) {
        return fail(Internal, {{"kind", "capacity"}, {"message", e.what()}});
    } catch (const std::exception& e) {
        return fail(Internal, {{"kind", "internal"}, {"message", e.what()}});
    }
    return Internal;
}

}  // namespace modwalk::cli
