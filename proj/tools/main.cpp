#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "specrev/aamrp.hpp"
#include "specrev/bench.hpp"
#include "specrev/io.hpp"
#include "specrev/oracle.hpp"

namespace {

using namespace specrev;

// Exit codes are a stable contract:
//   0 revised / already satisfiable / ok
//   1 input or usage error
//   2 infeasible
//   3 verification failure
//   4 oracle budget exhausted
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitTimedOut = 4;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

RunStats make_stats(const RevisionGraph& graph, int reachable_finals, double wall_ms) {
    RunStats stats;
    stats.product_states = graph.n_real;
    stats.product_transitions_unexpanded = graph.transitions_unexpanded;
    stats.product_transitions_expanded = static_cast<int>(graph.edges.size());
    stats.reachable_finals = reachable_finals;
    stats.wall_ms = wall_ms;
    return stats;
}

void warn_dropped_clauses(const AnyInput& input) {
    if (input.instance && input.instance->dropped_clauses > 0)
        std::cerr << "note: eliminated " << input.instance->dropped_clauses
                  << " contradictory or duplicate clause(s) while loading\n";
}

int count_reachable_finals(const RevisionGraph& graph) {
    // Reachability over all edges, disabled ones included.
    std::vector<char> reached(static_cast<size_t>(graph.num_nodes()), 0);
    std::vector<int> queue = graph.sources;
    for (int s : graph.sources) reached[static_cast<size_t>(s)] = 1;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int e : graph.out[static_cast<size_t>(v)]) {
            int to = graph.edges[static_cast<size_t>(e)].to;
            if (!reached[static_cast<size_t>(to)]) {
                reached[static_cast<size_t>(to)] = 1;
                queue.push_back(to);
            }
        }
    }
    int count = 0;
    for (int f : graph.finals)
        if (reached[static_cast<size_t>(f)]) ++count;
    return count;
}

int cmd_revise(const std::string& file, bool verify, bool verbose, const std::string& dot_path,
               const std::string& json_path) {
    AnyInput input = load_input_file(file);
    warn_dropped_clauses(input);
    const RevisionGraph& graph = *input.graph;

    auto start = std::chrono::steady_clock::now();
    RevisionOutcome outcome = aamrp(graph);
    double wall = elapsed_ms(start);

    if (verbose) {
        std::cerr << "candidates (final node: prefix+lasso cost):\n";
        for (const auto& [node, cost] : outcome.diag.candidates)
            std::cerr << "  " << graph.nodes[static_cast<size_t>(node)].name << ": " << cost
                      << "\n";
        if (outcome.diag.cost_equals_universe)
            std::cerr << "note: the winning cost equals the whole atom universe\n";
    }

    RunStats stats = make_stats(graph, count_reachable_finals(graph), wall);
    nlohmann::json doc = outcome_to_json(graph, outcome,
                                         input.instance ? &*input.instance : nullptr, stats);
    std::cout << dump_document(doc);

    if (!dot_path.empty()) {
        std::ostringstream dot;
        write_dot(dot, graph);
        write_text_file(dot_path, dot.str());
    }
    if (!json_path.empty()) write_text_file(json_path, dump_document(doc));

    if (verify) {
        bool ok = input.instance
                      ? verify_outcome(input.instance->fsm, input.instance->spec, outcome)
                      : verify_outcome_on_graph(graph, outcome);
        if (!ok) {
            std::cerr << "verification failed\n";
            return kExitVerifyFailed;
        }
        std::cerr << "verification passed\n";
    }
    return outcome.status == RevisionOutcome::Status::Infeasible ? kExitInfeasible : kExitOk;
}

int cmd_oracle(const std::string& file, double budget_s, bool prune,
               const std::string& json_path) {
    AnyInput input = load_input_file(file);
    warn_dropped_clauses(input);
    const RevisionGraph& graph = *input.graph;

    OracleOptions options;
    options.budget = std::chrono::milliseconds(static_cast<long long>(budget_s * 1000.0));
    options.frontier_pruning = prune;
    auto start = std::chrono::steady_clock::now();
    OracleResult result = brute_force_mrp(graph, options);
    double wall = elapsed_ms(start);

    RunStats stats = make_stats(graph, count_reachable_finals(graph), wall);
    nlohmann::json doc = oracle_to_json(graph, result, stats);
    std::cout << dump_document(doc);
    if (!json_path.empty()) write_text_file(json_path, dump_document(doc));

    switch (result.status) {
        case OracleResult::Status::Optimal:
            return kExitOk;
        case OracleResult::Status::Infeasible:
            return kExitInfeasible;
        case OracleResult::Status::TimedOut:
            return kExitTimedOut;
    }
    return kExitInput;
}

int cmd_check(const std::string& file) {
    AnyInput input = load_input_file(file);
    warn_dropped_clauses(input);
    const RevisionGraph& graph = *input.graph;

    bool satisfiable;
    if (input.instance) {
        Product product = build_product(input.instance->fsm, input.instance->spec);
        satisfiable = is_satisfiable(product).has_value();
    } else {
        std::vector<char> none(static_cast<size_t>(graph.universe_size()), 0);
        satisfiable = graph_has_accepting_lasso(graph, &none);
    }
    std::cout << (satisfiable ? "Satisfiable" : "Unsatisfiable") << "\n";
    std::cout << "product_states: " << graph.n_real << "\n";
    std::cout << "product_transitions_unexpanded: " << graph.transitions_unexpanded << "\n";
    std::cout << "product_transitions_expanded: " << graph.edges.size() << "\n";
    std::cout << "reachable_finals: " << count_reachable_finals(graph) << "\n";
    std::cout << "atoms: " << graph.universe_size() << "\n";
    return kExitOk;
}

int cmd_export(const std::string& file, const std::string& dot_path) {
    AnyInput input = load_input_file(file);
    std::ostringstream dot;
    write_dot(dot, *input.graph);
    if (dot_path.empty())
        std::cout << dot.str();
    else
        write_text_file(dot_path, dot.str());
    return kExitOk;
}

int cmd_gen_random(int nodes, double edge_factor, double final_fraction, int aps,
                   std::uint64_t seed, const std::string& out_path) {
    RandomDagParams params;
    params.nodes_per_dag = nodes;
    params.edge_factor = edge_factor;
    params.final_fraction = final_fraction;
    params.ap_count = aps;
    params.seed = seed;
    auto [fsm, spec] = gen_random_instance(params);
    Instance instance;
    instance.fsm = std::move(fsm);
    instance.spec = std::move(spec);
    int ap_count = params.ap_count > 0 ? params.ap_count : 4 * params.nodes_per_dag;
    for (int i = 0; i < ap_count; ++i) instance.props.intern("p" + std::to_string(i));
    std::string text = dump_document(instance_to_json(instance));
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
    return kExitOk;
}

int cmd_gen_family(const std::string& family, int m, int stages, int width, std::uint64_t seed,
                   const std::string& out_path) {
    RevisionGraph graph;
    if (family == "unbounded")
        graph = gen_unbounded_family(m);
    else if (family == "series-merge")
        graph = gen_series_merge_dag(stages, width, seed);
    else
        throw input_error("unknown family '" + family + "' (expected unbounded or series-merge)");
    std::string text = dump_document(graph_to_json(graph));
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
    return kExitOk;
}

int cmd_reduce(const std::string& cnf_path, const std::string& out_path,
               const std::string& mce_path) {
    std::ifstream in(cnf_path);
    if (!in) throw input_error("cannot open '" + cnf_path + "'");
    CnfFormula cnf = parse_dimacs(in);
    MceInstance inst = reduce_3sat_to_mce(cnf);
    RevisionGraph graph = mce_to_revision_graph(inst);
    std::string text = dump_document(graph_to_json(graph));
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);

    if (!mce_path.empty()) {
        nlohmann::json mce;
        mce["nodes"] = inst.node_names;
        mce["source"] = inst.node_names[static_cast<size_t>(inst.source)];
        mce["sink"] = inst.node_names[static_cast<size_t>(inst.sink)];
        mce["weight_limit"] = inst.weight_limit;
        nlohmann::json base = nlohmann::json::array();
        for (const auto& [i, j] : inst.base_edges)
            base.push_back(nlohmann::json::array({inst.node_names[static_cast<size_t>(i)],
                                                  inst.node_names[static_cast<size_t>(j)]}));
        mce["base_edges"] = std::move(base);
        nlohmann::json classes = nlohmann::json::array();
        for (const MceClass& cls : inst.classes) {
            nlohmann::json c;
            c["name"] = cls.name;
            nlohmann::json edges = nlohmann::json::array();
            for (const MceEdge& e : cls.edges) {
                nlohmann::json edge;
                edge["from"] = inst.node_names[static_cast<size_t>(e.from)];
                edge["to"] = inst.node_names[static_cast<size_t>(e.to)];
                edge["weight"] = e.weight;
                edges.push_back(std::move(edge));
            }
            c["edges"] = std::move(edges);
            classes.push_back(std::move(c));
        }
        mce["classes"] = std::move(classes);
        nlohmann::json doc;
        doc["mce"] = std::move(mce);
        write_text_file(mce_path, dump_document(doc));
    }
    return kExitOk;
}

int cmd_bench(const std::vector<int>& sizes, int seeds, double budget_s, int threads,
              std::uint64_t base_seed, const std::string& out_path) {
    ExperimentConfig config;
    config.dag_sizes = sizes;
    config.seeds_per_size = seeds;
    config.oracle_budget = std::chrono::milliseconds(static_cast<long long>(budget_s * 1000.0));
    config.threads = threads;
    config.base_seed = base_seed;
    std::vector<ExperimentRow> rows = run_experiment(config);

    int unverified = 0;
    int below_oracle = 0;
    for (const ExperimentRow& row : rows) {
        if (!row.verified) ++unverified;
        if (row.ratio >= 0 && row.ratio < 1.0) ++below_oracle;
    }
    if (out_path.empty()) {
        write_csv(std::cout, rows);
    } else {
        std::ostringstream csv;
        write_csv(csv, rows);
        write_text_file(out_path, csv.str());
    }
    write_summary(std::cerr, rows);
    if (unverified > 0 || below_oracle > 0) {
        std::cerr << "bench: " << unverified << " unverified outcome(s), " << below_oracle
                  << " row(s) below the oracle\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Specification revision toolkit: find a minimal set of guard literals "
                 "to drop so an automaton specification becomes satisfiable on a system"};
    app.require_subcommand(1);

    std::string file, dot_path, json_path, out_path, family = "unbounded", cnf_path, mce_path;
    bool verify = false, prune = false, verbose = false;
    double budget_s = 60.0;
    int gen_nodes = 3, gen_aps = 0, gen_m = 3, gen_stages = 3, gen_width = 2;
    double gen_edge_factor = 2.5, gen_final_fraction = 0.2;
    std::uint64_t seed = 1;
    std::vector<int> bench_sizes{3};
    int bench_seeds = 20, bench_threads = 1;

    auto* revise = app.add_subcommand("revise", "heuristic minimal revision of an instance");
    revise->add_option("instance", file, "instance or graph document")->required();
    revise->add_flag("--verify", verify, "re-check the outcome on the (revised) product");
    revise->add_flag("--verbose", verbose, "list the candidate finals and their costs");
    revise->add_option("--dot", dot_path, "write the search graph in Graphviz format");
    revise->add_option("--json", json_path, "also write the result document to a file");

    auto* oracle = app.add_subcommand("oracle", "exact minimal revision by exhaustive search");
    oracle->add_option("instance", file, "instance or graph document")->required();
    oracle->add_option("--budget", budget_s, "time budget in seconds (default 60)");
    oracle->add_flag("--prune", prune, "skip subsets that cannot unblock the initial frontier");
    oracle->add_option("--json", json_path, "also write the result document to a file");

    auto* check = app.add_subcommand("check", "validate an instance and test satisfiability");
    check->add_option("instance", file, "instance or graph document")->required();

    auto* export_cmd = app.add_subcommand("export", "write the search graph in Graphviz format");
    export_cmd->add_option("instance", file, "instance or graph document")->required();
    export_cmd->add_option("--dot", dot_path, "output path (default: stdout)");

    auto* gen = app.add_subcommand("gen", "generate benchmark instances");
    gen->add_option("--family", family, "unbounded | series-merge | random (default unbounded)");
    gen->add_option("--nodes", gen_nodes, "random family: nodes per DAG");
    gen->add_option("--edge-factor", gen_edge_factor, "random family: edges per node");
    gen->add_option("--final-fraction", gen_final_fraction, "random family: fraction of finals");
    gen->add_option("--aps", gen_aps, "random family: proposition count (0 = 4x nodes)");
    gen->add_option("--m", gen_m, "unbounded family: stage count");
    gen->add_option("--stages", gen_stages, "series-merge family: stage count");
    gen->add_option("--width", gen_width, "series-merge family: max label width");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--out", out_path, "output path (default: stdout)");

    auto* reduce = app.add_subcommand("reduce", "reduce a 3-CNF formula to a connection instance");
    reduce->add_option("--cnf", cnf_path, "DIMACS input file")->required();
    reduce->add_option("--out", out_path, "graph document output path (default: stdout)");
    reduce->add_option("--mce", mce_path, "also write the native class-partition form");

    auto* bench = app.add_subcommand("bench", "run the heuristic/oracle comparison harness");
    bench->add_option("--sizes", bench_sizes, "per-DAG node counts (e.g. --sizes 3 5 7)");
    bench->add_option("--seeds", bench_seeds, "instances per size");
    bench->add_option("--budget", budget_s, "oracle budget per instance in seconds");
    bench->add_option("--threads", bench_threads, "worker threads");
    bench->add_option("--base-seed", seed, "base seed for the corpus");
    bench->add_option("--out", out_path, "CSV output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (revise->parsed()) return cmd_revise(file, verify, verbose, dot_path, json_path);
        if (oracle->parsed()) return cmd_oracle(file, budget_s, prune, json_path);
        if (check->parsed()) return cmd_check(file);
        if (export_cmd->parsed()) return cmd_export(file, dot_path);
        if (gen->parsed()) {
            if (family == "random")
                return cmd_gen_random(gen_nodes, gen_edge_factor, gen_final_fraction, gen_aps,
                                      seed, out_path);
            return cmd_gen_family(family, gen_m, gen_stages, gen_width, seed, out_path);
        }
        if (reduce->parsed()) return cmd_reduce(cnf_path, out_path, mce_path);
        if (bench->parsed())
            return cmd_bench(bench_sizes, bench_seeds, budget_s, bench_threads, seed, out_path);
    } catch (const specrev::input_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInput;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
