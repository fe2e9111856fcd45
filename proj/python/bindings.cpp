#include <pybind11/pybind11.h>

#include <chrono>
#include <sstream>

#include "specrev/aamrp.hpp"
#include "specrev/bench.hpp"
#include "specrev/io.hpp"
#include "specrev/oracle.hpp"

namespace py = pybind11;
using namespace specrev;

namespace {

// The bindings speak JSON text; the Python package turns that into dicts.
AnyInput parse_input(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw input_error(err.what());
    }
    return load_input(doc);
}

RunStats collect_stats(const RevisionGraph& graph, int reachable_finals, double wall_ms) {
    RunStats stats;
    stats.product_states = graph.n_real;
    stats.product_transitions_unexpanded = graph.transitions_unexpanded;
    stats.product_transitions_expanded = static_cast<int>(graph.edges.size());
    stats.reachable_finals = reachable_finals;
    stats.wall_ms = wall_ms;
    return stats;
}

std::string revise_json(const std::string& text) {
    AnyInput input = parse_input(text);
    auto start = std::chrono::steady_clock::now();
    RevisionOutcome outcome = aamrp(*input.graph);
    double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    nlohmann::json doc =
        outcome_to_json(*input.graph, outcome, input.instance ? &*input.instance : nullptr,
                        collect_stats(*input.graph, outcome.diag.reachable_finals, wall));
    doc["verified"] = input.instance
                          ? verify_outcome(input.instance->fsm, input.instance->spec, outcome)
                          : verify_outcome_on_graph(*input.graph, outcome);
    return dump_document(doc);
}

std::string oracle_json(const std::string& text, double budget_s, bool prune) {
    AnyInput input = parse_input(text);
    OracleOptions options;
    options.budget = std::chrono::milliseconds(static_cast<long long>(budget_s * 1000.0));
    options.frontier_pruning = prune;
    auto start = std::chrono::steady_clock::now();
    OracleResult result = brute_force_mrp(*input.graph, options);
    double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return dump_document(
        oracle_to_json(*input.graph, result, collect_stats(*input.graph, 0, wall)));
}

std::string check_json(const std::string& text) {
    AnyInput input = parse_input(text);
    bool satisfiable;
    if (input.instance) {
        satisfiable =
            is_satisfiable(build_product(input.instance->fsm, input.instance->spec)).has_value();
    } else {
        std::vector<char> none(static_cast<size_t>(input.graph->universe_size()), 0);
        satisfiable = graph_has_accepting_lasso(*input.graph, &none);
    }
    nlohmann::json doc;
    doc["satisfiable"] = satisfiable;
    doc["stats"] = stats_to_json(collect_stats(*input.graph, 0, 0));
    doc["atoms_total"] = input.graph->universe_size();
    return dump_document(doc);
}

std::string generate_random_json(int nodes, double edge_factor, double final_fraction, int aps,
                                 std::uint64_t seed) {
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
    int count = aps > 0 ? aps : 4 * nodes;
    for (int i = 0; i < count; ++i) instance.props.intern("p" + std::to_string(i));
    return dump_document(instance_to_json(instance));
}

std::string generate_unbounded_json(int m) {
    return dump_document(graph_to_json(gen_unbounded_family(m)));
}

std::string generate_series_merge_json(int stages, int width, std::uint64_t seed) {
    return dump_document(graph_to_json(gen_series_merge_dag(stages, width, seed)));
}

std::string reduce_dimacs_json(const std::string& dimacs) {
    std::istringstream in(dimacs);
    CnfFormula cnf = parse_dimacs(in);
    return dump_document(graph_to_json(mce_to_revision_graph(reduce_3sat_to_mce(cnf))));
}

std::string export_dot_text(const std::string& text) {
    AnyInput input = parse_input(text);
    std::ostringstream out;
    write_dot(out, *input.graph);
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_specrev, m) {
    m.doc() = "Minimal specification revision: heuristic and exact search over "
              "guard-labeled product graphs";
    py::register_exception<input_error>(m, "InputError", PyExc_ValueError);

    m.def("revise_json", &revise_json, py::arg("document"),
          "Run the heuristic revision search on an instance or graph document "
          "(JSON text) and return the result document as JSON text.");
    m.def("oracle_json", &oracle_json, py::arg("document"), py::arg("budget_s") = 60.0,
          py::arg("prune") = false,
          "Run the exact exhaustive search with a time budget in seconds.");
    m.def("check_json", &check_json, py::arg("document"),
          "Validate a document and test satisfiability without revising.");
    m.def("generate_random_json", &generate_random_json, py::arg("nodes") = 3,
          py::arg("edge_factor") = 2.5, py::arg("final_fraction") = 0.2, py::arg("aps") = 0,
          py::arg("seed") = 1, "Generate a random DAG instance document.");
    m.def("generate_unbounded_json", &generate_unbounded_json, py::arg("m"),
          "Generate the staged-diamond family graph with the given stage count.");
    m.def("generate_series_merge_json", &generate_series_merge_json, py::arg("stages"),
          py::arg("width") = 2, py::arg("seed") = 1,
          "Generate a series-merge diamond DAG graph document.");
    m.def("reduce_dimacs_json", &reduce_dimacs_json, py::arg("dimacs"),
          "Reduce a 3-CNF DIMACS formula to a connection graph document.");
    m.def("export_dot", &export_dot_text, py::arg("document"),
          "Render the search graph of a document in Graphviz format.");
}
