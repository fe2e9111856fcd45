#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "specrev/aamrp.hpp"
#include "specrev/automata.hpp"
#include "specrev/oracle.hpp"
#include "specrev/revgraph.hpp"

namespace specrev {

// A loaded instance file: proposition table plus the system and the
// specification automaton over it.
struct Instance {
    PropositionSet props;
    Fsm fsm;
    SpecAutomaton spec;
    int dropped_clauses = 0;  // contradictory/duplicate clauses eliminated at load
};

Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& instance);

// Graph documents describe a search graph directly (used for instances
// that are not products of an FSM and a spec automaton).
RevisionGraph graph_from_json(const nlohmann::json& doc);
nlohmann::json graph_to_json(const RevisionGraph& graph);

// Either kind of input file, detected by its top-level key.
struct AnyInput {
    std::optional<Instance> instance;
    std::optional<RevisionGraph> graph;  // built graph for both kinds
};

AnyInput load_input(const nlohmann::json& doc);
AnyInput load_input_file(const std::string& path);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

struct RunStats {
    int product_states = 0;
    int product_transitions_unexpanded = 0;
    int product_transitions_expanded = 0;
    int reachable_finals = 0;
    double wall_ms = 0;
};

nlohmann::json stats_to_json(const RunStats& stats);

// Result documents. `instance` may be null for graph-document runs, in
// which case witness states are node names rather than (q,s) pairs.
nlohmann::json outcome_to_json(const RevisionGraph& graph, const RevisionOutcome& outcome,
                               const Instance* instance, const RunStats& stats);
nlohmann::json oracle_to_json(const RevisionGraph& graph, const OracleResult& result,
                              const RunStats& stats);

// Parses the textual form of a revision set back against a graph's atom
// universe (used by tools that post-process result documents).
RevisionSet revision_from_json(const nlohmann::json& atoms, const RevisionGraph& graph);

std::string dump_document(const nlohmann::json& doc);  // canonical rendering

}  // namespace specrev
