#include "specrev/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace specrev {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* key, const char* where) {
    auto it = doc.find(key);
    if (it == doc.end())
        throw input_error(std::string(where) + ": missing required field '" + key + "'");
    return *it;
}

std::string as_string(const json& value, const std::string& where) {
    if (!value.is_string()) throw input_error(where + ": expected a string");
    return value.get<std::string>();
}

Literal parse_literal(const std::string& text, PropositionSet& props, const std::string& where) {
    if (text.empty()) throw input_error(where + ": empty literal");
    bool negated = text[0] == '!';
    std::string name = negated ? text.substr(1) : text;
    if (name.empty()) throw input_error(where + ": negation without a proposition");
    return Literal{props.intern(name), negated};
}

}  // namespace

Instance instance_from_json(const json& doc) {
    Instance instance;
    if (auto it = doc.find("propositions"); it != doc.end()) {
        if (!it->is_array()) throw input_error("propositions: expected an array");
        for (const auto& p : *it) instance.props.intern(as_string(p, "propositions"));
    }

    const json& fsm_doc = require(doc, "fsm", "instance");
    const json& states = require(fsm_doc, "states", "fsm");
    if (!states.is_array() || states.empty()) throw input_error("fsm.states: expected a non-empty array");
    for (const auto& s : states) instance.fsm.state_names.push_back(as_string(s, "fsm.states"));

    std::map<std::string, int> fsm_index;
    for (int i = 0; i < instance.fsm.num_states(); ++i)
        if (!fsm_index.emplace(instance.fsm.state_names[static_cast<size_t>(i)], i).second)
            throw input_error("fsm.states: duplicate state '" +
                              instance.fsm.state_names[static_cast<size_t>(i)] + "'");
    auto fsm_id = [&](const json& v, const char* where) {
        auto it = fsm_index.find(as_string(v, where));
        if (it == fsm_index.end())
            throw input_error(std::string(where) + ": unknown state '" + v.get<std::string>() + "'");
        return it->second;
    };

    const json& init = require(fsm_doc, "init", "fsm");
    if (!init.is_array() || init.empty()) throw input_error("fsm.init: expected a non-empty array");
    for (const auto& s : init) instance.fsm.initial.push_back(fsm_id(s, "fsm.init"));
    std::sort(instance.fsm.initial.begin(), instance.fsm.initial.end());
    instance.fsm.initial.erase(
        std::unique(instance.fsm.initial.begin(), instance.fsm.initial.end()),
        instance.fsm.initial.end());

    instance.fsm.labels.assign(static_cast<size_t>(instance.fsm.num_states()), {});
    const json& labels = require(fsm_doc, "labels", "fsm");
    if (!labels.is_object()) throw input_error("fsm.labels: expected an object");
    for (const auto& [name, prop_list] : labels.items()) {
        auto it = fsm_index.find(name);
        if (it == fsm_index.end()) throw input_error("fsm.labels: unknown state '" + name + "'");
        if (!prop_list.is_array()) throw input_error("fsm.labels." + name + ": expected an array");
        auto& lab = instance.fsm.labels[static_cast<size_t>(it->second)];
        for (const auto& p : prop_list)
            lab.push_back(instance.props.intern(as_string(p, "fsm.labels")));
        std::sort(lab.begin(), lab.end());
        lab.erase(std::unique(lab.begin(), lab.end()), lab.end());
    }

    instance.fsm.out.assign(static_cast<size_t>(instance.fsm.num_states()), {});
    const json& edges = require(fsm_doc, "edges", "fsm");
    if (!edges.is_array()) throw input_error("fsm.edges: expected an array");
    for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2)
            throw input_error("fsm.edges: each edge must be a [from,to] pair");
        int from = fsm_id(e[0], "fsm.edges");
        int to = fsm_id(e[1], "fsm.edges");
        instance.fsm.out[static_cast<size_t>(from)].push_back(to);
    }
    for (auto& succ : instance.fsm.out) {
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }

    const json& spec_doc = require(doc, "spec", "instance");
    const json& spec_states = require(spec_doc, "states", "spec");
    if (!spec_states.is_array() || spec_states.empty())
        throw input_error("spec.states: expected a non-empty array");
    for (const auto& s : spec_states)
        instance.spec.state_names.push_back(as_string(s, "spec.states"));
    std::map<std::string, int> spec_index;
    for (int i = 0; i < instance.spec.num_states(); ++i)
        if (!spec_index.emplace(instance.spec.state_names[static_cast<size_t>(i)], i).second)
            throw input_error("spec.states: duplicate state '" +
                              instance.spec.state_names[static_cast<size_t>(i)] + "'");
    auto spec_id = [&](const json& v, const char* where) {
        auto it = spec_index.find(as_string(v, where));
        if (it == spec_index.end())
            throw input_error(std::string(where) + ": unknown state '" + v.get<std::string>() + "'");
        return it->second;
    };

    instance.spec.initial = spec_id(require(spec_doc, "init", "spec"), "spec.init");
    const json& finals = require(spec_doc, "finals", "spec");
    if (!finals.is_array() || finals.empty())
        throw input_error("spec.finals: expected a non-empty array");
    for (const auto& s : finals) instance.spec.finals.push_back(spec_id(s, "spec.finals"));
    std::sort(instance.spec.finals.begin(), instance.spec.finals.end());
    instance.spec.finals.erase(
        std::unique(instance.spec.finals.begin(), instance.spec.finals.end()),
        instance.spec.finals.end());

    const json& transitions = require(spec_doc, "transitions", "spec");
    if (!transitions.is_array()) throw input_error("spec.transitions: expected an array");
    for (const auto& t : transitions) {
        int from = spec_id(require(t, "from", "spec.transitions"), "spec.transitions.from");
        int to = spec_id(require(t, "to", "spec.transitions"), "spec.transitions.to");
        const json& guard_doc = require(t, "guard", "spec.transitions");
        const std::string where = "spec.transitions " +
                                  instance.spec.state_names[static_cast<size_t>(from)] + "->" +
                                  instance.spec.state_names[static_cast<size_t>(to)];
        if (instance.spec.guards.count({from, to}))
            throw input_error(where + ": duplicate transition");

        if (guard_doc.is_string()) {
            if (guard_doc.get<std::string>() != "true")
                throw input_error(where + ": guard string must be \"true\"");
            instance.spec.guards.emplace(std::make_pair(from, to), Guard::make_top());
            continue;
        }
        if (!guard_doc.is_array() || guard_doc.empty())
            throw input_error(where + ": guard must be \"true\" or a non-empty clause list");
        std::vector<std::vector<Literal>> raw;
        for (const auto& clause_doc : guard_doc) {
            if (!clause_doc.is_array() || clause_doc.empty())
                throw input_error(where + ": each clause must be a non-empty literal list");
            std::vector<Literal> clause;
            for (const auto& lit : clause_doc)
                clause.push_back(parse_literal(as_string(lit, where), instance.props, where));
            raw.push_back(std::move(clause));
        }
        GuardSimplification simplified = simplify_guard(raw);
        instance.dropped_clauses += simplified.dropped_clauses;
        if (!simplified.guard) continue;  // all clauses contradictory: no transition
        instance.spec.guards.emplace(std::make_pair(from, to), std::move(*simplified.guard));
    }

    instance.fsm.validate();
    instance.spec.validate();
    return instance;
}

json instance_to_json(const Instance& instance) {
    json doc;
    doc["propositions"] = instance.props.names();

    json fsm_doc;
    fsm_doc["states"] = instance.fsm.state_names;
    json init = json::array();
    for (int q : instance.fsm.initial)
        init.push_back(instance.fsm.state_names[static_cast<size_t>(q)]);
    fsm_doc["init"] = std::move(init);
    json labels = json::object();
    for (int q = 0; q < instance.fsm.num_states(); ++q) {
        json props = json::array();
        for (PropId p : instance.fsm.labels[static_cast<size_t>(q)])
            props.push_back(instance.props.name_of(p));
        labels[instance.fsm.state_names[static_cast<size_t>(q)]] = std::move(props);
    }
    fsm_doc["labels"] = std::move(labels);
    json edges = json::array();
    for (int q = 0; q < instance.fsm.num_states(); ++q)
        for (int q2 : instance.fsm.out[static_cast<size_t>(q)])
            edges.push_back(json::array({instance.fsm.state_names[static_cast<size_t>(q)],
                                         instance.fsm.state_names[static_cast<size_t>(q2)]}));
    fsm_doc["edges"] = std::move(edges);
    doc["fsm"] = std::move(fsm_doc);

    json spec_doc;
    spec_doc["states"] = instance.spec.state_names;
    spec_doc["init"] = instance.spec.state_names[static_cast<size_t>(instance.spec.initial)];
    json finals = json::array();
    for (int s : instance.spec.finals)
        finals.push_back(instance.spec.state_names[static_cast<size_t>(s)]);
    spec_doc["finals"] = std::move(finals);
    json transitions = json::array();
    for (const auto& [edge, guard] : instance.spec.guards) {
        json t;
        t["from"] = instance.spec.state_names[static_cast<size_t>(edge.first)];
        t["to"] = instance.spec.state_names[static_cast<size_t>(edge.second)];
        if (guard.top) {
            t["guard"] = "true";
        } else {
            json clauses = json::array();
            for (const Clause& c : guard.clauses) {
                json clause = json::array();
                for (const Literal& lit : c.literals)
                    clause.push_back(literal_to_string(lit, instance.props.names()));
                clauses.push_back(std::move(clause));
            }
            t["guard"] = std::move(clauses);
        }
        transitions.push_back(std::move(t));
    }
    spec_doc["transitions"] = std::move(transitions);
    doc["spec"] = std::move(spec_doc);
    return doc;
}

namespace {

json atom_to_json(const RemovalAtom& atom, const std::vector<std::string>& spec_names,
                  const std::vector<std::string>& prop_names) {
    json a;
    a["edge"] = json::array({spec_names.at(static_cast<size_t>(atom.spec_edge.first)),
                             spec_names.at(static_cast<size_t>(atom.spec_edge.second))});
    a["clause"] = atom.clause;
    a["literal"] = literal_to_string(atom.literal, prop_names);
    return a;
}

}  // namespace

RevisionGraph graph_from_json(const json& doc) {
    const json& g = require(doc, "graph", "document");
    RevisionGraph graph;

    PropositionSet props;
    if (auto it = g.find("propositions"); it != g.end())
        for (const auto& p : *it) props.intern(as_string(p, "graph.propositions"));
    std::vector<std::string> spec_states;
    if (auto it = g.find("spec_states"); it != g.end())
        for (const auto& s : *it) spec_states.push_back(as_string(s, "graph.spec_states"));

    const json& nodes = require(g, "nodes", "graph");
    if (!nodes.is_array() || nodes.empty())
        throw input_error("graph.nodes: expected a non-empty array");
    std::map<std::string, int> node_index;
    for (const auto& n : nodes) {
        RevNode node;
        node.name = as_string(n, "graph.nodes");
        if (!node_index.emplace(node.name, graph.num_nodes()).second)
            throw input_error("graph.nodes: duplicate node '" + node.name + "'");
        graph.nodes.push_back(std::move(node));
    }
    graph.n_real = graph.num_nodes();
    auto node_id = [&](const json& v, const char* where) {
        auto it = node_index.find(as_string(v, where));
        if (it == node_index.end())
            throw input_error(std::string(where) + ": unknown node '" + v.get<std::string>() + "'");
        return it->second;
    };

    auto spec_state_id = [&](const std::string& name) {
        for (int i = 0; i < static_cast<int>(spec_states.size()); ++i)
            if (spec_states[static_cast<size_t>(i)] == name) return i;
        spec_states.push_back(name);
        return static_cast<int>(spec_states.size()) - 1;
    };

    // First pass: collect the atom universe.
    struct RawEdge {
        int from, to;
        std::vector<RemovalAtom> atoms;
    };
    std::vector<RawEdge> raw_edges;
    std::set<RemovalAtom> atom_set;
    const json& edges = require(g, "edges", "graph");
    if (!edges.is_array()) throw input_error("graph.edges: expected an array");
    for (const auto& e : edges) {
        RawEdge raw;
        raw.from = node_id(require(e, "from", "graph.edges"), "graph.edges.from");
        raw.to = node_id(require(e, "to", "graph.edges"), "graph.edges.to");
        if (auto it = e.find("atoms"); it != e.end()) {
            if (!it->is_array()) throw input_error("graph.edges.atoms: expected an array");
            for (const auto& a : *it) {
                const json& edge_names = require(a, "edge", "graph.edges.atoms");
                if (!edge_names.is_array() || edge_names.size() != 2)
                    throw input_error("graph.edges.atoms.edge: expected a [from,to] pair");
                RemovalAtom atom;
                atom.spec_edge = {spec_state_id(as_string(edge_names[0], "atoms.edge")),
                                  spec_state_id(as_string(edge_names[1], "atoms.edge"))};
                atom.clause = require(a, "clause", "graph.edges.atoms").get<int>();
                std::string lit = as_string(require(a, "literal", "graph.edges.atoms"),
                                            "graph.edges.atoms.literal");
                bool negated = !lit.empty() && lit[0] == '!';
                atom.literal = Literal{props.intern(negated ? lit.substr(1) : lit), negated};
                raw.atoms.push_back(atom);
                atom_set.insert(atom);
            }
        }
        raw_edges.push_back(std::move(raw));
    }
    graph.atom_table.assign(atom_set.begin(), atom_set.end());
    graph.prop_names = props.names();
    graph.spec_state_names = std::move(spec_states);
    if (graph.spec_state_names.empty()) graph.spec_state_names.push_back("s");

    for (const RawEdge& raw : raw_edges) {
        std::vector<int> ids;
        for (const RemovalAtom& atom : raw.atoms) ids.push_back(graph.atom_id(atom));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        bool labeled = !ids.empty();
        graph.edges.push_back(RevEdge{raw.from, raw.to, std::move(ids), labeled});
    }

    const json& sources = require(g, "sources", "graph");
    if (!sources.is_array() || sources.empty())
        throw input_error("graph.sources: expected a non-empty array");
    for (const auto& s : sources) graph.sources.push_back(node_id(s, "graph.sources"));
    std::sort(graph.sources.begin(), graph.sources.end());
    const json& finals = require(g, "finals", "graph");
    if (!finals.is_array() || finals.empty())
        throw input_error("graph.finals: expected a non-empty array");
    for (const auto& f : finals) graph.finals.push_back(node_id(f, "graph.finals"));
    std::sort(graph.finals.begin(), graph.finals.end());

    build_adjacency(graph);
    graph.validate();
    return graph;
}

json graph_to_json(const RevisionGraph& graph) {
    json g;
    g["propositions"] = graph.prop_names;
    g["spec_states"] = graph.spec_state_names;
    json nodes = json::array();
    for (const RevNode& node : graph.nodes) nodes.push_back(node.name);
    g["nodes"] = std::move(nodes);
    json sources = json::array();
    for (int s : graph.sources) sources.push_back(graph.nodes[static_cast<size_t>(s)].name);
    g["sources"] = std::move(sources);
    json finals = json::array();
    for (int f : graph.finals) finals.push_back(graph.nodes[static_cast<size_t>(f)].name);
    g["finals"] = std::move(finals);
    json edges = json::array();
    for (const RevEdge& e : graph.edges) {
        json edge;
        edge["from"] = graph.nodes[static_cast<size_t>(e.from)].name;
        edge["to"] = graph.nodes[static_cast<size_t>(e.to)].name;
        json atoms = json::array();
        for (int id : e.atoms)
            atoms.push_back(atom_to_json(graph.atom_table[static_cast<size_t>(id)],
                                         graph.spec_state_names, graph.prop_names));
        edge["atoms"] = std::move(atoms);
        edges.push_back(std::move(edge));
    }
    g["edges"] = std::move(edges);
    json doc;
    doc["graph"] = std::move(g);
    return doc;
}

AnyInput load_input(const json& doc) {
    AnyInput input;
    if (doc.contains("graph")) {
        input.graph = graph_from_json(doc);
        return input;
    }
    if (doc.contains("fsm") || doc.contains("spec")) {
        input.instance = instance_from_json(doc);
        input.graph = build_revision_graph(input.instance->fsm, input.instance->spec,
                                           input.instance->props.names());
        return input;
    }
    throw input_error("document: expected a top-level 'fsm'/'spec' pair or a 'graph'");
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& err) {
        throw input_error(path + ": " + err.what());
    }
    return doc;
}

AnyInput load_input_file(const std::string& path) { return load_input(load_json_file(path)); }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << text;
}

json stats_to_json(const RunStats& stats) {
    json s;
    s["product_states"] = stats.product_states;
    s["product_transitions_unexpanded"] = stats.product_transitions_unexpanded;
    s["product_transitions_expanded"] = stats.product_transitions_expanded;
    s["reachable_finals"] = stats.reachable_finals;
    s["wall_ms"] = stats.wall_ms;
    return s;
}

namespace {

json witness_states(const RevisionGraph& graph, const std::vector<int>& nodes,
                    const Instance* instance) {
    json out = json::array();
    for (int v : nodes) {
        const RevNode& node = graph.nodes[static_cast<size_t>(v)];
        if (instance && node.fsm_state >= 0) {
            out.push_back(json::array(
                {instance->fsm.state_names.at(static_cast<size_t>(node.fsm_state)),
                 instance->spec.state_names.at(static_cast<size_t>(node.spec_state))}));
        } else {
            out.push_back(node.name);
        }
    }
    return out;
}

}  // namespace

json outcome_to_json(const RevisionGraph& graph, const RevisionOutcome& outcome,
                     const Instance* instance, const RunStats& stats) {
    json doc;
    switch (outcome.status) {
        case RevisionOutcome::Status::AlreadySatisfiable:
            doc["status"] = "already_satisfiable";
            break;
        case RevisionOutcome::Status::Revised:
            doc["status"] = "revised";
            break;
        case RevisionOutcome::Status::Infeasible:
            doc["status"] = "infeasible";
            break;
    }
    doc["cost"] = outcome.cost;
    json atoms = json::array();
    for (const RemovalAtom& atom : outcome.revision.atoms)
        atoms.push_back(atom_to_json(atom, graph.spec_state_names, graph.prop_names));
    doc["atoms"] = std::move(atoms);
    if (outcome.status != RevisionOutcome::Status::Infeasible) {
        json witness;
        witness["prefix"] = witness_states(graph, outcome.witness_prefix, instance);
        witness["cycle"] = witness_states(graph, outcome.witness_cycle, instance);
        doc["witness"] = std::move(witness);
    }
    doc["stats"] = stats_to_json(stats);
    return doc;
}

json oracle_to_json(const RevisionGraph& graph, const OracleResult& result, const RunStats& stats) {
    json doc;
    switch (result.status) {
        case OracleResult::Status::Optimal:
            doc["status"] = result.cost == 0 ? "already_satisfiable" : "optimal";
            break;
        case OracleResult::Status::Infeasible:
            doc["status"] = "infeasible";
            break;
        case OracleResult::Status::TimedOut:
            doc["status"] = "timed_out";
            break;
    }
    doc["cost"] = result.status == OracleResult::Status::Optimal ? result.cost : 0;
    json atoms = json::array();
    for (const RemovalAtom& atom : result.revision.atoms)
        atoms.push_back(atom_to_json(atom, graph.spec_state_names, graph.prop_names));
    doc["atoms"] = std::move(atoms);
    doc["subsets_tested"] = result.subsets_tested;
    doc["stats"] = stats_to_json(stats);
    return doc;
}

RevisionSet revision_from_json(const json& atoms, const RevisionGraph& graph) {
    RevisionSet rev;
    for (const auto& a : atoms) {
        const json& edge = require(a, "edge", "atoms");
        RemovalAtom atom;
        std::string from = as_string(edge.at(0), "atoms.edge");
        std::string to = as_string(edge.at(1), "atoms.edge");
        int sf = -1, st = -1;
        for (int i = 0; i < static_cast<int>(graph.spec_state_names.size()); ++i) {
            if (graph.spec_state_names[static_cast<size_t>(i)] == from) sf = i;
            if (graph.spec_state_names[static_cast<size_t>(i)] == to) st = i;
        }
        if (sf < 0 || st < 0) throw input_error("atoms.edge: unknown spec state");
        atom.spec_edge = {sf, st};
        atom.clause = require(a, "clause", "atoms").get<int>();
        std::string lit = as_string(require(a, "literal", "atoms"), "atoms.literal");
        bool negated = !lit.empty() && lit[0] == '!';
        std::string name = negated ? lit.substr(1) : lit;
        int ap = -1;
        for (int i = 0; i < static_cast<int>(graph.prop_names.size()); ++i)
            if (graph.prop_names[static_cast<size_t>(i)] == name) ap = i;
        if (ap < 0) throw input_error("atoms.literal: unknown proposition '" + name + "'");
        atom.literal = Literal{ap, negated};
        rev.insert(atom);
    }
    return rev;
}

std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace specrev
