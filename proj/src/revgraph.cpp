#include "specrev/revgraph.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

namespace specrev {

int RevisionGraph::atom_id(const RemovalAtom& atom) const {
    auto it = std::lower_bound(atom_table.begin(), atom_table.end(), atom);
    if (it == atom_table.end() || !(*it == atom)) return -1;
    return static_cast<int>(it - atom_table.begin());
}

std::string RevisionGraph::atom_to_string(int id) const {
    const RemovalAtom& a = atom_table.at(static_cast<size_t>(id));
    std::string s = literal_to_string(a.literal, prop_names);
    s += "@(";
    s += spec_state_names.at(static_cast<size_t>(a.spec_edge.first));
    s += ",";
    s += spec_state_names.at(static_cast<size_t>(a.spec_edge.second));
    s += ")#";
    s += std::to_string(a.clause);
    return s;
}

std::string RevisionGraph::label_to_string(const std::vector<int>& atoms) const {
    // All atoms of one label share the spec edge and clause, so render as
    // "{l1,l2}@(s,s')#k".
    if (atoms.empty()) return "{}";
    std::string lits = "{";
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0) lits += ",";
        lits += literal_to_string(atom_table[static_cast<size_t>(atoms[i])].literal, prop_names);
    }
    lits += "}";
    const RemovalAtom& a = atom_table[static_cast<size_t>(atoms.front())];
    lits += "@(" + spec_state_names.at(static_cast<size_t>(a.spec_edge.first)) + "," +
            spec_state_names.at(static_cast<size_t>(a.spec_edge.second)) + ")#" +
            std::to_string(a.clause);
    return lits;
}

int RevisionGraph::find_edge(int from, int to) const {
    for (int e : out[static_cast<size_t>(from)])
        if (edges[static_cast<size_t>(e)].to == to) return e;
    return -1;
}

void RevisionGraph::validate() const {
    if (nodes.empty()) throw input_error("graph: must have at least one node");
    if (sources.empty()) throw input_error("graph: must have at least one source");
    if (finals.empty()) throw input_error("graph: must have at least one final node");
    if (static_cast<int>(out.size()) != num_nodes())
        throw input_error("graph: adjacency must cover every node");
    for (const RevEdge& e : edges) {
        if (e.from < 0 || e.from >= num_nodes() || e.to < 0 || e.to >= num_nodes())
            throw input_error("graph: edge endpoint out of range");
        for (int a : e.atoms)
            if (a < 0 || a >= universe_size()) throw input_error("graph: atom id out of range");
    }
}

void build_adjacency(RevisionGraph& graph) {
    graph.out.assign(static_cast<size_t>(graph.num_nodes()), {});
    for (int e = 0; e < static_cast<int>(graph.edges.size()); ++e)
        graph.out[static_cast<size_t>(graph.edges[static_cast<size_t>(e)].from)].push_back(e);
    for (auto& adj : graph.out)
        std::sort(adj.begin(), adj.end(), [&graph](int a, int b) {
            const auto& ea = graph.edges[static_cast<size_t>(a)];
            const auto& eb = graph.edges[static_cast<size_t>(b)];
            return ea.to != eb.to ? ea.to < eb.to : a < b;
        });
    graph.transitions_unexpanded = static_cast<int>(graph.edges.size());
}

RevisionGraph build_revision_graph(const Fsm& fsm, const SpecAutomaton& spec,
                                   std::vector<std::string> prop_names) {
    fsm.validate();
    spec.validate();

    RevisionGraph g;
    const int n_spec = spec.num_states();
    g.n_real = fsm.num_states() * n_spec;
    g.spec_state_names = spec.state_names;
    if (prop_names.empty()) {
        int max_ap = -1;
        for (const auto& label : fsm.labels)
            for (PropId p : label) max_ap = std::max(max_ap, p);
        for (const auto& [edge, guard] : spec.guards)
            for (const Clause& c : guard.clauses)
                for (const Literal& l : c.literals) max_ap = std::max(max_ap, l.ap);
        for (int p = 0; p <= max_ap; ++p) prop_names.push_back("p" + std::to_string(p));
    }
    g.prop_names = std::move(prop_names);

    g.nodes.resize(static_cast<size_t>(g.n_real));
    for (int q = 0; q < fsm.num_states(); ++q) {
        for (int s = 0; s < n_spec; ++s) {
            RevNode& node = g.nodes[static_cast<size_t>(q * n_spec + s)];
            node.fsm_state = q;
            node.spec_state = s;
            node.name = "(" + fsm.state_names[static_cast<size_t>(q)] + "," +
                        spec.state_names[static_cast<size_t>(s)] + ")";
        }
    }

    // First pass: collect atoms so ids can be assigned in atom order.
    std::set<RemovalAtom> atom_set;
    for (int q = 0; q < fsm.num_states(); ++q) {
        for (int q2 : fsm.out[static_cast<size_t>(q)]) {
            const auto& label = fsm.labels[static_cast<size_t>(q2)];
            for (const auto& [edge, guard] : spec.guards) {
                if (guard.top || guard.satisfied_by(label)) continue;
                for (size_t i = 0; i < guard.clauses.size(); ++i)
                    for (const Literal& lit : guard.clauses[i].literals) {
                        bool holds = std::binary_search(label.begin(), label.end(), lit.ap);
                        if (holds == lit.negated)
                            atom_set.insert(RemovalAtom{edge, static_cast<int>(i), lit});
                    }
            }
        }
    }
    g.atom_table.assign(atom_set.begin(), atom_set.end());

    // Second pass: edges, real nodes in id order so dummy ids follow the
    // (edge, clause) encounter order.
    for (int q = 0; q < fsm.num_states(); ++q) {
        for (int s = 0; s < n_spec; ++s) {
            const int from = q * n_spec + s;
            struct Candidate {
                int to;
                const Guard* guard;
                std::pair<int, int> spec_edge;
                const std::vector<PropId>* label;
            };
            std::vector<Candidate> candidates;
            for (int q2 : fsm.out[static_cast<size_t>(q)]) {
                for (const auto& [edge, guard] : spec.guards) {
                    if (edge.first != s) continue;
                    candidates.push_back({q2 * n_spec + edge.second, &guard, edge,
                                          &fsm.labels[static_cast<size_t>(q2)]});
                }
            }
            std::sort(candidates.begin(), candidates.end(),
                      [](const Candidate& a, const Candidate& b) { return a.to < b.to; });

            for (const Candidate& c : candidates) {
                ++g.transitions_unexpanded;
                if (c.guard->top || c.guard->satisfied_by(*c.label)) {
                    g.edges.push_back(RevEdge{from, c.to, {}, false});
                    continue;
                }
                for (size_t i = 0; i < c.guard->clauses.size(); ++i) {
                    std::vector<int> label_atoms;
                    for (const Literal& lit : c.guard->clauses[i].literals) {
                        bool holds = std::binary_search(c.label->begin(), c.label->end(), lit.ap);
                        if (holds == lit.negated) {
                            RemovalAtom atom{c.spec_edge, static_cast<int>(i), lit};
                            auto it = std::lower_bound(g.atom_table.begin(), g.atom_table.end(), atom);
                            label_atoms.push_back(static_cast<int>(it - g.atom_table.begin()));
                        }
                    }
                    std::sort(label_atoms.begin(), label_atoms.end());

                    int dummy = g.num_nodes();
                    RevNode node;
                    node.dummy = true;
                    node.base_from = from;
                    node.base_to = c.to;
                    node.clause = static_cast<int>(i);
                    node.name = g.nodes[static_cast<size_t>(from)].name + "~" +
                                g.nodes[static_cast<size_t>(c.to)].name + "#" + std::to_string(i);
                    g.nodes.push_back(std::move(node));
                    g.edges.push_back(RevEdge{from, dummy, std::move(label_atoms), true});
                    g.edges.push_back(RevEdge{dummy, c.to, {}, true});
                }
            }
        }
    }

    g.out.assign(static_cast<size_t>(g.num_nodes()), {});
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
        g.out[static_cast<size_t>(g.edges[static_cast<size_t>(e)].from)].push_back(e);
    for (auto& adj : g.out)
        std::sort(adj.begin(), adj.end(), [&g](int a, int b) {
            return g.edges[static_cast<size_t>(a)].to != g.edges[static_cast<size_t>(b)].to
                       ? g.edges[static_cast<size_t>(a)].to < g.edges[static_cast<size_t>(b)].to
                       : a < b;
        });

    for (int q0 : fsm.initial) g.sources.push_back(q0 * n_spec + spec.initial);
    std::sort(g.sources.begin(), g.sources.end());
    for (int q = 0; q < fsm.num_states(); ++q)
        for (int s : spec.finals) g.finals.push_back(q * n_spec + s);
    std::sort(g.finals.begin(), g.finals.end());
    return g;
}

std::pair<int, RevisionSet> path_cost(const RevisionGraph& graph, const std::vector<int>& edge_path) {
    RevisionSet removed;
    for (size_t i = 0; i < edge_path.size(); ++i) {
        const RevEdge& e = graph.edges.at(static_cast<size_t>(edge_path[i]));
        if (i > 0) {
            const RevEdge& prev = graph.edges.at(static_cast<size_t>(edge_path[i - 1]));
            if (prev.to != e.from) throw input_error("path_cost: consecutive edges are not connected");
        }
        for (int a : e.atoms) removed.insert(graph.atom_table[static_cast<size_t>(a)]);
    }
    return {removed.size(), removed};
}

void write_dot(std::ostream& os, const RevisionGraph& graph) {
    os << "digraph revision {\n";
    os << "  rankdir=LR;\n";
    for (int v = 0; v < graph.num_nodes(); ++v) {
        const RevNode& node = graph.nodes[static_cast<size_t>(v)];
        if (node.dummy) {
            os << "  n" << v << " [shape=point,label=\"\"];\n";
            continue;
        }
        bool is_source = std::binary_search(graph.sources.begin(), graph.sources.end(), v);
        bool is_final = std::binary_search(graph.finals.begin(), graph.finals.end(), v);
        os << "  n" << v << " [label=\"" << node.name << "\"";
        if (is_final) os << ",shape=doublecircle";
        if (is_source) os << ",penwidth=2";
        os << "];\n";
    }
    for (const RevEdge& e : graph.edges) {
        os << "  n" << e.from << " -> n" << e.to;
        bool dashed = e.disabled_path || !e.atoms.empty();
        os << " [";
        if (dashed) os << "style=dashed";
        if (!e.atoms.empty()) {
            if (dashed) os << ",";
            os << "label=\"" << graph.label_to_string(e.atoms) << "\"";
        }
        os << "];\n";
    }
    os << "}\n";
}

}  // namespace specrev
