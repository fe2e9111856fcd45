#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "specrev/automata.hpp"

namespace specrev {

// Node of the revision graph. Real nodes are product states; dummy nodes
// split a disabled product edge into one two-hop path per guard clause so
// that every labeled edge carries exactly one clause choice.
struct RevNode {
    bool dummy = false;
    int fsm_state = -1;   // real nodes
    int spec_state = -1;  // real nodes
    int base_from = -1;   // dummy nodes: endpoints of the expanded edge
    int base_to = -1;
    int clause = -1;      // dummy nodes: clause index of the spec edge
    std::string name;
};

struct RevEdge {
    int from = -1;
    int to = -1;
    std::vector<int> atoms;  // sorted atom ids; empty on enabled edges
    bool disabled_path = false;  // part of a disabled-transition expansion
};

// Product-shaped search graph whose disabled edges are labeled with the
// removal atoms that would enable them.
struct RevisionGraph {
    std::vector<RevNode> nodes;   // real nodes first, then dummies
    int n_real = 0;
    std::vector<RevEdge> edges;
    std::vector<std::vector<int>> out;  // node -> edge indices, sorted by target
    std::vector<int> sources;           // sorted, real nodes
    std::vector<int> finals;            // sorted, real nodes

    std::vector<RemovalAtom> atom_table;     // id -> atom, sorted by atom value
    std::vector<std::string> spec_state_names;  // for rendering atoms
    std::vector<std::string> prop_names;

    int transitions_unexpanded = 0;  // enabled + disabled product edges

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int universe_size() const { return static_cast<int>(atom_table.size()); }
    int atom_id(const RemovalAtom& atom) const;  // -1 when absent
    std::string atom_to_string(int atom_id) const;
    std::string label_to_string(const std::vector<int>& atoms) const;

    // Index of the edge u->v, or -1. When parallel edges exist the one
    // with the smallest index is returned.
    int find_edge(int from, int to) const;

    void validate() const;  // structural sanity, throws input_error
};

// Rebuilds the adjacency lists from `edges` (sorted by target) and sets
// transitions_unexpanded for graphs assembled edge-by-edge.
void build_adjacency(RevisionGraph& graph);

// Builds the revision graph of `fsm` x `spec`. For every FSM transition
// q->q' and spec pair (s,s') with a guard: if the guard is satisfied by
// the label of q', one enabled edge is added; otherwise one dummy path
// per clause, whose first hop is labeled with the clause literals
// violated at q'. `prop_names` is used for rendering; when empty, names
// p0..pN are synthesized.
RevisionGraph build_revision_graph(const Fsm& fsm, const SpecAutomaton& spec,
                                   std::vector<std::string> prop_names = {});

// Total removal cost of a path given as a sequence of edge indices:
// the cardinality of the union of the edge labels. Throws input_error if
// consecutive edges are not connected.
std::pair<int, RevisionSet> path_cost(const RevisionGraph& graph, const std::vector<int>& edge_path);

// Graphviz rendering: solid enabled edges, dashed disabled expansions,
// labels as "{literals}@(s,s')#clause".
void write_dot(std::ostream& os, const RevisionGraph& graph);

}  // namespace specrev
