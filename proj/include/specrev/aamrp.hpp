#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "specrev/revgraph.hpp"

namespace specrev {

inline constexpr int kInfCost = std::numeric_limits<int>::max();

// Per-node removal-set estimate. `atoms` is a bitset over the graph's
// atom universe; `size` is its cardinality, kInfCost when unreached.
class AtomBits {
public:
    AtomBits() = default;
    explicit AtomBits(int universe) : words_(static_cast<size_t>((universe + 63) / 64), 0) {}

    bool contains(int id) const {
        return (words_[static_cast<size_t>(id) >> 6] >> (static_cast<unsigned>(id) & 63u)) & 1u;
    }
    void insert(int id) {
        auto& w = words_[static_cast<size_t>(id) >> 6];
        std::uint64_t bit = std::uint64_t{1} << (static_cast<unsigned>(id) & 63u);
        if (!(w & bit)) {
            w |= bit;
            ++count_;
        }
    }
    void clear() {
        std::fill(words_.begin(), words_.end(), 0);
        count_ = 0;
    }
    int count() const { return count_; }
    std::vector<int> to_ids() const;

    // |*this  U  label| without materializing the union.
    int union_count(const std::vector<int>& label) const {
        int extra = 0;
        for (int id : label)
            if (!contains(id)) ++extra;
        return count_ + extra;
    }

private:
    std::vector<std::uint64_t> words_;
    int count_ = 0;
};

// The M (atom set, size) and P (parent) tables of the search, plus the
// visited set in visit order.
struct SearchTables {
    std::vector<AtomBits> atoms;
    std::vector<int> size;     // kInfCost = unreached
    std::vector<int> parent;   // -1 = none
    std::vector<char> visited;
    std::vector<int> visit_order;

    static SearchTables make(const RevisionGraph& graph);
    void seed(int node, AtomBits set);  // marks `node` reached with `set`
};

// Single relaxation step: if |M[u] U label(u,v)| < M[v].size the estimate
// for v is replaced (strict inequality; ties never displace).
// Returns true when v was updated.
bool relax_edge(const RevisionGraph& graph, int edge_index, SearchTables& tables);

// Invoked after seeding and after each completed visit; `completed` is
// the number of visits performed so far.
using SearchTrace = std::function<void(int completed, const SearchTables&)>;

// Dijkstra-style sweep keyed on M[.].size with deterministic (size, node)
// tie-breaking. `sources` are visited upfront and never re-extracted. In
// lasso mode there must be exactly one source; after its out-edges are
// relaxed its own entry is reset to the self-loop union when a self-loop
// exists and to infinity otherwise, so only genuine cycles make it
// finite again.
SearchTables find_min_path(const RevisionGraph& graph, const std::vector<int>& sources,
                           SearchTables seeded, bool lasso, const SearchTrace& trace = nullptr);

struct RevisionOutcome {
    enum class Status { AlreadySatisfiable, Revised, Infeasible };
    Status status = Status::Infeasible;
    RevisionSet revision;
    int cost = 0;
    // Witness over graph nodes (dummy nodes stripped); cycle endpoint is
    // the chosen final node.
    std::vector<int> witness_prefix;
    std::vector<int> witness_cycle;

    struct Diagnostics {
        // (final node, candidate cost) for every final that completed a lasso.
        std::vector<std::pair<int, int>> candidates;
        bool cost_equals_universe = false;
        int reachable_finals = 0;
    } diag;
};

// The full heuristic: prefix sweep from all sources, then one seeded
// lasso sweep per reachable final; keeps the minimum-cardinality
// prefix+lasso atom set, later equal-cost candidates replacing earlier
// ones. Throws input_error when a source is also a final node.
RevisionOutcome aamrp(const RevisionGraph& graph);

// Independent check of an outcome against the automata it came from:
// Revised outcomes must make the revised product non-empty,
// AlreadySatisfiable ones the unrevised product, and Infeasible ones must
// stay empty even with every guard relaxed to true.
bool verify_outcome(const Fsm& fsm, const SpecAutomaton& spec, const RevisionOutcome& outcome);

// Same check at graph level (for graphs not backed by an FSM/spec pair):
// an edge is enabled iff its label is contained in the revision.
bool verify_outcome_on_graph(const RevisionGraph& graph, const RevisionOutcome& outcome);

// True iff the graph restricted to edges whose label is contained in
// `enabled_atoms` (bitset by atom id; pass std::nullopt for "all") has an
// accepting lasso.
bool graph_has_accepting_lasso(const RevisionGraph& graph, const std::vector<char>* enabled_atoms);

}  // namespace specrev
