#include "specrev/aamrp.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace specrev {

std::vector<int> AtomBits::to_ids() const {
    std::vector<int> ids;
    ids.reserve(static_cast<size_t>(count_));
    for (size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            unsigned b = static_cast<unsigned>(__builtin_ctzll(bits));
            ids.push_back(static_cast<int>(w * 64 + b));
            bits &= bits - 1;
        }
    }
    return ids;
}

SearchTables SearchTables::make(const RevisionGraph& graph) {
    SearchTables t;
    const size_t n = static_cast<size_t>(graph.num_nodes());
    t.atoms.assign(n, AtomBits(graph.universe_size()));
    t.size.assign(n, kInfCost);
    t.parent.assign(n, -1);
    t.visited.assign(n, 0);
    return t;
}

void SearchTables::seed(int node, AtomBits set) {
    size[static_cast<size_t>(node)] = set.count();
    atoms[static_cast<size_t>(node)] = std::move(set);
}

bool relax_edge(const RevisionGraph& graph, int edge_index, SearchTables& tables) {
    const RevEdge& e = graph.edges[static_cast<size_t>(edge_index)];
    if (tables.size[static_cast<size_t>(e.from)] == kInfCost) return false;
    const AtomBits& from_set = tables.atoms[static_cast<size_t>(e.from)];
    int candidate = from_set.union_count(e.atoms);
    if (candidate >= tables.size[static_cast<size_t>(e.to)]) return false;
    AtomBits merged = from_set;
    for (int a : e.atoms) merged.insert(a);
    tables.atoms[static_cast<size_t>(e.to)] = std::move(merged);
    tables.size[static_cast<size_t>(e.to)] = candidate;
    tables.parent[static_cast<size_t>(e.to)] = e.from;
    return true;
}

SearchTables find_min_path(const RevisionGraph& graph, const std::vector<int>& sources,
                           SearchTables tables, bool lasso, const SearchTrace& trace) {
    using HeapEntry = std::pair<int, int>;  // (size, node)
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
    std::vector<char> is_source(static_cast<size_t>(graph.num_nodes()), 0);
    for (int s : sources) is_source[static_cast<size_t>(s)] = 1;

    auto push_if_improved = [&](int edge_index) {
        if (relax_edge(graph, edge_index, tables)) {
            int to = graph.edges[static_cast<size_t>(edge_index)].to;
            heap.emplace(tables.size[static_cast<size_t>(to)], to);
        }
    };

    for (int src : sources) {
        tables.visited[static_cast<size_t>(src)] = 1;
        tables.visit_order.push_back(src);
    }
    for (int src : sources)
        for (int e : graph.out[static_cast<size_t>(src)])
            if (graph.edges[static_cast<size_t>(e)].to != src) push_if_improved(e);

    if (lasso) {
        if (sources.size() != 1) throw std::logic_error("lasso search needs a single source");
        const int src = sources.front();
        // Reset the source to its cheapest self-loop, or to infinity so
        // that only a genuine returning path makes it finite again.
        int best_self = -1, best_count = kInfCost;
        for (int e : graph.out[static_cast<size_t>(src)]) {
            const RevEdge& edge = graph.edges[static_cast<size_t>(e)];
            if (edge.to != src) continue;
            int count = tables.atoms[static_cast<size_t>(src)].union_count(edge.atoms);
            if (count < best_count) {
                best_count = count;
                best_self = e;
            }
        }
        if (best_self != -1) {
            AtomBits merged = tables.atoms[static_cast<size_t>(src)];
            for (int a : graph.edges[static_cast<size_t>(best_self)].atoms) merged.insert(a);
            tables.size[static_cast<size_t>(src)] = merged.count();
            tables.atoms[static_cast<size_t>(src)] = std::move(merged);
            tables.parent[static_cast<size_t>(src)] = src;
        } else {
            tables.size[static_cast<size_t>(src)] = kInfCost;
            tables.atoms[static_cast<size_t>(src)].clear();
        }
    }

    int completed = 0;
    if (trace) trace(completed, tables);
    while (!heap.empty()) {
        auto [size, u] = heap.top();
        heap.pop();
        if (is_source[static_cast<size_t>(u)] || tables.visited[static_cast<size_t>(u)]) continue;
        if (size != tables.size[static_cast<size_t>(u)]) continue;  // stale entry
        tables.visited[static_cast<size_t>(u)] = 1;
        tables.visit_order.push_back(u);
        for (int e : graph.out[static_cast<size_t>(u)]) push_if_improved(e);
        ++completed;
        if (trace) trace(completed, tables);
    }
    return tables;
}

namespace {

// Walks the parent table from `target` back to a node with no parent
// (a source) and returns the node path in forward order.
std::vector<int> parent_chain(const SearchTables& tables, int target) {
    std::vector<int> path{target};
    int v = target;
    while (tables.parent[static_cast<size_t>(v)] != -1) {
        v = tables.parent[static_cast<size_t>(v)];
        path.push_back(v);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

// Walks the lasso parent table from `final_node` around the cycle back to
// itself; parents of intermediate nodes form a tree rooted at the final.
std::vector<int> cycle_chain(const SearchTables& tables, int final_node) {
    std::vector<int> path{final_node};
    int v = tables.parent[static_cast<size_t>(final_node)];
    size_t guard = tables.parent.size() + 2;
    while (v != final_node) {
        if (v < 0 || path.size() > guard)
            throw std::logic_error("cycle reconstruction did not terminate");
        path.push_back(v);
        v = tables.parent[static_cast<size_t>(v)];
    }
    path.push_back(final_node);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<int> strip_dummies(const RevisionGraph& graph, const std::vector<int>& path) {
    std::vector<int> real;
    for (int v : path)
        if (!graph.nodes[static_cast<size_t>(v)].dummy) real.push_back(v);
    return real;
}

// Checks that consecutive real nodes of `path` are connected by an edge
// (or a two-hop dummy expansion) whose atoms are all in `rev_bits`.
bool replay_on_graph(const RevisionGraph& graph, const std::vector<char>& rev_bits,
                     const std::vector<int>& real_path) {
    auto enabled_hop = [&](int from, int to) {
        for (int e : graph.out[static_cast<size_t>(from)]) {
            const RevEdge& edge = graph.edges[static_cast<size_t>(e)];
            bool all_removed = true;
            for (int a : edge.atoms)
                if (!rev_bits[static_cast<size_t>(a)]) {
                    all_removed = false;
                    break;
                }
            if (!all_removed) continue;
            if (edge.to == to) return true;
            const RevNode& mid = graph.nodes[static_cast<size_t>(edge.to)];
            if (mid.dummy && mid.base_to == to) return true;
        }
        return false;
    };
    for (size_t i = 0; i + 1 < real_path.size(); ++i)
        if (!enabled_hop(real_path[i], real_path[i + 1])) return false;
    return true;
}

}  // namespace

RevisionOutcome aamrp(const RevisionGraph& graph) {
    for (int s : graph.sources)
        if (std::binary_search(graph.finals.begin(), graph.finals.end(), s))
            throw input_error("aamrp: a source node is also a final node");

    SearchTables prefix = SearchTables::make(graph);
    for (int s : graph.sources) prefix.seed(s, AtomBits(graph.universe_size()));
    prefix = find_min_path(graph, graph.sources, std::move(prefix), false);

    RevisionOutcome outcome;
    bool acceptable = false;
    // The working minimum starts at the whole universe; equal-size
    // candidates replace it, so the last tied final wins.
    int best_size = graph.universe_size();
    AtomBits best_atoms;
    int best_final = -1;
    std::vector<int> best_prefix_path, best_cycle_path;

    for (int f : graph.finals) {
        if (!prefix.visited[static_cast<size_t>(f)]) continue;
        ++outcome.diag.reachable_finals;

        SearchTables lasso = SearchTables::make(graph);
        lasso.seed(f, prefix.atoms[static_cast<size_t>(f)]);
        std::vector<int> lasso_sources{f};
        lasso = find_min_path(graph, lasso_sources, std::move(lasso), true);

        bool lasso_found = lasso.size[static_cast<size_t>(f)] < kInfCost &&
                           lasso.parent[static_cast<size_t>(f)] != -1;
        if (!lasso_found) continue;

        int candidate_size = lasso.size[static_cast<size_t>(f)];
        outcome.diag.candidates.emplace_back(f, candidate_size);
        if (candidate_size <= best_size) {
            best_size = candidate_size;
            best_atoms = lasso.atoms[static_cast<size_t>(f)];
            best_final = f;
            best_prefix_path = parent_chain(prefix, f);
            best_cycle_path = cycle_chain(lasso, f);
        }
        acceptable = true;
    }

    if (!acceptable) {
        outcome.status = RevisionOutcome::Status::Infeasible;
        return outcome;
    }

    for (int id : best_atoms.to_ids())
        outcome.revision.insert(graph.atom_table[static_cast<size_t>(id)]);
    outcome.cost = outcome.revision.size();
    outcome.status = outcome.cost == 0 ? RevisionOutcome::Status::AlreadySatisfiable
                                       : RevisionOutcome::Status::Revised;
    outcome.witness_prefix = strip_dummies(graph, best_prefix_path);
    outcome.witness_cycle = strip_dummies(graph, best_cycle_path);
    outcome.diag.cost_equals_universe = outcome.cost == graph.universe_size();

    // Re-validate the reconstructed witness before handing it out.
    std::vector<char> rev_bits(static_cast<size_t>(graph.universe_size()), 0);
    for (int id : best_atoms.to_ids()) rev_bits[static_cast<size_t>(id)] = 1;
    if (!replay_on_graph(graph, rev_bits, outcome.witness_prefix) ||
        !replay_on_graph(graph, rev_bits, outcome.witness_cycle) ||
        outcome.witness_cycle.front() != best_final || outcome.witness_cycle.back() != best_final ||
        outcome.witness_prefix.back() != best_final)
        throw std::logic_error("aamrp: reconstructed witness does not replay");
    return outcome;
}

bool graph_has_accepting_lasso(const RevisionGraph& graph, const std::vector<char>* enabled_atoms) {
    auto edge_enabled = [&](const RevEdge& e) {
        if (!enabled_atoms) return true;
        for (int a : e.atoms)
            if (!(*enabled_atoms)[static_cast<size_t>(a)]) return false;
        return true;
    };
    const size_t n = static_cast<size_t>(graph.num_nodes());
    std::vector<char> reached(n, 0);
    std::deque<int> queue;
    for (int s : graph.sources) {
        reached[static_cast<size_t>(s)] = 1;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int e : graph.out[static_cast<size_t>(v)]) {
            const RevEdge& edge = graph.edges[static_cast<size_t>(e)];
            if (!edge_enabled(edge) || reached[static_cast<size_t>(edge.to)]) continue;
            reached[static_cast<size_t>(edge.to)] = 1;
            queue.push_back(edge.to);
        }
    }
    for (int f : graph.finals) {
        if (!reached[static_cast<size_t>(f)]) continue;
        // Cycle check: BFS from f's enabled successors back to f.
        std::vector<char> seen(n, 0);
        std::deque<int> q2;
        for (int e : graph.out[static_cast<size_t>(f)]) {
            const RevEdge& edge = graph.edges[static_cast<size_t>(e)];
            if (!edge_enabled(edge)) continue;
            if (edge.to == f) return true;
            if (!seen[static_cast<size_t>(edge.to)]) {
                seen[static_cast<size_t>(edge.to)] = 1;
                q2.push_back(edge.to);
            }
        }
        while (!q2.empty()) {
            int v = q2.front();
            q2.pop_front();
            for (int e : graph.out[static_cast<size_t>(v)]) {
                const RevEdge& edge = graph.edges[static_cast<size_t>(e)];
                if (!edge_enabled(edge)) continue;
                if (edge.to == f) return true;
                if (!seen[static_cast<size_t>(edge.to)]) {
                    seen[static_cast<size_t>(edge.to)] = 1;
                    q2.push_back(edge.to);
                }
            }
        }
    }
    return false;
}

bool verify_outcome(const Fsm& fsm, const SpecAutomaton& spec, const RevisionOutcome& outcome) {
    switch (outcome.status) {
        case RevisionOutcome::Status::AlreadySatisfiable:
            return is_satisfiable(build_product(fsm, spec)).has_value();
        case RevisionOutcome::Status::Revised: {
            SpecAutomaton revised = apply_revision(spec, outcome.revision);
            return is_satisfiable(build_product(fsm, revised)).has_value();
        }
        case RevisionOutcome::Status::Infeasible:
            return !is_satisfiable(build_product(fsm, fully_relaxed(spec))).has_value();
    }
    return false;
}

bool verify_outcome_on_graph(const RevisionGraph& graph, const RevisionOutcome& outcome) {
    switch (outcome.status) {
        case RevisionOutcome::Status::AlreadySatisfiable: {
            std::vector<char> none(static_cast<size_t>(graph.universe_size()), 0);
            return graph_has_accepting_lasso(graph, &none);
        }
        case RevisionOutcome::Status::Revised: {
            std::vector<char> bits(static_cast<size_t>(graph.universe_size()), 0);
            for (const RemovalAtom& atom : outcome.revision.atoms) {
                int id = graph.atom_id(atom);
                if (id < 0) return false;
                bits[static_cast<size_t>(id)] = 1;
            }
            return graph_has_accepting_lasso(graph, &bits);
        }
        case RevisionOutcome::Status::Infeasible:
            return !graph_has_accepting_lasso(graph, nullptr);
    }
    return false;
}

}  // namespace specrev
