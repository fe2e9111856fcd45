#include "specrev/oracle.hpp"

#include <algorithm>
#include <deque>

#include "specrev/aamrp.hpp"

namespace specrev {

namespace {

bool subset_enables_lasso(const RevisionGraph& graph, const std::vector<char>& selected) {
    return graph_has_accepting_lasso(graph, &selected);
}

// Advances `combo` (sorted ascending indices into 0..n-1) to the next
// combination in lexicographic order; false when exhausted.
bool next_combination(std::vector<int>& combo, int n) {
    const int k = static_cast<int>(combo.size());
    for (int i = k - 1; i >= 0; --i) {
        if (combo[static_cast<size_t>(i)] < n - k + i) {
            ++combo[static_cast<size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                combo[static_cast<size_t>(j)] = combo[static_cast<size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

OracleResult brute_force_mrp(const RevisionGraph& graph, const OracleOptions& options) {
    OracleResult result;
    const int universe = graph.universe_size();
    const auto deadline = std::chrono::steady_clock::now() + options.budget;

    // Atoms that occur on edges leaving the zero-removal reachable
    // region; a subset touching none of them cannot change anything.
    std::vector<char> frontier_atoms;
    if (options.frontier_pruning) {
        std::vector<char> none(static_cast<size_t>(universe), 0);
        std::vector<char> reached(static_cast<size_t>(graph.num_nodes()), 0);
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
                if (!edge.atoms.empty()) continue;
                if (!reached[static_cast<size_t>(edge.to)]) {
                    reached[static_cast<size_t>(edge.to)] = 1;
                    queue.push_back(edge.to);
                }
            }
        }
        frontier_atoms.assign(static_cast<size_t>(universe), 0);
        for (const RevEdge& edge : graph.edges)
            if (reached[static_cast<size_t>(edge.from)])
                for (int a : edge.atoms) frontier_atoms[static_cast<size_t>(a)] = 1;
    }

    std::vector<char> selected(static_cast<size_t>(universe), 0);
    for (int k = 0; k <= universe; ++k) {
        std::vector<int> combo(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) combo[static_cast<size_t>(i)] = i;
        bool more = true;
        while (more) {
            if ((result.subsets_tested & 1023u) == 0 &&
                std::chrono::steady_clock::now() > deadline) {
                result.status = OracleResult::Status::TimedOut;
                return result;
            }
            bool skip = false;
            if (options.frontier_pruning && k > 0) {
                skip = true;
                for (int id : combo)
                    if (frontier_atoms[static_cast<size_t>(id)]) {
                        skip = false;
                        break;
                    }
            }
            if (!skip) {
                ++result.subsets_tested;
                std::fill(selected.begin(), selected.end(), 0);
                for (int id : combo) selected[static_cast<size_t>(id)] = 1;
                if (subset_enables_lasso(graph, selected)) {
                    result.status = OracleResult::Status::Optimal;
                    result.cost = k;
                    for (int id : combo)
                        result.revision.insert(graph.atom_table[static_cast<size_t>(id)]);
                    return result;
                }
            }
            more = k > 0 && next_combination(combo, universe);
        }
    }
    result.status = OracleResult::Status::Infeasible;
    return result;
}

namespace {

struct PathEnumerator {
    const RevisionGraph& graph;
    std::vector<char> on_path;
    AtomBits current;

    explicit PathEnumerator(const RevisionGraph& g)
        : graph(g),
          on_path(static_cast<size_t>(g.num_nodes()), 0),
          current(g.universe_size()) {}

    // Enumerates simple paths from v, recording the running label union
    // at every final node encountered.
    void dfs_prefix(int v, std::vector<std::vector<AtomBits>>& unions_per_final) {
        if (std::binary_search(graph.finals.begin(), graph.finals.end(), v))
            unions_per_final[static_cast<size_t>(v)].push_back(current);
        on_path[static_cast<size_t>(v)] = 1;
        for (int e : graph.out[static_cast<size_t>(v)]) {
            const RevEdge& edge = graph.edges[static_cast<size_t>(e)];
            if (on_path[static_cast<size_t>(edge.to)]) continue;
            AtomBits saved = current;
            for (int a : edge.atoms) current.insert(a);
            dfs_prefix(edge.to, unions_per_final);
            current = std::move(saved);
        }
        on_path[static_cast<size_t>(v)] = 0;
    }

    // Enumerates simple cycles through `final_node` (repeated nodes
    // allowed only at the endpoints), recording label unions.
    void dfs_cycle(int v, int final_node, std::vector<AtomBits>& unions) {
        for (int e : graph.out[static_cast<size_t>(v)]) {
            const RevEdge& edge = graph.edges[static_cast<size_t>(e)];
            if (edge.to == final_node) {
                AtomBits closed = current;
                for (int a : edge.atoms) closed.insert(a);
                unions.push_back(std::move(closed));
                continue;
            }
            if (on_path[static_cast<size_t>(edge.to)]) continue;
            AtomBits saved = current;
            for (int a : edge.atoms) current.insert(a);
            on_path[static_cast<size_t>(edge.to)] = 1;
            dfs_cycle(edge.to, final_node, unions);
            on_path[static_cast<size_t>(edge.to)] = 0;
            current = std::move(saved);
        }
    }
};

}  // namespace

OracleResult path_enumeration_oracle(const RevisionGraph& graph, int max_nodes) {
    if (graph.num_nodes() > max_nodes)
        throw input_error("path_enumeration_oracle: graph exceeds the node limit (" +
                          std::to_string(graph.num_nodes()) + " > " + std::to_string(max_nodes) +
                          ")");
    OracleResult result;

    std::vector<std::vector<AtomBits>> prefix_unions(static_cast<size_t>(graph.num_nodes()));
    {
        PathEnumerator en(graph);
        for (int s : graph.sources) en.dfs_prefix(s, prefix_unions);
    }

    bool found = false;
    int best = kInfCost;
    AtomBits best_set;
    for (int f : graph.finals) {
        auto& prefixes = prefix_unions[static_cast<size_t>(f)];
        if (prefixes.empty()) continue;
        std::vector<AtomBits> cycles;
        {
            PathEnumerator en(graph);
            en.on_path[static_cast<size_t>(f)] = 1;
            en.dfs_cycle(f, f, cycles);
        }
        for (const AtomBits& p : prefixes) {
            for (const AtomBits& c : cycles) {
                AtomBits merged = p;
                for (int id : c.to_ids()) merged.insert(id);
                if (merged.count() < best) {
                    best = merged.count();
                    best_set = merged;
                    found = true;
                }
            }
        }
    }
    if (!found) {
        result.status = OracleResult::Status::Infeasible;
        return result;
    }
    result.status = OracleResult::Status::Optimal;
    result.cost = best;
    for (int id : best_set.to_ids()) result.revision.insert(graph.atom_table[static_cast<size_t>(id)]);
    return result;
}

}  // namespace specrev
