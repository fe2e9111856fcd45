#pragma once

#include <chrono>
#include <optional>

#include "specrev/revgraph.hpp"

namespace specrev {

struct OracleResult {
    enum class Status { Optimal, Infeasible, TimedOut };
    Status status = Status::Infeasible;
    RevisionSet revision;  // valid when Optimal
    int cost = 0;
    std::optional<RevisionSet> best_so_far;  // TimedOut only, currently never populated
    std::uint64_t subsets_tested = 0;
};

struct OracleOptions {
    std::chrono::milliseconds budget{60000};
    // Skip subsets that cannot change the zero-removal reachable region.
    // Off by default so the search stays a plain enumeration.
    bool frontier_pruning = false;
};

// Exhaustive minimal-revision search: enumerates atom subsets by size and
// lexicographic rank, enabling an edge iff its label is contained in the
// subset, and tests prefix reachability plus a cycle through a final
// node. The first hit is a provably minimal revision.
OracleResult brute_force_mrp(const RevisionGraph& graph, const OracleOptions& options = {});

// Second, independent oracle: enumerates every simple prefix path times
// every simple cycle through a final node and minimizes the union
// cardinality. Throws input_error when the graph has more than
// `max_nodes` nodes.
OracleResult path_enumeration_oracle(const RevisionGraph& graph, int max_nodes = 14);

}  // namespace specrev
