#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <iosfwd>

#include "specrev/automata.hpp"
#include "specrev/revgraph.hpp"

namespace specrev {

// Self-contained splitmix64 generator, so instances are reproducible
// across platforms and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) { next(); }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    int in_range(int lo, int hi) { return lo + below(hi - lo + 1); }
    bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

private:
    std::uint64_t state_;
};

struct RandomDagParams {
    int nodes_per_dag = 3;
    double edge_factor = 2.5;      // edges = about edge_factor * nodes
    double final_fraction = 0.2;   // fraction of spec nodes marked final
    int ap_count = 0;              // 0: default of 4 * nodes_per_dag
    std::uint64_t seed = 0;

    void validate() const;
};

// One random instance: an environment DAG with labeled states and a
// specification DAG with guarded transitions. Both have self-loops on
// their leaves so a lasso always exists once every guard is relaxed.
// Pure function of the parameters.
std::pair<Fsm, SpecAutomaton> gen_random_instance(const RandomDagParams& params);

// The staged-diamond graph family on which the greedy search is forced
// into a solution of size m+1 while three removals suffice.
RevisionGraph gen_unbounded_family(int m);

// Planar staged-diamond DAGs whose branches re-merge after every stage,
// with labels drawn from a shared pool; single final sink with a free
// self-loop.
RevisionGraph gen_series_merge_dag(int stages, int label_width, std::uint64_t seed);

struct CnfFormula {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;  // signed 1-based variable indexes
};

// DIMACS reader: "p cnf <vars> <clauses>" then 0-terminated clauses.
// Clauses must have exactly three literals.
CnfFormula parse_dimacs(std::istream& in);

// Exhaustive satisfiability check, up to 20 variables.
bool brute_force_sat(const CnfFormula& cnf);

struct MceEdge {
    int from = -1, to = -1;
    int weight = 0;
};

struct MceClass {
    std::string name;
    std::vector<MceEdge> edges;
    int weight() const;
};

// Minimal Connecting Edge instance: add whole classes of candidate
// edges, at minimal total weight, so the sink becomes reachable.
struct MceInstance {
    std::vector<std::string> node_names;
    int source = -1, sink = -1;
    std::vector<std::pair<int, int>> base_edges;
    std::vector<MceClass> classes;
    int weight_limit = 0;

    int node_id(const std::string& name) const;
};

// 3-CNF-SAT to MCE: one 6-node gadget per variable chained in index
// order, one 8-node gadget per clause, candidate-edge classes P_i / N_i
// for the true/false assignment of each variable. The formula is
// satisfiable iff the instance is solvable within weight n.
MceInstance reduce_3sat_to_mce(const CnfFormula& cnf);

struct MceSolution {
    bool feasible = false;
    int weight = 0;
    std::vector<int> chosen_classes;
};

// Exact solver enumerating class selections (all-or-nothing rule).
// Throws input_error when there are more than `max_classes` classes.
MceSolution solve_mce_exact(const MceInstance& inst, int max_classes = 20);

// The MCE instance as a search graph: base edges free, each candidate
// edge labeled with one atom per class, free self-loop on the sink.
RevisionGraph mce_to_revision_graph(const MceInstance& inst);

struct ExperimentRow {
    int size = 0;  // product-node class, nodes_per_dag squared
    std::uint64_t seed = 0;
    int nodes = 0, edges = 0, atoms = 0;
    int aamrp_cost = -1;
    double aamrp_ms = 0;
    int oracle_cost = -1;  // -1: oracle did not complete
    double oracle_ms = 0;
    std::string oracle_status;  // optimal | timeout | infeasible
    double ratio = -1;          // aamrp_cost / oracle_cost where defined
    bool verified = false;
};

struct ExperimentConfig {
    std::vector<int> dag_sizes{3};
    int seeds_per_size = 20;
    std::chrono::milliseconds oracle_budget{5000};
    int threads = 1;
    std::uint64_t base_seed = 1;
    RandomDagParams shape;  // nodes_per_dag and seed are overridden per cell
};

// Runs aamrp and the brute-force oracle over the random corpus, one cell
// per (size, seed), fanned out over a worker pool. Rows come back in
// (size, seed) order regardless of completion order.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

void write_csv(std::ostream& os, const std::vector<ExperimentRow>& rows);

// Per-size min/avg/max of times, solution sizes and ratios.
void write_summary(std::ostream& os, const std::vector<ExperimentRow>& rows);

}  // namespace specrev
