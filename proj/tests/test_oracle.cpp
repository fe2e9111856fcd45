#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specrev/aamrp.hpp"
#include "specrev/bench.hpp"
#include "specrev/oracle.hpp"
#include "test_util.hpp"

using namespace specrev;

namespace {

std::vector<char> to_bits(const RevisionGraph& g, const RevisionSet& rev) {
    std::vector<char> bits(static_cast<size_t>(g.universe_size()), 0);
    for (const RemovalAtom& atom : rev.atoms) bits[static_cast<size_t>(g.atom_id(atom))] = 1;
    return bits;
}

}  // namespace

TEST_CASE("brute force finds the unique three-atom optimum") {
    RevisionGraph g = test_util::load_fixture_graph("greedy_gap.json");
    OracleResult result = brute_force_mrp(g);
    REQUIRE(result.status == OracleResult::Status::Optimal);
    CHECK(result.cost == 3);
    std::vector<std::string> names;
    for (const RemovalAtom& atom : result.revision.atoms)
        names.push_back(g.prop_names[static_cast<size_t>(atom.literal.ap)]);
    CHECK(names == std::vector<std::string>{"p1", "p3", "p4"});

    // Minimality: every 2-subset fails.
    for (int a = 0; a < g.universe_size(); ++a) {
        for (int b = a + 1; b < g.universe_size(); ++b) {
            std::vector<char> bits(static_cast<size_t>(g.universe_size()), 0);
            bits[static_cast<size_t>(a)] = bits[static_cast<size_t>(b)] = 1;
            CHECK(!graph_has_accepting_lasso(g, &bits));
        }
    }
    // Subset monotonicity: supersets of the optimum stay feasible.
    std::vector<char> bits = to_bits(g, result.revision);
    for (int extra = 0; extra < g.universe_size(); ++extra) {
        std::vector<char> more = bits;
        more[static_cast<size_t>(extra)] = 1;
        CHECK(graph_has_accepting_lasso(g, &more));
    }
}

TEST_CASE("already satisfiable graphs cost zero") {
    RevisionGraph g = graph_from_json(nlohmann::json::parse(R"({"graph": {
        "nodes": ["a", "f"], "sources": ["a"], "finals": ["f"],
        "edges": [{"from": "a", "to": "f", "atoms": []},
                  {"from": "f", "to": "f", "atoms": []}]}})"));
    OracleResult brute = brute_force_mrp(g);
    CHECK(brute.status == OracleResult::Status::Optimal);
    CHECK(brute.cost == 0);
    OracleResult paths = path_enumeration_oracle(g);
    CHECK(paths.status == OracleResult::Status::Optimal);
    CHECK(paths.cost == 0);
}

TEST_CASE("path enumeration agrees with brute force") {
    RevisionGraph g6 = test_util::load_fixture_graph("greedy_gap.json");
    CHECK(path_enumeration_oracle(g6).cost == 3);

    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        RandomDagParams params;
        params.nodes_per_dag = 3;
        params.seed = seed * 11003;
        auto [fsm, spec] = gen_random_instance(params);
        RevisionGraph g = build_revision_graph(fsm, spec);
        if (g.num_nodes() > 40) continue;

        OracleOptions opts;
        opts.budget = std::chrono::milliseconds(20000);
        OracleResult brute = brute_force_mrp(g, opts);
        if (brute.status == OracleResult::Status::TimedOut) continue;
        OracleResult paths = path_enumeration_oracle(g, 60);
        CHECK(paths.status == brute.status);
        if (brute.status == OracleResult::Status::Optimal) CHECK(paths.cost == brute.cost);
    }
}

TEST_CASE("infeasible graphs exhaust the subset lattice") {
    RevisionGraph g = graph_from_json(nlohmann::json::parse(R"({"graph": {
        "nodes": ["a", "f"], "sources": ["a"], "finals": ["f"],
        "edges": [{"from": "a", "to": "f",
                   "atoms": [{"edge": ["s","s"], "clause": 0, "literal": "x"}]}]}})"));
    OracleResult brute = brute_force_mrp(g);
    CHECK(brute.status == OracleResult::Status::Infeasible);
    CHECK(brute.subsets_tested == 2);  // {} and {x}
    CHECK(path_enumeration_oracle(g).status == OracleResult::Status::Infeasible);
}

TEST_CASE("the budget turns into a timeout, not an error") {
    RevisionGraph g = gen_series_merge_dag(12, 3, 7);
    // Make the instance expensive: require many atoms by disabling the
    // cheap routes. A 12-stage graph has a large subset lattice.
    OracleOptions opts;
    opts.budget = std::chrono::milliseconds(0);
    OracleResult result = brute_force_mrp(g, opts);
    CHECK(result.status == OracleResult::Status::TimedOut);
}

TEST_CASE("frontier pruning does not change results") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomDagParams params;
        params.nodes_per_dag = 3;
        params.seed = seed * 51001;
        auto [fsm, spec] = gen_random_instance(params);
        RevisionGraph g = build_revision_graph(fsm, spec);
        OracleOptions plain, pruned;
        plain.budget = pruned.budget = std::chrono::milliseconds(20000);
        pruned.frontier_pruning = true;
        OracleResult a = brute_force_mrp(g, plain);
        OracleResult b = brute_force_mrp(g, pruned);
        if (a.status == OracleResult::Status::TimedOut ||
            b.status == OracleResult::Status::TimedOut)
            continue;
        CHECK(a.status == b.status);
        CHECK(a.cost == b.cost);
        CHECK(b.subsets_tested <= a.subsets_tested);
    }
}

TEST_CASE("size guard on the enumeration oracle") {
    RevisionGraph g = gen_unbounded_family(8);
    CHECK_THROWS_AS(path_enumeration_oracle(g, 10), input_error);
}
