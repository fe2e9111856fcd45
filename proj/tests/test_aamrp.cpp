#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "specrev/aamrp.hpp"
#include "specrev/bench.hpp"
#include "specrev/oracle.hpp"
#include "test_util.hpp"

using namespace specrev;

namespace {

std::vector<std::string> atoms_of(const RevisionGraph& g, const AtomBits& bits) {
    std::vector<std::string> names;
    for (int id : bits.to_ids())
        names.push_back(
            g.prop_names[static_cast<size_t>(g.atom_table[static_cast<size_t>(id)].literal.ap)]);
    return names;
}

std::vector<std::string> node_names(const RevisionGraph& g, const std::vector<int>& nodes) {
    std::vector<std::string> names;
    for (int v : nodes) names.push_back(g.nodes[static_cast<size_t>(v)].name);
    return names;
}

std::vector<std::string> revision_names(const RevisionGraph& g, const RevisionSet& rev) {
    std::vector<std::string> names;
    for (const RemovalAtom& atom : rev.atoms)
        names.push_back(g.prop_names[static_cast<size_t>(atom.literal.ap)]);
    return names;
}

}  // namespace

TEST_CASE("relax_edge keeps incumbents on ties and merges label atoms") {
    RevisionGraph g = test_util::load_fixture_graph("greedy_gap.json");
    // Atom ids: p1=0, p2=1, p3=2, p4=3.
    SearchTables t = SearchTables::make(g);

    SUBCASE("union of a new label extends an unreached target") {
        AtomBits u(g.universe_size());
        u.insert(0);  // {p1}
        t.seed(0, u);
        int edge = g.find_edge(0, 2);  // v1 -> v3, label {p1,p3}
        REQUIRE(edge >= 0);
        CHECK(relax_edge(g, edge, t));
        CHECK(t.size[2] == 2);
        CHECK(atoms_of(g, t.atoms[2]) == std::vector<std::string>{"p1", "p3"});
        CHECK(t.parent[2] == 0);
    }

    SUBCASE("equal size never displaces") {
        AtomBits zero(g.universe_size());
        t.seed(0, zero);
        t.seed(1, zero);  // both at (empty,0)
        int edge = g.find_edge(0, 1);
        REQUIRE(edge >= 0);
        // |{} u {p1}| = 1 is not < 0... target already at 0: no update.
        CHECK(!relax_edge(g, edge, t));
        CHECK(t.size[1] == 0);
    }

    SUBCASE("smaller union via shared atoms replaces a larger incumbent") {
        AtomBits u(g.universe_size());
        u.insert(0);
        t.seed(0, u);  // ({p1},1)
        AtomBits v(g.universe_size());
        v.insert(0);
        v.insert(2);
        t.seed(1, v);  // ({p1,p3},2)
        int edge = g.find_edge(0, 1);  // label {p1}
        CHECK(relax_edge(g, edge, t));  // |{p1} u {p1}| = 1 < 2
        CHECK(t.size[1] == 1);
        CHECK(atoms_of(g, t.atoms[1]) == std::vector<std::string>{"p1"});
    }

    SUBCASE("relaxing from an unreached node is a no-op") {
        int edge = g.find_edge(0, 1);
        CHECK(!relax_edge(g, edge, t));
        CHECK(t.size[1] == kInfCost);
    }
}

TEST_CASE("prefix sweep reproduces the published table snapshots") {
    RevisionGraph g = test_util::load_fixture_graph("greedy_gap.json");
    // Node ids: v1=0 .. v6=5; atom ids: p1=0, p2=1, p3=2, p4=3.
    SearchTables seeded = SearchTables::make(g);
    seeded.seed(0, AtomBits(g.universe_size()));

    std::map<int, std::vector<int>> size_snapshots;
    std::map<int, std::vector<std::vector<std::string>>> atom_snapshots;
    auto trace = [&](int completed, const SearchTables& t) {
        size_snapshots[completed] = t.size;
        std::vector<std::vector<std::string>> atoms;
        for (int v = 0; v < g.num_nodes(); ++v) atoms.push_back(atoms_of(g, t.atoms[v]));
        atom_snapshots[completed] = std::move(atoms);
    };
    SearchTables result = find_min_path(g, {0}, std::move(seeded), false, trace);

    // Before the first visit: the source's out-edges have been relaxed.
    const std::vector<int> inf = {0, 1, 2, kInfCost, kInfCost, kInfCost};
    REQUIRE(size_snapshots.count(0));
    CHECK(size_snapshots[0] == inf);
    CHECK(atom_snapshots[0][1] == std::vector<std::string>{"p1"});
    CHECK(atom_snapshots[0][2] == std::vector<std::string>{"p1", "p3"});

    // Before the second visit: v2 (the unique size-1 node) was expanded
    // and proposed {p1,p2} for v4.
    REQUIRE(size_snapshots.count(1));
    CHECK(size_snapshots[1] == std::vector<int>{0, 1, 2, 2, kInfCost, kInfCost});
    CHECK(atom_snapshots[1][3] == std::vector<std::string>{"p1", "p2"});

    // At exhaustion: v5 holds three atoms, v6 all four, via v1,v2,v4,v5,v6.
    CHECK(result.size == std::vector<int>{0, 1, 2, 2, 3, 4});
    CHECK(atoms_of(g, result.atoms[4]) == std::vector<std::string>{"p1", "p2", "p4"});
    CHECK(atoms_of(g, result.atoms[5]) == std::vector<std::string>{"p1", "p2", "p3", "p4"});
    CHECK(result.parent[5] == 4);
    CHECK(result.parent[4] == 3);
    CHECK(result.parent[3] == 1);
    CHECK(result.parent[1] == 0);

    // Every visited node's parent chain reproduces its atom set.
    for (int v = 0; v < g.num_nodes(); ++v) {
        if (result.size[static_cast<size_t>(v)] == kInfCost) continue;
        AtomBits rebuilt(g.universe_size());
        int cur = v;
        while (result.parent[static_cast<size_t>(cur)] != -1) {
            int parent = result.parent[static_cast<size_t>(cur)];
            int e = g.find_edge(parent, cur);
            REQUIRE(e >= 0);
            for (int a : g.edges[static_cast<size_t>(e)].atoms) rebuilt.insert(a);
            cur = parent;
        }
        CHECK(rebuilt.to_ids() == result.atoms[static_cast<size_t>(v)].to_ids());
    }
}

TEST_CASE("lasso sweep keeps a self-loop source finite") {
    // Single accepting node with an unlabeled self-loop.
    RevisionGraph g = graph_from_json(nlohmann::json::parse(R"({"graph": {
        "nodes": ["v"], "sources": ["v"], "finals": ["v"],
        "edges": [{"from": "v", "to": "v", "atoms": []}]}})"));
    SearchTables seeded = SearchTables::make(g);
    seeded.seed(0, AtomBits(g.universe_size()));
    SearchTables result = find_min_path(g, {0}, std::move(seeded), true);
    CHECK(result.size[0] == 0);
    CHECK(result.parent[0] == 0);
}

TEST_CASE("lasso sweep resets a loop-free source to infinity") {
    RevisionGraph g = graph_from_json(nlohmann::json::parse(R"({"graph": {
        "nodes": ["v", "w"], "sources": ["v"], "finals": ["w"],
        "edges": [{"from": "v", "to": "w", "atoms": []}]}})"));
    SearchTables seeded = SearchTables::make(g);
    seeded.seed(0, AtomBits(g.universe_size()));
    SearchTables result = find_min_path(g, {0}, std::move(seeded), true);
    CHECK(result.size[0] == kInfCost);  // no way back
    CHECK(result.size[1] == 0);
}

TEST_CASE("heuristic returns the non-optimal four-atom revision") {
    RevisionGraph g = test_util::load_fixture_graph("greedy_gap.json");
    RevisionOutcome outcome = aamrp(g);
    REQUIRE(outcome.status == RevisionOutcome::Status::Revised);
    CHECK(outcome.cost == 4);
    CHECK(revision_names(g, outcome.revision) ==
          std::vector<std::string>{"p1", "p2", "p3", "p4"});
    CHECK(node_names(g, outcome.witness_prefix) ==
          std::vector<std::string>{"v1", "v2", "v4", "v5", "v6"});
    CHECK(node_names(g, outcome.witness_cycle) == std::vector<std::string>{"v6", "v5", "v6"});
    CHECK(outcome.diag.cost_equals_universe);
    CHECK(verify_outcome_on_graph(g, outcome));

    // The exact optimum is one atom cheaper.
    OracleResult oracle = brute_force_mrp(g);
    REQUIRE(oracle.status == OracleResult::Status::Optimal);
    CHECK(oracle.cost == 3);
    CHECK(revision_names(g, oracle.revision) == std::vector<std::string>{"p1", "p3", "p4"});
}

TEST_CASE("staged-diamond family: heuristic pays m+1, optimum stays 3") {
    for (int m : {3, 4, 5, 6}) {
        RevisionGraph g = gen_unbounded_family(m);
        RevisionOutcome outcome = aamrp(g);
        REQUIRE(outcome.status == RevisionOutcome::Status::Revised);
        CHECK(outcome.cost == m + 1);
        CHECK(verify_outcome_on_graph(g, outcome));

        OracleResult oracle = brute_force_mrp(g);
        REQUIRE(oracle.status == OracleResult::Status::Optimal);
        CHECK(oracle.cost == 3);
        CHECK(revision_names(g, oracle.revision) ==
              std::vector<std::string>{"p0", "pc", "ps"});
    }
    // With a single stage both searches agree.
    RevisionGraph g1 = gen_unbounded_family(1);
    CHECK(aamrp(g1).cost == brute_force_mrp(g1).cost);
}

TEST_CASE("two-agent fixture runs to a zero-cost outcome") {
    Instance two_agent = test_util::load_fixture_instance("two_agent.json");
    RevisionGraph g =
        build_revision_graph(two_agent.fsm, two_agent.spec, two_agent.props.names());
    RevisionOutcome outcome = aamrp(g);
    // The product is non-empty (see the note in test_automata.cpp), so the
    // heuristic finds an unlabeled accepting lasso rather than the
    // published one-atom revision.
    CHECK(outcome.status == RevisionOutcome::Status::AlreadySatisfiable);
    CHECK(outcome.cost == 0);
    CHECK(outcome.diag.reachable_finals == 9);
    CHECK(verify_outcome(two_agent.fsm, two_agent.spec, outcome));
}

TEST_CASE("a source that is also final is rejected") {
    RevisionGraph g = graph_from_json(nlohmann::json::parse(R"({"graph": {
        "nodes": ["v"], "sources": ["v"], "finals": ["v"],
        "edges": [{"from": "v", "to": "v", "atoms": []}]}})"));
    CHECK_THROWS_AS(aamrp(g), input_error);
}

TEST_CASE("infeasible graphs are reported as such") {
    // The final node has no cycle back to itself even with every atom
    // removed.
    RevisionGraph g = graph_from_json(nlohmann::json::parse(R"({"graph": {
        "nodes": ["a", "b"], "sources": ["a"], "finals": ["b"],
        "edges": [{"from": "a", "to": "b",
                   "atoms": [{"edge": ["s","s"], "clause": 0, "literal": "x"}]}]}})"));
    RevisionOutcome outcome = aamrp(g);
    CHECK(outcome.status == RevisionOutcome::Status::Infeasible);
    CHECK(verify_outcome_on_graph(g, outcome));
}

TEST_CASE("soundness and never-better-than-optimal on a random corpus") {
    int revised = 0, already = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        RandomDagParams params;
        params.nodes_per_dag = 3;
        params.seed = seed * 6007;
        auto [fsm, spec] = gen_random_instance(params);
        RevisionGraph g = build_revision_graph(fsm, spec);

        RevisionOutcome outcome = aamrp(g);
        CHECK(verify_outcome(fsm, spec, outcome));
        if (outcome.status == RevisionOutcome::Status::Revised) ++revised;
        if (outcome.status == RevisionOutcome::Status::AlreadySatisfiable) ++already;

        OracleOptions opts;
        opts.budget = std::chrono::milliseconds(10000);
        OracleResult oracle = brute_force_mrp(g, opts);
        if (oracle.status == OracleResult::Status::Optimal) {
            CHECK(outcome.status != RevisionOutcome::Status::Infeasible);
            CHECK(outcome.cost >= oracle.cost);
        } else if (oracle.status == OracleResult::Status::Infeasible) {
            CHECK(outcome.status == RevisionOutcome::Status::Infeasible);
        }
    }
    CHECK(revised > 0);  // the corpus must exercise real revisions
}

TEST_CASE("witnesses replay as product lassos on the revised product") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        RandomDagParams params;
        params.nodes_per_dag = 4;
        params.seed = seed * 7433;
        auto [fsm, spec] = gen_random_instance(params);
        RevisionGraph g = build_revision_graph(fsm, spec);
        RevisionOutcome outcome = aamrp(g);
        if (outcome.status == RevisionOutcome::Status::Infeasible) continue;

        // Real node ids equal flat product state ids, so the witness maps
        // one to one onto a lasso of the revised product.
        SpecAutomaton revised = apply_revision(spec, outcome.revision);
        Product p = build_product(fsm, revised);
        Lasso lasso;
        lasso.prefix = outcome.witness_prefix;
        lasso.cycle = outcome.witness_cycle;
        CHECK(lasso_is_valid(p, lasso));
    }
}

TEST_CASE("outcomes are deterministic") {
    RevisionGraph g = test_util::load_fixture_graph("greedy_gap.json");
    RevisionOutcome a = aamrp(g);
    RevisionOutcome b = aamrp(g);
    CHECK(a.cost == b.cost);
    CHECK(a.revision == b.revision);
    CHECK(a.witness_prefix == b.witness_prefix);
    CHECK(a.witness_cycle == b.witness_cycle);
    CHECK(a.diag.candidates == b.diag.candidates);
}
