#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "specrev/bench.hpp"
#include "specrev/io.hpp"
#include "specrev/revgraph.hpp"
#include "test_util.hpp"

using namespace specrev;

namespace {

Literal lit(PropId ap, bool negated = false) { return Literal{ap, negated}; }

// Two-state system q0 -> q1 with a configurable label on q1 and a single
// spec edge s1 -> s2 carrying `guard`; the smallest setting in which the
// labeling of disabled edges is visible.
std::pair<Fsm, SpecAutomaton> tiny_instance(std::vector<PropId> q1_label, Guard guard) {
    Fsm fsm;
    fsm.state_names = {"q0", "q1"};
    fsm.initial = {0};
    fsm.out = {{1}, {1}};  // self-loop on q1 keeps every state reachable and live
    std::sort(q1_label.begin(), q1_label.end());
    fsm.labels = {{}, std::move(q1_label)};

    SpecAutomaton spec;
    spec.state_names = {"s1", "s2"};
    spec.initial = 0;
    spec.finals = {1};
    spec.guards.emplace(std::make_pair(0, 1), std::move(guard));
    return {std::move(fsm), std::move(spec)};
}

std::vector<RemovalAtom> label_atoms(const RevisionGraph& g, const RevEdge& e) {
    std::vector<RemovalAtom> atoms;
    for (int id : e.atoms) atoms.push_back(g.atom_table[static_cast<size_t>(id)]);
    return atoms;
}

// All dummy first-hop edges out of `from`, in id order.
std::vector<const RevEdge*> dummy_hops(const RevisionGraph& g, int from) {
    std::vector<const RevEdge*> hops;
    for (int e : g.out[static_cast<size_t>(from)]) {
        const RevEdge& edge = g.edges[static_cast<size_t>(e)];
        if (g.nodes[static_cast<size_t>(edge.to)].dummy) hops.push_back(&edge);
    }
    return hops;
}

}  // namespace

TEST_CASE("disabled disjunctive guard expands to one dummy path per clause") {
    // Guard !p0 | p1, target label {p0}: clause 0 is violated on !p0,
    // clause 1 on p1.
    auto [fsm, spec] = tiny_instance({0}, Guard::dnf({Clause{{lit(0, true)}}, Clause{{lit(1)}}}));
    RevisionGraph g = build_revision_graph(fsm, spec);

    int from = 0 * 2 + 0;  // (q0,s1)
    auto hops = dummy_hops(g, from);
    REQUIRE(hops.size() == 2);
    CHECK(label_atoms(g, *hops[0]) ==
          std::vector<RemovalAtom>{RemovalAtom{{0, 1}, 0, lit(0, true)}});
    CHECK(label_atoms(g, *hops[1]) == std::vector<RemovalAtom>{RemovalAtom{{0, 1}, 1, lit(1)}});
    // Each dummy has exactly one outgoing empty-labeled edge to the target.
    for (const RevEdge* hop : hops) {
        const auto& out = g.out[static_cast<size_t>(hop->to)];
        REQUIRE(out.size() == 1);
        const RevEdge& closing = g.edges[static_cast<size_t>(out[0])];
        CHECK(closing.to == 1 * 2 + 1);
        CHECK(closing.atoms.empty());
    }
}

TEST_CASE("disabled conjunctive guard carries only the violated literals") {
    // Guard !p0 & p1, target label {p2}: only p1 is violated.
    auto [fsm, spec] = tiny_instance({2}, Guard::dnf({Clause{{lit(0, true), lit(1)}}}));
    RevisionGraph g = build_revision_graph(fsm, spec);
    auto hops = dummy_hops(g, 0);
    REQUIRE(hops.size() == 1);
    CHECK(label_atoms(g, *hops[0]) == std::vector<RemovalAtom>{RemovalAtom{{0, 1}, 0, lit(1)}});
}

TEST_CASE("satisfied guards produce enabled edges with empty labels") {
    // Guard !p0 | p1, target label {p1}: clause 1 holds.
    auto [fsm, spec] = tiny_instance({1}, Guard::dnf({Clause{{lit(0, true)}}, Clause{{lit(1)}}}));
    RevisionGraph g = build_revision_graph(fsm, spec);
    int e = g.find_edge(0, 1 * 2 + 1);
    REQUIRE(e >= 0);
    CHECK(g.edges[static_cast<size_t>(e)].atoms.empty());
    CHECK(!g.edges[static_cast<size_t>(e)].disabled_path);
    CHECK(g.universe_size() == 0);
}

namespace {

// System and spec from the four-proposition self-loop example: three
// system transitions against one conjunctive spec self-loop.
std::pair<Fsm, SpecAutomaton> selfloop_instance() {
    Fsm fsm;
    fsm.state_names = {"q0", "q1", "q2", "q3"};
    fsm.initial = {0};
    fsm.out = {{1}, {2, 3}, {2}, {3}};  // leaf self-loops keep states live
    fsm.labels = {{}, {1, 3}, {1, 2}, {1, 3}};

    SpecAutomaton spec;
    spec.state_names = {"s1"};
    spec.initial = 0;
    spec.finals = {0};
    spec.guards.emplace(std::make_pair(0, 0),
                        Guard::dnf({Clause{{lit(0), lit(1), lit(2), lit(3)}}}));
    return {std::move(fsm), std::move(spec)};
}

}  // namespace

TEST_CASE("self-loop guard example: labels and path costs") {
    auto [fsm, spec] = selfloop_instance();
    RevisionGraph g = build_revision_graph(fsm, spec);

    // (q0,s1) -> (q1,s1): p0 and p2 are missing from h(q1) = {p1,p3}.
    auto hops0 = dummy_hops(g, 0);
    REQUIRE(hops0.size() == 1);
    CHECK(label_atoms(g, *hops0[0]) ==
          std::vector<RemovalAtom>{RemovalAtom{{0, 0}, 0, lit(0)}, RemovalAtom{{0, 0}, 0, lit(2)}});

    // Edge sequences through the expansion: q0 -> q1 -> q3 costs 2 (the
    // same two atoms repeat), q0 -> q1 -> q2 costs 3 (p3 joins).
    auto two_hop = [&g](int from, int to) {
        for (int e : g.out[static_cast<size_t>(from)]) {
            const RevEdge& first = g.edges[static_cast<size_t>(e)];
            if (!g.nodes[static_cast<size_t>(first.to)].dummy) continue;
            int closing = g.out[static_cast<size_t>(first.to)][0];
            if (g.edges[static_cast<size_t>(closing)].to == to)
                return std::vector<int>{e, closing};
        }
        FAIL("expected a dummy path");
        return std::vector<int>{};
    };
    std::vector<int> e1 = two_hop(0, 1);
    std::vector<int> e2 = two_hop(1, 2);
    std::vector<int> e3 = two_hop(1, 3);

    std::vector<int> path13 = e1;
    path13.insert(path13.end(), e3.begin(), e3.end());
    CHECK(path_cost(g, path13).first == 2);

    std::vector<int> path12 = e1;
    path12.insert(path12.end(), e2.begin(), e2.end());
    CHECK(path_cost(g, path12).first == 3);

    CHECK(path_cost(g, {}).first == 0);

    // Disconnected sequences are rejected.
    CHECK_THROWS_AS(path_cost(g, {e1[0], e2[1]}), input_error);
}

TEST_CASE("expansion soundness and completeness on random instances") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomDagParams params;
        params.nodes_per_dag = 2;  // products of at most 4 real states
        params.ap_count = 6;
        params.seed = seed * 4241;
        auto [fsm, spec] = gen_random_instance(params);
        RevisionGraph g = build_revision_graph(fsm, spec);

        int universe_bound = 0;
        for (const auto& [edge, guard] : spec.guards)
            for (const Clause& c : guard.clauses)
                universe_bound += static_cast<int>(c.literals.size());
        CHECK(g.universe_size() <= universe_bound);

        for (int v = 0; v < g.num_nodes(); ++v) {
            for (int e : g.out[static_cast<size_t>(v)]) {
                const RevEdge& edge = g.edges[static_cast<size_t>(e)];
                const RevNode& to = g.nodes[static_cast<size_t>(edge.to)];
                if (!g.nodes[static_cast<size_t>(v)].dummy && !to.dummy) {
                    // Enabled edges carry no atoms and exist in the product.
                    CHECK(edge.atoms.empty());
                    Product p = build_product(fsm, spec);
                    CHECK(p.has_edge(v, edge.to));
                    continue;
                }
                if (!to.dummy) continue;  // closing hop, checked below

                // First hop of a disabled expansion: applying exactly its
                // label enables the underlying transition through this
                // clause, and any proper subset leaves the clause violated.
                RevisionSet rev;
                for (const RemovalAtom& atom : label_atoms(g, edge)) rev.insert(atom);
                REQUIRE(!rev.empty());
                SpecAutomaton revised = apply_revision(spec, rev);
                Product p = build_product(fsm, revised);
                CHECK(p.has_edge(to.base_from, to.base_to));

                const RemovalAtom& first = rev.atoms.front();
                const auto& target_label =
                    fsm.labels[static_cast<size_t>(to.base_to / spec.num_states())];
                for (size_t skip = 0; skip < rev.atoms.size(); ++skip) {
                    RevisionSet partial;
                    for (size_t i = 0; i < rev.atoms.size(); ++i)
                        if (i != skip) partial.insert(rev.atoms[i]);
                    SpecAutomaton part = apply_revision(spec, partial);
                    const Guard& guard = part.guards.at(first.spec_edge);
                    if (!guard.top)
                        CHECK(!guard.clauses[static_cast<size_t>(first.clause)].satisfied_by(
                            target_label));
                }
            }
        }
    }
}

TEST_CASE("graph construction is deterministic and round-trips through json") {
    RandomDagParams params;
    params.nodes_per_dag = 4;
    params.seed = 99;
    auto [fsm, spec] = gen_random_instance(params);

    RevisionGraph a = build_revision_graph(fsm, spec);
    RevisionGraph b = build_revision_graph(fsm, spec);
    std::string dump_a = dump_document(graph_to_json(a));
    std::string dump_b = dump_document(graph_to_json(b));
    CHECK(dump_a == dump_b);

    RevisionGraph reloaded = graph_from_json(graph_to_json(a));
    CHECK(dump_document(graph_to_json(reloaded)) == dump_a);
    CHECK(reloaded.universe_size() == a.universe_size());
    CHECK(reloaded.edges.size() == a.edges.size());
}

TEST_CASE("node and dummy ordering is stable") {
    auto [fsm, spec] = selfloop_instance();
    RevisionGraph g = build_revision_graph(fsm, spec);
    // Real nodes first, in (fsm, spec) order.
    for (int v = 0; v < g.n_real; ++v) {
        CHECK(!g.nodes[static_cast<size_t>(v)].dummy);
        CHECK(g.nodes[static_cast<size_t>(v)].fsm_state == v / spec.num_states());
    }
    // Dummies follow, ordered by their base edge.
    std::pair<int, int> last{-1, -1};
    for (int v = g.n_real; v < g.num_nodes(); ++v) {
        const RevNode& node = g.nodes[static_cast<size_t>(v)];
        REQUIRE(node.dummy);
        std::pair<int, int> base{node.base_from, node.base_to};
        CHECK(last <= base);
        last = base;
    }
    // Adjacency is sorted by target.
    for (const auto& adj : g.out)
        for (size_t i = 0; i + 1 < adj.size(); ++i)
            CHECK(g.edges[static_cast<size_t>(adj[i])].to <=
                  g.edges[static_cast<size_t>(adj[i + 1])].to);
}

TEST_CASE("two-agent fixture: transition counts under both conventions") {
    Instance two_agent = test_util::load_fixture_instance("two_agent.json");
    RevisionGraph g = build_revision_graph(two_agent.fsm, two_agent.spec);
    CHECK(g.n_real == 36);
    CHECK(g.transitions_unexpanded == 240);
    // Every transition has a single-clause guard, so the expanded count
    // adds one extra hop per disabled transition.
    int disabled = 0;
    for (const RevNode& node : g.nodes)
        if (node.dummy) ++disabled;
    CHECK(static_cast<int>(g.edges.size()) == 240 + disabled);
}

TEST_CASE("dot export marks disabled paths dashed with clause labels") {
    auto [fsm, spec] = selfloop_instance();
    RevisionGraph g = build_revision_graph(fsm, spec);
    std::ostringstream out;
    write_dot(out, g);
    std::string dot = out.str();
    CHECK(dot.find("digraph revision") != std::string::npos);
    CHECK(dot.find("style=dashed") != std::string::npos);
    CHECK(dot.find("{p0,p2}@(s1,s1)#0") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
}

TEST_CASE("graph fixtures load with their atoms in order") {
    RevisionGraph g = test_util::load_fixture_graph("greedy_gap.json");
    CHECK(g.num_nodes() == 6);
    CHECK(g.universe_size() == 4);
    for (int i = 0; i < 4; ++i)
        CHECK(g.prop_names[static_cast<size_t>(
                  g.atom_table[static_cast<size_t>(i)].literal.ap)] ==
              "p" + std::to_string(i + 1));
}
