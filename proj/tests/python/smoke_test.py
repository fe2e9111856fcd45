"""End-to-end smoke checks for the Python bindings."""

import sys

import specrev


def main(fixtures_dir):
    # Known graph: heuristic pays four removals, the optimum needs three.
    greedy_gap = specrev.load_document(f"{fixtures_dir}/greedy_gap.json")
    revised = specrev.revise(greedy_gap)
    assert revised["status"] == "revised", revised
    assert revised["cost"] == 4, revised
    assert revised["verified"] is True
    assert [a["literal"] for a in revised["atoms"]] == ["p1", "p2", "p3", "p4"]

    exact = specrev.oracle(greedy_gap, budget_s=30.0)
    assert exact["status"] == "optimal"
    assert exact["cost"] == 3
    assert [a["literal"] for a in exact["atoms"]] == ["p1", "p3", "p4"]

    # The staged-diamond family keeps its exact costs through the bindings.
    family = specrev.generate_unbounded(4)
    assert specrev.revise(family)["cost"] == 5
    assert specrev.oracle(family)["cost"] == 3

    # Instance documents: two-agent case study statistics.
    two_agent = specrev.load_document(f"{fixtures_dir}/two_agent.json")
    checked = specrev.check(two_agent)
    assert checked["stats"]["product_states"] == 36
    assert checked["stats"]["product_transitions_unexpanded"] == 240

    # Generation is deterministic and the documents replay through revise.
    a = specrev.generate_random(nodes=3, seed=11)
    b = specrev.generate_random(nodes=3, seed=11)
    assert a == b
    result = specrev.revise(a)
    assert result["verified"] is True

    # DIMACS reduction round-trips into a solvable graph document.
    dimacs = "p cnf 2 2\n1 -2 2 0\n-1 2 1 0\n"
    reduced = specrev.reduce_dimacs(dimacs)
    assert specrev.oracle(reduced)["cost"] == 2  # one class per variable

    dot = specrev.export_graphviz(greedy_gap)
    assert dot.startswith("digraph revision")

    # Errors surface as ValueError subclasses.
    try:
        specrev.check({"bogus": 1})
    except ValueError:
        pass
    else:
        raise AssertionError("expected InputError")

    print("python smoke tests passed")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
