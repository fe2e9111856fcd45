"""Minimal specification revision over guard-labeled product graphs.

The heavy lifting lives in the `_specrev` extension module; this package
wraps it with dict-in/dict-out conveniences. Documents are the same JSON
shapes the `specrev` command-line tool reads and writes.
"""

import json
import os

try:
    from ._specrev import (  # noqa: F401
        InputError,
        check_json,
        export_dot,
        generate_random_json,
        generate_series_merge_json,
        generate_unbounded_json,
        oracle_json,
        reduce_dimacs_json,
        revise_json,
    )
except ImportError:  # in-tree builds keep the extension next to the package
    from _specrev import (  # noqa: F401
        InputError,
        check_json,
        export_dot,
        generate_random_json,
        generate_series_merge_json,
        generate_unbounded_json,
        oracle_json,
        reduce_dimacs_json,
        revise_json,
    )

__all__ = [
    "InputError",
    "check",
    "export_graphviz",
    "generate_random",
    "generate_series_merge",
    "generate_unbounded",
    "load_document",
    "oracle",
    "reduce_dimacs",
    "revise",
]


def _as_text(document):
    if isinstance(document, str) and not document.lstrip().startswith(("{", "[")):
        # Treat non-JSON strings as paths.
        with open(document, "r", encoding="utf-8") as handle:
            return handle.read()
    if isinstance(document, (dict, list)):
        return json.dumps(document)
    return document


def load_document(path):
    """Load an instance or graph document from a file into a dict."""
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def revise(document):
    """Heuristic minimal revision. Accepts a dict, JSON text or a path."""
    return json.loads(revise_json(_as_text(document)))


def oracle(document, budget_s=60.0, prune=False):
    """Exact minimal revision by exhaustive subset search."""
    return json.loads(oracle_json(_as_text(document), budget_s, prune))


def check(document):
    """Validation plus a satisfiability check, no revision."""
    return json.loads(check_json(_as_text(document)))


def generate_random(nodes=3, edge_factor=2.5, final_fraction=0.2, aps=0, seed=1):
    return json.loads(generate_random_json(nodes, edge_factor, final_fraction, aps, seed))


def generate_unbounded(m):
    return json.loads(generate_unbounded_json(m))


def generate_series_merge(stages, width=2, seed=1):
    return json.loads(generate_series_merge_json(stages, width, seed))


def reduce_dimacs(dimacs):
    """Reduce 3-CNF DIMACS text (or a .cnf path) to a graph document."""
    if os.path.exists(dimacs):
        with open(dimacs, "r", encoding="utf-8") as handle:
            dimacs = handle.read()
    return json.loads(reduce_dimacs_json(dimacs))


def export_graphviz(document):
    """Graphviz rendering of a document's search graph."""
    return export_dot(_as_text(document))
