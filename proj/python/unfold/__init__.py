"""Python access to the unfold scenario checker and case studies."""

import json

from ._unfold import (
    ContractViolation,
    DslError,
    ParseError,
    SemanticError,
    check_path,
    desugar,
    graph_mirror,
    graph_union,
    normalize_term,
    queue_of_seq,
    stack_of_seq,
    sum_seq,
)
from . import _unfold

__all__ = [
    "ContractViolation",
    "DslError",
    "ParseError",
    "SemanticError",
    "check",
    "check_file",
    "check_path",
    "demo",
    "desugar",
    "graph_mirror",
    "graph_union",
    "normalize_term",
    "queue_of_seq",
    "stack_of_seq",
    "sum_seq",
]


def check(source, seed=0):
    """Run scenario text. Returns (rows, exit code); rows follow the JSON report."""
    text, code = _unfold.check_json(source, seed)
    return json.loads(text), code


def check_file(path, seed=0):
    with open(path, encoding="utf-8") as f:
        return check(f.read(), seed)


def demo():
    text, code = _unfold.demo_json()
    return json.loads(text), code
