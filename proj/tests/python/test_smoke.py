import pathlib

import pytest

import unfold

GOLDEN = pathlib.Path(__file__).resolve().parents[1] / "golden"


def test_sum_and_containers():
    assert unfold.sum_seq([1, 2, 3]) == 6
    assert unfold.sum_seq([]) == 0
    assert unfold.stack_of_seq([1, 2, 3]) == [3, 2, 1]
    assert unfold.queue_of_seq([1, 2, 3]) == [1, 2, 3]


def test_graphs():
    assert unfold.check_path([1, 2, 3], [(1, 2), (2, 3)], [1, 2, 3])
    assert not unfold.check_path([1, 2, 3], [(1, 2), (2, 3)], [1, 3])
    assert unfold.check_path([1], [], [])
    dom, edges = unfold.graph_union([1, 2], [(1, 2)], [2, 3], [(2, 3)])
    assert dom == [1, 2, 3]
    assert sorted(edges) == [(1, 2), (2, 3)]
    assert unfold.graph_mirror([1, 2], [(1, 2)]) == ([1, 2], [(2, 1)])


def test_check_golden_spec():
    rows, code = unfold.check_file(GOLDEN / "fold_sum.spec")
    assert code == 0
    assert rows[0]["name"] == "seq_sum"
    assert rows[0]["status"] == "pass"
    assert rows[0]["result"] == 6
    assert rows[0]["checks"] == {"inv": 4, "variant": 6}


def test_violation_is_reported():
    source = (GOLDEN / "fold_sum.spec").read_text().replace("init = 0;", "init = 2;")
    rows, code = unfold.check(source)
    assert code == 1
    assert rows[0]["violation"]["kind"] == "InvariantViolatedInitially"


def test_errors_map_to_python_exceptions():
    with pytest.raises(unfold.ParseError):
        unfold.check("collection s = [1,")
    with pytest.raises(unfold.SemanticError):
        unfold.desugar("collection s = [1]\ncollection s = [2]\n")
    assert issubclass(unfold.ParseError, ValueError)


def test_desugar_matches_golden():
    spec = (GOLDEN / "iter_stack.spec").read_text()
    assert unfold.desugar(spec) == (GOLDEN / "iter_stack.skel").read_text()


def test_normalize_term():
    assert unfold.normalize_term("s[..len v]") == "prefix s (len v)"
    assert unfold.normalize_term("(a + (b * c))") == "a + b * c"


def test_demo():
    rows, code = unfold.demo()
    assert code == 0
    assert len(rows) == 15
    assert all(r["status"] == "pass" for r in rows)
