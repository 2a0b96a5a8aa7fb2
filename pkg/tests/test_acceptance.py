"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL
line.  Criterion 2's tree-order assertion is implemented exactly as stated
and is expected to fail: the tree metric provably induces the balanced
truncation order, which is strictly finer than the approximant order it is
declared to match (see the printed counterexamples)."""

import pytest

from lambdapm import verify


def _line(criterion, report):
    status = "PASS" if report["passed"] else "FAIL"
    print(f"[{status}] criterion {criterion}: {report['name']} "
          f"({report['seconds']}s)")


@pytest.fixture(scope="module")
def order_capture():
    return verify.suite_order_capture()


def test_criterion_1_axiom_suites():
    rep = verify.suite_axioms(seed=7)
    _line(1, rep)
    assert rep["passed"], rep["details"]
    assert rep["seconds"] < 60


def test_criterion_2a_order_capture_p_tree(order_capture):
    detail = order_capture["details"][0]
    assert detail["space"] == "p_tree"
    _line("2a", {"name": "order capture: p_tree vs approximant order",
                 "passed": detail["count"] == 0,
                 "seconds": order_capture["seconds"]})
    assert detail["count"] == 0, (
        "the induced order of the tree metric does not coincide with the "
        f"approximant order; counterexamples: {detail['counterexamples']} "
        "(it provably equals the balanced truncation order instead: "
        f"matches_truncation_order={detail['matches_truncation_order']}; "
        "see the decisions ledger for the analysis)")


def test_criterion_2b_order_capture_p_int(order_capture):
    detail = order_capture["details"][1]
    _line("2b", {"name": "order capture: p_int vs reverse inclusion",
                 "passed": detail["count"] == 0, "seconds": 0})
    assert detail["count"] == 0


def test_criterion_2c_order_capture_applicative(order_capture):
    details = [d for d in order_capture["details"]
               if d["space"].startswith("app(")]
    ok = all(d["count"] == 0 for d in details)
    _line("2c", {"name": "order capture: applicative vs pointwise",
                 "passed": ok, "seconds": 0})
    assert ok


def test_criterion_2d_order_capture_hausdorff(order_capture):
    detail = order_capture["details"][-1]
    assert detail["space"] == "H* on ideals"
    _line("2d", {"name": "order capture: H* on ideals vs inclusion",
                 "passed": detail["count"] == 0, "seconds": 0})
    assert detail["count"] == 0


def test_criterion_3_paper_identities():
    rep = verify.suite_identities()
    _line(3, rep)
    assert rep["passed"], [d for d in rep["details"] if not d["passed"]]


def test_criterion_4_taylor_isometry():
    rep = verify.suite_isometry()
    _line(4, rep)
    assert rep["passed"], rep["details"]
    assert rep["details"][0]["pairs"] >= 300
    assert rep["seconds"] < 300


def test_criterion_5_enumeration_isometry():
    rep = verify.suite_enumeration_isometry(seed=5, pairs=50, k=12)
    _line(5, rep)
    assert rep["passed"], rep["details"]


def test_criterion_6_commutation():
    rep = verify.suite_commutation()
    _line(6, rep)
    assert rep["passed"], rep["details"]
    assert rep["details"][0]["terms"] == 30


def test_criterion_7_quantification():
    rep = verify.suite_quantification(seed=7)
    _line(7, rep)
    assert rep["passed"], rep["details"]


def test_criterion_8_tower_laws():
    rep = verify.suite_tower(seed=7)
    _line(8, rep)
    assert rep["passed"], rep["details"]
    assert rep["seconds"] < 120


def test_criterion_9_genericity():
    rep = verify.suite_genericity()
    _line(9, rep)
    assert rep["passed"], rep["details"]


def test_criterion_10_bracket_soundness():
    rep = verify.suite_brackets(seed=13, pairs=100)
    _line(10, rep)
    assert rep["passed"], rep["details"]
