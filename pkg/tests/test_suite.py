import json

import pytest

from gramtab.polyring import Poly
from gramtab.suite import (
    CATALOG,
    Identity,
    Route,
    UnknownIdentity,
    reports_to_json,
    run_case,
    verify,
)

x = Poly.var("x")


def test_examples():
    assert verify("T5.1", (3, 3)).passed
    assert verify("T6.7d", (3, 3)).passed
    report = verify("T6.4", (1, 1))
    assert report.passed and report.cases[0].value == "x"


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        verify("T9.9")


@pytest.mark.parametrize("token", list(CATALOG))
def test_catalog_identity_passes(token):
    report = verify(token)
    assert report.passed, report.to_text()
    lo, hi = CATALOG[token].n_range
    assert [c.n for c in report.cases] == list(range(lo, hi + 1))


def test_mismatch_report_names_least_monomial():
    broken = Identity("X", "deliberately broken", (2, 2), ((
        Route("left", lambda n: 1 + 3 * x + x**n),
        Route("right", lambda n: 1 + 2 * x + 5 * x**n),
    ),))
    case = run_case(broken, 2)
    assert case.status == "fail"
    assert case.mismatch.left == "1 + 3*x + x^2"
    assert case.mismatch.right == "1 + 2*x + 5*x^2"
    assert case.mismatch.monomial == "x"


def test_laurent_values_are_cleared():
    ident = Identity("L", "laurent", (1, 1), ((
        Route("a", lambda n: x**-2 + 1),
        Route("b", lambda n: (1 + x**2) * x**-2),
    ),))
    case = run_case(ident, 1)
    assert case.status == "pass"
    assert case.clearing == "x^2"
    assert case.value == "1 + x^2"


def test_json_report():
    doc = json.loads(reports_to_json([verify("T6.8b", (1, 3))]))
    assert [d["n"] for d in doc] == [1, 2, 3]
    assert all({"identity", "n", "status", "millis"} <= set(d) for d in doc)
    assert doc[2]["value"] == "6 + 54*x + 54*x^2 + 6*x^3"
