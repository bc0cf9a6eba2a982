"""Numeric evaluation and the randomized equality oracle."""

import random

import pytest

from ewverify import (
    EqualsPolicy,
    Expression,
    FieldSample,
    MissingAssignmentError,
    assignment_from_components,
    equals,
    eval_expression,
    parse,
)

from helpers import random_expression


def test_eval_contracted_square():
    e = parse("B[mu] B[mu]")
    assignment = assignment_from_components({"B": [1, 2, 3, 4]})
    assert eval_expression(e, assignment) == pytest.approx(30 + 0j)


def test_eval_zero():
    assert eval_expression(Expression.zero(), FieldSample(1)) == 0j


def test_eval_requires_full_assignment():
    e = parse("B[mu] B[mu] + rho rho")
    assignment = assignment_from_components({"B": [1, 2, 3, 4]})
    with pytest.raises(MissingAssignmentError):
        eval_expression(e, assignment)
    with pytest.raises(MissingAssignmentError):
        eval_expression(parse("g rho"), FieldSample(0))


def test_eval_free_indices():
    e = parse("B[mu]")
    assignment = assignment_from_components({"B": [5, 6, 7, 8]})
    assert eval_expression(e, assignment, free_values={"mu": 2}) == 7 + 0j
    with pytest.raises(MissingAssignmentError):
        eval_expression(e, assignment)


def test_conjugate_pair_values_mirror():
    sample = FieldSample(3)
    wp = sample.value("Wp", (1,), (), False)
    wm = sample.value("Wm", (1,), (), False)
    assert wm == wp.conjugate()
    phi = sample.value("phi1", (), (), False)
    assert sample.value("phi1", (), (), True) == phi.conjugate()


def test_equals_exact_path():
    a = parse("Z[mu] B[mu]")
    res = equals(a, parse("Z[nu] B[nu]"))
    assert res.equal and res.decision_path == "exact-symbolic"


def test_equals_relabel_symmetric_products():
    lhs = parse("d[mu]W+[nu] d[mu]W-[nu]") * parse("Z[al] Z[al]")
    rhs = parse("Z[be] Z[be]") * parse("d[ka]W-[la] d[ka]W+[la]")
    res = equals(lhs, rhs)
    assert res.equal and res.decision_path == "exact-symbolic"


def test_equals_distinguishes_expressions():
    res = equals(parse("B[mu] B[mu]"), parse("2 B[mu] B[mu]"))
    assert not res.equal
    assert res.decision_path == "numeric-oracle"
    assert res.witness is not None
    # grading-aware: same j=1 collapse, different grades
    res = equals(parse("j^2 rho rho"), parse("rho rho"))
    assert not res.equal


def test_equals_agreement_is_sound(rng):
    """Canonically equal expressions agree numerically (soundness spot check)."""
    for _ in range(50):
        e = random_expression(rng)
        if e.free_indices():
            continue
        shuffled = Expression.build(tuple(reversed(e.terms)))
        res = equals(e, shuffled)
        assert res.equal and res.decision_path == "exact-symbolic"
        sample = FieldSample(rng.randrange(2**32))
        params = {"g": 1.3, "gp": 0.7, "R": 2.1}
        va = eval_expression(e, sample, params)
        vb = eval_expression(shuffled, sample, params)
        assert va == pytest.approx(vb, rel=1e-9, abs=1e-12)


def test_equals_policy_tolerance():
    a = parse("B[mu] B[mu]")
    b = a + parse("1/100000 B[nu] B[nu]")
    strict = equals(a, b, EqualsPolicy(trials=5, rel_tol=1e-9))
    loose = equals(a, b, EqualsPolicy(trials=5, rel_tol=1.0))
    assert not strict.equal
    assert loose.equal
