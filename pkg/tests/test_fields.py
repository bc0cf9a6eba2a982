"""Field algebra: canonical forms, Leibniz calculus, substitution, grading."""

import random
from fractions import Fraction

import pytest

from ewverify import (
    ArityError,
    ComplexRational,
    Expression,
    IndexConflictError,
    J_NILPOTENT,
    J_ONE,
    JMode,
    conjugate,
    const,
    derive,
    field,
    instantiate_params,
    j_decompose,
    jpow,
    param,
    parse,
    reduce_mode,
    substitute,
)
from ewverify.fields import FieldFactor, UnknownFieldError, first_order_variation

from helpers import random_expression


def test_like_terms_merge():
    x = parse("g A1[mu] B[mu]")
    assert x + x == parse("2 g A1[mu] B[mu]")
    assert (field("A1", "mu") * field("B", "nu")
            + field("B", "nu") * field("A1", "mu")).terms[0].coeff == ComplexRational(2)


def test_zero_and_identity():
    e = parse("rho rho + j^2 Z[mu] Z[mu]")
    assert e + Expression.zero() == e
    assert e - e == Expression.zero()
    assert const(1) * e == e


def test_dummy_relabeling_is_canonical():
    a = parse("Z[nu] B[nu]")
    b = parse("Z[mu] B[mu]")
    assert a == b
    # contraction structure is respected: (A.B)(Z.Z) != (A.Z)(B.Z)
    p1 = parse("A1[mu] B[mu] Z[nu] Z[nu]")
    p2 = parse("A1[mu] Z[mu] B[nu] Z[nu]")
    assert p1 != p2


def test_commuting_pair_relabel():
    lhs = parse("d[mu]W+[nu] d[mu]W-[nu]")
    rhs = parse("d[al]W-[be] d[al]W+[be]")
    assert lhs == rhs


def test_index_rule_enforced():
    from ewverify.fields import Term

    triple = Term(
        ComplexRational(1),
        factors=tuple(FieldFactor("A1", ("mu",)) for _ in range(3)),
    )
    with pytest.raises(IndexConflictError):
        Expression.build([triple])
    with pytest.raises(ArityError):
        FieldFactor("rho", ("mu",))
    with pytest.raises(ArityError):
        FieldFactor("B", ())
    with pytest.raises(UnknownFieldError):
        field("nosuch", "mu")


def test_products_contract_rather_than_collide():
    # a summed pair on one side is independent of a new free index
    contracted = field("A1", "mu") * field("A1", "mu")
    outer = contracted * field("A1", "mu")
    assert outer.free_indices() == {"mu"}
    assert len(outer.terms[0].factors) == 3


def test_products_refresh_dummies():
    a = parse("B[mu] B[mu]")
    sq = a * a
    assert sq == parse("B[mu] B[mu] B[nu] B[nu]")
    assert len(sq.terms) == 1


def test_grading_adds_under_multiplication():
    x = jpow(1) * field("rho")
    y = jpow(1) * field("omega")
    assert (x * y).terms[0].jdeg == 2


def test_derive_examples():
    assert derive(field("B", "nu"), "mu") == parse("d[mu]B[nu]")
    # Leibniz
    x, y = field("rho"), field("omega")
    assert derive(x * y, "mu") == derive(x, "mu") * y + x * derive(y, "mu")
    assert derive(const(Fraction(5, 3)), "mu") == Expression.zero()


def test_derive_error_on_saturated_index():
    with pytest.raises(IndexConflictError):
        derive(parse("B[mu] B[mu]"), "mu")


def test_derivatives_commute(rng):
    for _ in range(200):
        e = random_expression(rng)
        frees = e.free_indices()
        a, b = "pp", "qq"
        if frees & {a, b}:
            continue
        assert derive(derive(e, a), b) == derive(derive(e, b), a)


def test_substitute_scaling_rules():
    rules = {"A1": jpow() * field("A1", "_"), "A2": jpow() * field("A2", "_")}
    assert substitute(field("A1", "mu"), rules) == jpow() * field("A1", "mu")
    assert substitute(field("A3", "mu"), rules) == field("A3", "mu")
    # derivative tags distribute over the replacement
    assert substitute(parse("d[nu]A1[mu]"), rules) == jpow() * parse("d[nu]A1[mu]")


def test_substitute_linear_combination_roundtrip():
    g, gp, s = Fraction(3), Fraction(4), Fraction(5)
    forward = {
        "W3": const(g / s) * field("Z", "_") + const(gp / s) * field("Aem", "_"),
        "B": const(gp / s) * field("Z", "_") - const(g / s) * field("Aem", "_"),
    }
    back = {
        "Z": const(g / s) * field("W3", "_") + const(gp / s) * field("B", "_"),
        "Aem": const(gp / s) * field("W3", "_") - const(g / s) * field("B", "_"),
    }
    w3_tensor = parse("d[mu]W3[nu] - d[nu]W3[mu]")
    mixed = substitute(w3_tensor, forward)
    assert mixed == const(g / s) * parse("d[mu]Z[nu] - d[nu]Z[mu]") + const(
        gp / s
    ) * parse("d[mu]Aem[nu] - d[nu]Aem[mu]")
    assert substitute(mixed, back) == w3_tensor


def test_substitute_arity_check():
    with pytest.raises(ArityError):
        substitute(field("W3", "mu"), {"W3": field("rho")})


def test_conjugation_rules():
    assert conjugate(field("Wp", "mu")) == field("Wm", "mu")
    assert conjugate(field("B", "mu")) == field("B", "mu")
    e = parse("i phi1 B[mu]")
    assert conjugate(e) == parse("-i conj(phi1) B[mu]")
    for text in ("j^2 g W+[mu] W-[mu]", "i rho d[mu]Z[nu]", "conj(phi2) phi1"):
        e = parse(text)
        assert conjugate(conjugate(e)) == e


def test_conjugation_involutive_on_random_corpus(rng):
    for _ in range(200):
        e = random_expression(rng)
        assert conjugate(conjugate(e)) == e


def test_j_decompose_partition(rng):
    e = parse("j^2 rho rho + j^4 omega omega")
    parts = j_decompose(e)
    assert set(parts) == {2, 4}
    assert parts[2] == parse("rho rho")
    e0 = parse("B[mu] B[mu]")
    assert j_decompose(e0) == {0: e0}
    for _ in range(100):
        e = random_expression(rng)
        parts = j_decompose(e)
        rebuilt = Expression.zero()
        for d, part in parts.items():
            rebuilt = rebuilt + jpow(d) * part
        assert rebuilt == e


def test_reduce_mode():
    e = parse("2 rho + 3 j^2 rho")
    assert reduce_mode(e, J_ONE) == parse("5 rho")
    assert reduce_mode(e, J_NILPOTENT) == parse("2 rho")
    assert reduce_mode(e, JMode.numeric(Fraction(1, 2))) == parse("11/4 rho")


def test_instantiate_params():
    e = parse("g^2 gp rho")
    assert instantiate_params(e, {"g": Fraction(3), "gp": Fraction(4)}) == parse(
        "36 rho"
    )
    partial = instantiate_params(e, {"g": Fraction(3)})
    assert partial == parse("9 gp rho")


def test_sqrt2_exponent_folds():
    r = parse("sqrt2 rho")
    assert r * r == parse("2 rho rho")
    assert (r * r * r).terms[0].r2 == 1


def test_normalize_idempotent_and_stable(rng):
    for _ in range(1000):
        e = random_expression(rng)
        rebuilt = Expression.build(e.terms)
        assert rebuilt == e


def test_first_order_variation_is_linear():
    rules = {"Z": field("omega") * field("Z", "_")}
    e = parse("Z[mu] Z[mu]")
    assert first_order_variation(e, rules) == parse("2 omega Z[mu] Z[mu]")
    # fields without a rule stay inert
    assert first_order_variation(parse("B[mu] B[mu]"), rules) == Expression.zero()


def test_mixed_free_indices_rejected():
    with pytest.raises(IndexConflictError):
        field("B", "mu") + field("B", "nu")
