"""Shared test utilities: random canonical expressions for round-trip and
normalization property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from ewverify import ComplexRational, Expression
from ewverify.fields import FieldFactor, Term

VECTOR_FIELDS = ("A1", "A2", "A3", "B", "W1", "W2", "W3", "Z", "Aem", "Wp", "Wm")
SCALAR_FIELDS = ("rho", "omega", "eps1", "eps2", "eps3", "phi1", "phi2")
COMPLEX_SCALARS = ("phi1", "phi2")


def _random_coeff(rng: random.Random) -> ComplexRational:
    re = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    im = Fraction(rng.randint(-3, 3)) if rng.random() < 0.3 else Fraction(0)
    if re == 0 and im == 0:
        re = Fraction(1)
    return ComplexRational(re, im)


def _random_term(rng: random.Random, scalar: bool) -> Term:
    """One random term with a valid index pattern.

    ``scalar`` pairs every index slot; otherwise leftover slots become free
    indices with distinct names.
    """
    nfac = rng.randint(1, 3)
    specs = []
    slots = 0
    for _ in range(nfac):
        if rng.random() < 0.35:
            name = rng.choice(SCALAR_FIELDS)
            nderiv = rng.randint(0, 2)
            specs.append((name, 0, nderiv))
            slots += nderiv
        else:
            name = rng.choice(VECTOR_FIELDS)
            nderiv = rng.randint(0, 1)
            specs.append((name, 1, nderiv))
            slots += 1 + nderiv
    if scalar and slots % 2:
        specs.append(("B", 1, 0))
        slots += 1
    names = []
    pool = iter(f"q{k}" for k in range(slots))
    while len(names) < slots:
        if scalar or (slots - len(names) >= 2 and rng.random() < 0.6):
            shared = next(pool)
            names.extend([shared, shared])
        else:
            names.append(next(pool))
    rng.shuffle(names)
    it = iter(names)
    factors = []
    for name, arity, nderiv in specs:
        indices = tuple(next(it) for _ in range(arity))
        derivs = tuple(next(it) for _ in range(nderiv))
        conj = name in COMPLEX_SCALARS and rng.random() < 0.4
        factors.append(FieldFactor(name, indices, derivs, conj))
    params = tuple(
        (n, rng.randint(1, 2)) for n in ("g", "gp", "R") if rng.random() < 0.2
    )
    return Term(
        coeff=_random_coeff(rng),
        jdeg=rng.choice((0, 0, 0, 1, 2, 3, 4)),
        params=params,
        r2=rng.choice((0, 0, 0, 1)),
        factors=tuple(factors),
    )


def random_expression(rng: random.Random) -> Expression:
    """Random normalized expression; mostly scalars, some free-index one-liners."""
    if rng.random() < 0.3:
        return Expression.build([_random_term(rng, scalar=False)])
    nterms = rng.randint(1, 4)
    return Expression.build([_random_term(rng, scalar=True) for _ in range(nterms)])
