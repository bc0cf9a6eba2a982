"""Randomized numeric evaluation of field expressions.

Two normalized expressions that differ must disagree on random field values
(the polynomial identity-testing argument), so evaluating both sides on a
handful of random assignments is a sound oracle for identities the
canonical form cannot settle, e.g. after float parameter instantiation.

Summed index pairs expand over a 4-dimensional index range; contraction is
plain pairing with no metric signs.  Conjugate field instances always
receive the conjugate value of their partners.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .fields import FIELDS, Expression, j_decompose

__all__ = [
    "DIMENSION",
    "EqualsPolicy",
    "EqualsResult",
    "FieldSample",
    "MissingAssignmentError",
    "assignment_from_components",
    "equals",
    "eval_expression",
]

DIMENSION = 4

SQRT2 = math.sqrt(2.0)


class MissingAssignmentError(KeyError):
    """An explicit assignment lacks a required field instance."""


class FieldSample:
    """Deterministic random field values, drawn lazily per instance key.

    Real fields get real Gaussian draws, complex fields complex ones, and
    the value of a conjugate-partner field is forced to the conjugate of
    its partner's value.
    """

    def __init__(self, seed: int):
        self._rng = random.Random(seed)
        self._values: dict = {}

    def value(self, fld: str, indices, derivs, conj: bool) -> complex:
        fdef = FIELDS[fld]
        if fdef.partner is not None and not fdef.primary:
            # the secondary member of a conjugate pair mirrors its partner
            return self.value(fdef.partner, indices, derivs, not conj)
        if conj:
            return self.value(fld, indices, derivs, False).conjugate()
        key = (fld, tuple(indices), tuple(sorted(derivs)))
        got = self._values.get(key)
        if got is None:
            if fdef.real:
                got = complex(self._rng.gauss(0.0, 1.0), 0.0)
            else:
                got = complex(self._rng.gauss(0.0, 1.0), self._rng.gauss(0.0, 1.0))
            self._values[key] = got
        return got


class _DictAssignment:
    def __init__(self, mapping):
        self.mapping = mapping

    def value(self, fld, indices, derivs, conj):
        key = (fld, tuple(indices), tuple(sorted(derivs)), conj)
        if key not in self.mapping:
            raise MissingAssignmentError(f"no value assigned for {key}")
        return complex(self.mapping[key])


def assignment_from_components(components: dict) -> _DictAssignment:
    """Build an explicit assignment from per-field component vectors.

    ``components`` maps a field name to a scalar (arity 0) or a length-4
    sequence of component values (arity 1); derivative instances are not
    covered and must be added by hand if needed.
    """
    mapping = {}
    for fld, values in components.items():
        fdef = FIELDS[fld]
        if fdef.arity == 0:
            mapping[(fld, (), (), False)] = complex(values)
            mapping[(fld, (), (), True)] = complex(values).conjugate()
        else:
            for mu, v in enumerate(values):
                mapping[(fld, (mu,), (), False)] = complex(v)
                mapping[(fld, (mu,), (), True)] = complex(v).conjugate()
    return _DictAssignment(mapping)


def eval_expression(
    e: Expression,
    assignment,
    params: dict | None = None,
    jvalue: float = 1.0,
    free_values: dict | None = None,
) -> complex:
    """Evaluate the polynomial on concrete field values.

    ``assignment`` is a :class:`FieldSample` or an explicit dict-backed
    assignment; ``free_values`` fixes any free indices to concrete values
    in ``range(4)``.
    """
    if isinstance(assignment, dict):
        assignment = _DictAssignment(assignment)
    params = params or {}
    free_values = free_values or {}
    total = 0j
    for t in e.terms:
        base = complex(t.coeff) * (SQRT2**t.r2) * (jvalue**t.jdeg)
        for name, exp in t.params:
            if name not in params:
                raise MissingAssignmentError(f"no value for parameter {name}")
            base *= float(params[name]) ** exp
        counts = t.index_counts()
        dummies = sorted(n for n, c in counts.items() if c == 2)
        frees = [n for n, c in counts.items() if c == 1]
        missing = [n for n in frees if n not in free_values]
        if missing:
            raise MissingAssignmentError(f"free index {missing[0]} has no value")
        for combo in itertools.product(range(DIMENSION), repeat=len(dummies)):
            concrete = dict(free_values)
            concrete.update(zip(dummies, combo))
            prod = base
            for f in t.factors:
                prod *= assignment.value(
                    f.field,
                    tuple(concrete[i] for i in f.indices),
                    tuple(concrete[i] for i in f.derivs),
                    f.conj,
                )
            total += prod
    return total


@dataclass(frozen=True)
class EqualsPolicy:
    trials: int = 20
    rel_tol: float = 1e-9
    seed: int = 20210
    param_values: dict | None = None


@dataclass(frozen=True)
class EqualsResult:
    equal: bool
    decision_path: str  # "exact-symbolic" | "numeric-oracle"
    max_rel_error: float
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.equal


def _trial_params(rng: random.Random, names) -> dict:
    return {n: rng.uniform(0.5, 2.0) for n in names}


def equals(a: Expression, b: Expression, policy: EqualsPolicy | None = None) -> EqualsResult:
    """Decide a == b: canonical difference first, numeric oracle as fallback.

    The numeric path compares each j-grade separately, so agreement is
    grading-aware rather than incidental at one j value.
    """
    policy = policy or EqualsPolicy()
    diff = a - b
    if diff.is_zero():
        return EqualsResult(True, "exact-symbolic", 0.0)

    parts_diff = j_decompose(diff)
    parts_a = j_decompose(a)
    parts_b = j_decompose(b)
    param_names = {n for t in diff.terms for n, _ in t.params}
    param_names |= {n for e in (a, b) for t in e.terms for n, _ in t.params}
    frees = diff.free_indices()
    worst = 0.0
    witness = None
    for trial in range(policy.trials):
        rng = random.Random(f"{policy.seed}:{trial}")
        sample = FieldSample(rng.randrange(2**32))
        params = dict(policy.param_values or _trial_params(rng, sorted(param_names)))
        free_values = {n: rng.randrange(DIMENSION) for n in sorted(frees)}
        for grade, part in parts_diff.items():
            va = eval_expression(parts_a.get(grade, Expression.zero()),
                                 sample, params, 1.0, free_values)
            vb = eval_expression(parts_b.get(grade, Expression.zero()),
                                 sample, params, 1.0, free_values)
            vd = eval_expression(part, sample, params, 1.0, free_values)
            scale = max(abs(va), abs(vb), 1e-30)
            rel = abs(vd) / scale
            if rel > worst:
                worst = rel
                witness = (
                    f"grade {grade}, trial {trial}: |diff|={abs(vd):.3e}, "
                    f"scale={scale:.3e}"
                )
    equal = worst <= policy.rel_tol
    return EqualsResult(equal, "numeric-oracle", worst, None if equal else witness)
