"""Polynomial algebra over classical field symbols with abstract Lorentz indices.

An :class:`Expression` is a canonical sum of :class:`Term` objects.  Each
term carries an exact complex-rational coefficient, a j-degree (the
contraction grading), a monomial in the coupling parameters {g, gp, R}, an
optional factor sqrt(2) (exponent 0 or 1; pairs fold into the coefficient),
and a commuting multiset of field factors.  A field factor is a field
symbol with its Lorentz indices, outer-derivative tags, and a conjugation
flag.

Index discipline: within one term an index name occurs exactly once (free)
or exactly twice (summed).  Summed indices are renamed canonically by
taking the lexicographic minimum over all relabelings, so structural
equality of normalized expressions is equality up to dummy relabeling.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .contraction import CR_I, CR_ONE, ComplexRational, JMode

__all__ = [
    "ArityError",
    "Expression",
    "FieldDef",
    "FieldFactor",
    "IndexConflictError",
    "Term",
    "UnknownFieldError",
    "conjugate",
    "const",
    "derive",
    "euler_lagrange",
    "field",
    "field_symbols",
    "first_order_variation",
    "free_indices",
    "imag",
    "instantiate_params",
    "inv_sqrt2",
    "j_decompose",
    "jpow",
    "param",
    "reduce_mode",
    "substitute",
]


class IndexConflictError(ValueError):
    """An index name is used more than twice within one term."""


class ArityError(ValueError):
    """A field carries the wrong number of indices."""


class UnknownFieldError(KeyError):
    """Reference to a field symbol that was never declared."""


@dataclass(frozen=True)
class FieldDef:
    name: str
    arity: int
    real: bool = True
    partner: str | None = None  # conjugate partner field, if distinct
    display: str | None = None
    primary: bool = True  # False: numeric draws derive from the partner's value

    @property
    def shown(self) -> str:
        return self.display or self.name


FIELDS: dict[str, FieldDef] = {}


def declare_field(name, arity, real=True, partner=None, display=None,
                  primary=True) -> FieldDef:
    fdef = FieldDef(name, arity, real, partner, display, primary)
    FIELDS[name] = fdef
    return fdef


for _v in ("A1", "A2", "A3", "B", "W1", "W2", "W3", "Z", "Aem"):
    declare_field(_v, 1)
declare_field("Wp", 1, real=False, partner="Wm", display="W+")
declare_field("Wm", 1, real=False, partner="Wp", display="W-", primary=False)
for _s in ("rho", "omega", "eps1", "eps2", "eps3"):
    declare_field(_s, 0)
declare_field("phi1", 0, real=False)
declare_field("phi2", 0, real=False)

PARAM_NAMES = ("g", "gp", "R")

# Canonical names handed to summed indices, skipping any that are free.
DUMMY_NAMES = ("mu", "nu", "al", "be", "ga", "de", "ze", "et", "ka", "la", "si", "ta")
HOLE = "_"  # placeholder index in substitution rules


@dataclass(frozen=True)
class FieldFactor:
    field: str
    indices: tuple[str, ...] = ()
    derivs: tuple[str, ...] = ()
    conj: bool = False

    def __post_init__(self):
        fdef = FIELDS.get(self.field)
        if fdef is None:
            raise UnknownFieldError(self.field)
        if len(self.indices) != fdef.arity:
            raise ArityError(
                f"{self.field} takes {fdef.arity} index(es), got {len(self.indices)}"
            )
        object.__setattr__(self, "indices", tuple(self.indices))
        object.__setattr__(self, "derivs", tuple(sorted(self.derivs)))

    def rename(self, mapping: dict[str, str]) -> "FieldFactor":
        return FieldFactor(
            self.field,
            tuple(mapping.get(i, i) for i in self.indices),
            tuple(mapping.get(i, i) for i in self.derivs),
            self.conj,
        )

    def canonical_conj(self) -> "FieldFactor":
        """Resolve the conjugation flag against the field declaration."""
        if not self.conj:
            return self
        fdef = FIELDS[self.field]
        if fdef.real:
            return FieldFactor(self.field, self.indices, self.derivs, False)
        if fdef.partner is not None:
            return FieldFactor(fdef.partner, self.indices, self.derivs, False)
        return self

    def sort_key(self):
        return (self.field, self.conj, self.indices, self.derivs)

    def names(self):
        return itertools.chain(self.indices, self.derivs)


@dataclass(frozen=True)
class Term:
    coeff: ComplexRational
    jdeg: int = 0
    params: tuple[tuple[str, int], ...] = ()
    r2: int = 0
    factors: tuple[FieldFactor, ...] = ()

    def key(self):
        return (self.jdeg, self.r2, self.params, tuple(f.sort_key() for f in self.factors))

    def index_counts(self) -> Counter:
        counts: Counter = Counter()
        for f in self.factors:
            counts.update(f.names())
        return counts

    def free_indices(self) -> frozenset[str]:
        return frozenset(n for n, c in self.index_counts().items() if c == 1)


def _fold_params(params) -> tuple[tuple[str, int], ...]:
    acc: dict[str, int] = {}
    for name, exp in params:
        if name not in PARAM_NAMES:
            raise ValueError(f"unknown parameter symbol {name!r}")
        acc[name] = acc.get(name, 0) + exp
    if any(e < 0 for e in acc.values()):
        raise ValueError("parameter exponents must be non-negative")
    return tuple(sorted((n, e) for n, e in acc.items() if e))


def _canonical_factors(factors: tuple[FieldFactor, ...]) -> tuple[FieldFactor, ...]:
    """Sort the factor multiset and relabel summed indices canonically.

    The canonical form is the lexicographic minimum over every bijection
    from the term's summed indices to the canonical alphabet, which makes
    structural equality complete for relabeling symmetry.  Terms here stay
    small (a handful of summed indices), so the factorial sweep is cheap.
    """
    counts: Counter = Counter()
    for f in factors:
        counts.update(f.names())
    over = [n for n, c in counts.items() if c > 2]
    if over:
        raise IndexConflictError(f"index used more than twice: {over[0]}")
    free = {n for n, c in counts.items() if c == 1}
    dummies = sorted(n for n, c in counts.items() if c == 2)
    if not dummies:
        return tuple(sorted(factors, key=FieldFactor.sort_key))
    if len(dummies) > 7:
        raise IndexConflictError("too many summed indices in one term")
    pool = [n for n in DUMMY_NAMES if n not in free]
    pool += [f"x{k}" for k in range(len(dummies)) if f"x{k}" not in free]
    canon = pool[: len(dummies)]
    best_key = None
    best: tuple[FieldFactor, ...] = ()
    for perm in itertools.permutations(dummies):
        mapping = dict(zip(perm, canon))
        renamed = tuple(
            sorted((f.rename(mapping) for f in factors), key=FieldFactor.sort_key)
        )
        key = tuple(f.sort_key() for f in renamed)
        if best_key is None or key < best_key:
            best_key, best = key, renamed
    return best


class Expression:
    """Canonical sum of terms; immutable, structural equality is semantic."""

    __slots__ = ("terms",)

    def __init__(self, terms: tuple[Term, ...] = ()):
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Expression is immutable")

    @classmethod
    def zero(cls) -> "Expression":
        return _EMPTY

    @classmethod
    def build(cls, raw_terms) -> "Expression":
        """Normalize a raw term list: canonicalize, merge, prune, sort."""
        merged: dict = {}
        for t in raw_terms:
            if t.coeff.is_zero():
                continue
            coeff = t.coeff
            r2 = t.r2
            if r2 >= 2:  # sqrt(2)^2 = 2 folds into the coefficient
                coeff = coeff * ComplexRational(2 ** (r2 // 2))
                r2 %= 2
            factors = _canonical_factors(
                tuple(f.canonical_conj() for f in t.factors)
            )
            term = Term(coeff, t.jdeg, _fold_params(t.params), r2, factors)
            k = term.key()
            prev = merged.get(k)
            if prev is not None:
                term = Term(prev.coeff + coeff, term.jdeg, term.params,
                            term.r2, term.factors)
            merged[k] = term
        out = tuple(
            sorted((t for t in merged.values() if not t.coeff.is_zero()),
                   key=Term.key)
        )
        frees = {t.free_indices() for t in out}
        if len(frees) > 1:
            raise IndexConflictError(
                f"terms carry different free indices: {sorted(map(sorted, frees))}"
            )
        return cls(out)

    # --- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def free_indices(self) -> frozenset[str]:
        return self.terms[0].free_indices() if self.terms else frozenset()

    def field_symbols(self) -> frozenset[str]:
        return frozenset(f.field for t in self.terms for f in t.factors)

    def j_degrees(self) -> tuple[int, ...]:
        return tuple(sorted({t.jdeg for t in self.terms}))

    # --- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(value) -> "Expression":
        if isinstance(value, Expression):
            return value
        if isinstance(value, (int, Fraction, ComplexRational)):
            return const(value)
        raise TypeError(f"cannot use {value!r} in expression arithmetic")

    def __add__(self, other) -> "Expression":
        o = self._coerce(other)
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        return Expression.build(self.terms + o.terms)

    __radd__ = __add__

    def __sub__(self, other) -> "Expression":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Expression":
        return self._coerce(other) - self

    def __neg__(self) -> "Expression":
        return Expression(tuple(
            Term(-t.coeff, t.jdeg, t.params, t.r2, t.factors) for t in self.terms
        ))

    @staticmethod
    def _refresh_dummies(t: Term, tag: str) -> Term:
        dummies = [n for n, c in t.index_counts().items() if c == 2]
        if not dummies:
            return t
        mapping = {n: f"_{tag}{k}" for k, n in enumerate(sorted(dummies))}
        return Term(t.coeff, t.jdeg, t.params, t.r2,
                    tuple(f.rename(mapping) for f in t.factors))

    def __mul__(self, other) -> "Expression":
        o = self._coerce(other)
        raw = []
        for ta in self.terms:
            ta = self._refresh_dummies(ta, "L")
            for tb in o.terms:
                tb = self._refresh_dummies(tb, "R")
                raw.append(Term(
                    ta.coeff * tb.coeff,
                    ta.jdeg + tb.jdeg,
                    ta.params + tb.params,
                    ta.r2 + tb.r2,
                    ta.factors + tb.factors,
                ))
        return Expression.build(raw)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Expression":
        if n < 0:
            raise ValueError("negative powers are not defined for expressions")
        out = const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expression):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def conjugate(self) -> "Expression":
        return conjugate(self)

    def __str__(self) -> str:
        from .parser import to_text

        return to_text(self)

    def __repr__(self) -> str:
        return f"<Expression {self.__str__()!r}>"


_EMPTY = Expression(())


# --- constructors ----------------------------------------------------------

def field(name, *indices, derivs=(), conj=False) -> Expression:
    return Expression.build(
        [Term(CR_ONE, factors=(FieldFactor(name, tuple(indices), tuple(derivs), conj),))]
    )


def const(value) -> Expression:
    value = ComplexRational.of(value)
    if value.is_zero():
        return _EMPTY
    return Expression((Term(value),))


def imag() -> Expression:
    return const(CR_I)


def param(name, power: int = 1) -> Expression:
    return Expression.build([Term(CR_ONE, params=((name, power),))])


def jpow(power: int = 1) -> Expression:
    return Expression.build([Term(CR_ONE, jdeg=power)])


def inv_sqrt2() -> Expression:
    # 1/sqrt(2) = sqrt(2)/2, kept exact via the r2 exponent
    return Expression((Term(ComplexRational(Fraction(1, 2)), r2=1),))


def free_indices(e: Expression) -> frozenset[str]:
    return e.free_indices()


def field_symbols(e: Expression) -> frozenset[str]:
    return e.field_symbols()


# --- structural operations --------------------------------------------------

def conjugate(e: Expression) -> Expression:
    """Complex conjugation: coefficients conjugated, conjugation flags flipped.

    Real fields are fixed; mutually conjugate pairs swap; j and the
    parameters are real.
    """
    raw = []
    for t in e.terms:
        raw.append(Term(
            t.coeff.conjugate(), t.jdeg, t.params, t.r2,
            tuple(
                FieldFactor(f.field, f.indices, f.derivs, not f.conj)
                for f in t.factors
            ),
        ))
    return Expression.build(raw)


def derive(e: Expression, idx: str) -> Expression:
    """Formal derivative d[idx] via the Leibniz rule.

    Derivative tags form a multiset, so repeated derivatives commute by
    construction.  ``idx`` must not already be summed in any term.
    """
    raw = []
    for t in e.terms:
        if t.index_counts()[idx] >= 2:
            raise IndexConflictError(f"index {idx} is already summed in {t}")
        for p, f in enumerate(t.factors):
            new_factor = FieldFactor(f.field, f.indices, f.derivs + (idx,), f.conj)
            raw.append(Term(
                t.coeff, t.jdeg, t.params, t.r2,
                t.factors[:p] + (new_factor,) + t.factors[p + 1:],
            ))
    return Expression.build(raw)


def _prepare_replacement(rep: Expression, f: FieldFactor) -> Expression:
    """Specialize a rule body to one factor: bind the hole, conjugate, derive."""
    arity = FIELDS[f.field].arity
    for t in rep.terms:
        hole_count = t.index_counts()[HOLE]
        if hole_count != arity:
            raise ArityError(
                f"replacement for {f.field} must use the hole index "
                f"'{HOLE}' exactly {arity} time(s) per term"
            )
    out = rep
    if arity:
        raw = [
            Term(t.coeff, t.jdeg, t.params, t.r2,
                 tuple(fc.rename({HOLE: f.indices[0]}) for fc in t.factors))
            for t in out.terms
        ]
        out = Expression.build(raw)
    if f.conj:
        out = conjugate(out)
    for dv in f.derivs:
        out = derive(out, dv)
    return out


def substitute(e: Expression, rules: dict[str, Expression]) -> Expression:
    """Simultaneous substitution of fields by expressions.

    Rule bodies reference the replaced field's index through the hole
    index ``_``; derivative tags distribute over the body via the Leibniz
    rule, and conjugated occurrences receive the conjugated body.
    """
    for name in rules:
        if name not in FIELDS:
            raise UnknownFieldError(name)
    total = Expression.zero()
    for t in e.terms:
        piece = Expression((Term(t.coeff, t.jdeg, t.params, t.r2),))
        for f in t.factors:
            if f.field in rules:
                piece = piece * _prepare_replacement(rules[f.field], f)
            else:
                piece = piece * Expression((Term(CR_ONE, factors=(f,)),))
        total = total + piece
    return total


def first_order_variation(e: Expression, rules: dict[str, Expression]) -> Expression:
    """Leibniz-linear variation: replace one factor at a time and sum.

    ``rules`` maps field symbols to their infinitesimal shifts (hole-indexed
    like :func:`substitute`); fields without a rule do not vary.
    """
    for name in rules:
        if name not in FIELDS:
            raise UnknownFieldError(name)
    total = Expression.zero()
    for t in e.terms:
        for p, f in enumerate(t.factors):
            rule = rules.get(f.field)
            if rule is None or rule.is_zero():
                continue
            rest = Expression((Term(
                t.coeff, t.jdeg, t.params, t.r2,
                t.factors[:p] + t.factors[p + 1:],
            ),))
            total = total + rest * _prepare_replacement(rule, f)
    return total


def j_decompose(e: Expression) -> dict[int, Expression]:
    """Partition by j-degree; parts carry degree 0 and reassemble exactly."""
    buckets: dict[int, list[Term]] = {}
    for t in e.terms:
        buckets.setdefault(t.jdeg, []).append(
            Term(t.coeff, 0, t.params, t.r2, t.factors)
        )
    return {d: Expression.build(ts) for d, ts in sorted(buckets.items())}


def reduce_mode(e: Expression, mode: JMode) -> Expression:
    """Interpret the j-grading: j=1 collapses, j=iota truncates at degree 2,
    and a numeric j folds j^deg into the coefficient exactly."""
    if mode.is_one:
        raw = [Term(t.coeff, 0, t.params, t.r2, t.factors) for t in e.terms]
    elif mode.is_nilpotent:
        raw = [t for t in e.terms if t.jdeg < 2]
    else:
        jv = mode.value
        raw = [
            Term(t.coeff * ComplexRational(jv**t.jdeg), 0, t.params, t.r2, t.factors)
            for t in e.terms
        ]
    return Expression.build(raw)


def instantiate_params(e: Expression, values: dict[str, Fraction]) -> Expression:
    """Substitute exact numeric values for coupling parameters."""
    raw = []
    for t in e.terms:
        coeff = t.coeff
        remaining = []
        for name, exp in t.params:
            if name in values:
                coeff = coeff * ComplexRational(Fraction(values[name]) ** exp)
            else:
                remaining.append((name, exp))
        raw.append(Term(coeff, t.jdeg, tuple(remaining), t.r2, t.factors))
    return Expression.build(raw)


def _fresh(term_names, base="w") -> str:
    k = 0
    while f"{base}{k}" in term_names:
        k += 1
    return f"{base}{k}"


def euler_lagrange(lagrangian: Expression, fld: str, idx: str | None = None) -> Expression:
    """Variational derivative dL/dX[idx] - d[nu](dL/d(d[nu]X[idx])).

    ``lagrangian`` must be a scalar.  Conjugated occurrences are treated as
    independent; vary with respect to the conjugate field to get the other
    equation.  Only first-order derivative factors of the varied field are
    supported.
    """
    fdef = FIELDS.get(fld)
    if fdef is None:
        raise UnknownFieldError(fld)
    if lagrangian.free_indices():
        raise IndexConflictError("Euler-Lagrange input must be a scalar expression")
    if fdef.arity == 1 and idx is None:
        raise ArityError(f"{fld} is a vector field; an equation index is required")
    total = Expression.zero()
    for t in lagrangian.terms:
        names = set(t.index_counts())
        if idx is not None and idx in names:
            mapping = {n: f"_e{k}" for k, n in enumerate(sorted(names))}
            t = Term(t.coeff, t.jdeg, t.params, t.r2,
                     tuple(f.rename(mapping) for f in t.factors))
            names = set(t.index_counts())
        for p, f in enumerate(t.factors):
            if f.field != fld or f.conj:
                continue
            rest = t.factors[:p] + t.factors[p + 1:]
            if len(f.derivs) == 0:
                mapping = {f.indices[0]: idx} if fdef.arity else {}
                total = total + Expression.build([Term(
                    t.coeff, t.jdeg, t.params, t.r2,
                    tuple(r.rename(mapping) for r in rest),
                )])
            elif len(f.derivs) == 1:
                b = f.derivs[0]
                if fdef.arity and f.indices[0] == b:
                    # divergence factor d[a]X[a]: contributes -d[idx](rest)
                    rest_expr = Expression.build(
                        [Term(t.coeff, t.jdeg, t.params, t.r2, rest)]
                    )
                    total = total - derive(rest_expr, idx)
                else:
                    w = _fresh(names | ({idx} if idx else set()))
                    mapping = {b: w}
                    if fdef.arity:
                        mapping[f.indices[0]] = idx
                    rest_expr = Expression.build([Term(
                        t.coeff, t.jdeg, t.params, t.r2,
                        tuple(r.rename(mapping) for r in rest),
                    )])
                    total = total - derive(rest_expr, w)
            else:
                raise ValueError(
                    "second derivatives of the varied field are not supported"
                )
    return total
