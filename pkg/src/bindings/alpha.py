"""Alpha-equivalence, its forall-fresh variant, and a nameless canonical form."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .term import Abs, Op, Term, Var, VarRef, free_vars, fresh_vars, swap


def _abs_candidates(a1: Abs, a2: Abs, n: int) -> list[str]:
    avoid = (free_vars(a1.body) | free_vars(a2.body)
             | {VarRef(a1.vs, a1.x), VarRef(a2.vs, a2.x)})
    return fresh_vars(a1.vs, avoid, n)


def _alpha(t1: Term, t2: Term, sample: int) -> bool:
    match t1, t2:
        case Var(), Var():
            return t1 == t2
        case Op(), Op():
            return (t1.op == t2.op
                    and [i for i, _ in t1.inp] == [i for i, _ in t2.inp]
                    and [j for j, _ in t1.binp] == [j for j, _ in t2.binp]
                    and all(_alpha(c1, c2, sample)
                            for (_, c1), (_, c2) in zip(t1.inp, t2.inp))
                    and all(_alpha_abs(a1, a2, sample)
                            for (_, a1), (_, a2) in zip(t1.binp, t2.binp)))
    return False


def _alpha_abs(a1: Abs, a2: Abs, sample: int) -> bool:
    if a1.vs != a2.vs:
        return False
    for y in _abs_candidates(a1, a2, sample):
        if not _alpha(swap(a1.body, y, a1.x, a1.vs),
                      swap(a2.body, y, a2.x, a2.vs), sample):
            return False
    return True


def alpha_eq(t1: Term, t2: Term) -> bool:
    return _alpha(t1, t2, 1)


def alpha_eq_abs(a1: Abs, a2: Abs) -> bool:
    return _alpha_abs(a1, a2, 1)


def alpha_eq_forall(t1: Term, t2: Term, sample: int = 3) -> bool:
    """Like :func:`alpha_eq`, but each binder pair must agree for ``sample``
    distinct fresh names rather than one."""
    if sample < 1:
        raise ValueError("sample must be >= 1")
    return _alpha(t1, t2, sample)


def alpha_eq_abs_forall(a1: Abs, a2: Abs, sample: int = 3) -> bool:
    if sample < 1:
        raise ValueError("sample must be >= 1")
    return _alpha_abs(a1, a2, sample)


# -- canonical (nameless) form --------------------------------------------------

@dataclass(frozen=True, slots=True)
class CFree:
    vs: str
    x: str


@dataclass(frozen=True, slots=True)
class CBound:
    vs: str
    index: int


@dataclass(frozen=True, slots=True)
class COp:
    op: str
    inp: tuple
    binp: tuple


@dataclass(frozen=True, slots=True)
class CAbs:
    vs: str
    body: "CanonicalTerm"


CanonicalTerm = Union[CFree, CBound, COp]


def to_canonical(t: Term) -> CanonicalTerm:
    return _canon(t, ())


def to_canonical_abs(a: Abs) -> CAbs:
    return _canon_abs(a, ())


def _canon(t: Term, scope: tuple[VarRef, ...]) -> CanonicalTerm:
    # scope holds enclosing binders, innermost last
    match t:
        case Var(vs, x):
            for dist, ref in enumerate(reversed(scope)):
                if ref == (vs, x):
                    return CBound(vs, dist)
            return CFree(vs, x)
        case Op(name, inp, binp):
            return COp(name, tuple((i, _canon(c, scope)) for i, c in inp),
                       tuple((j, _canon_abs(a, scope)) for j, a in binp))
    raise TypeError(f"not a term: {t!r}")


def _canon_abs(a: Abs, scope: tuple[VarRef, ...]) -> CAbs:
    return CAbs(a.vs, _canon(a.body, scope + (VarRef(a.vs, a.x),)))
