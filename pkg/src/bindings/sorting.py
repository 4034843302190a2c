"""Well-sortedness checking and sort inference against a signature."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .signature import Signature
from .term import Abs, Op, Term, Var


@dataclass(frozen=True)
class Sorted:
    sort: str


@dataclass(frozen=True)
class AbsSorted:
    vs: str
    sort: str


@dataclass(frozen=True)
class Failure:
    """``path`` is a sequence of selectors: ``("free", i)``, ``("bound", j)``
    or ``"abs-body"``, leading from the checked root to the bad subterm."""

    path: tuple
    reason: str
    detail: str = ""


SortReport = Union[Sorted, AbsSorted, Failure]


def _under(step, report):
    if isinstance(report, Failure):
        return Failure((step,) + report.path, report.reason, report.detail)
    return report


def infer_sort(sig: Signature, t: Term) -> SortReport:
    match t:
        case Var(vs, _):
            if vs not in sig.as_sort:
                return Failure((), "UnknownVarSort", vs)
            return Sorted(sig.as_sort[vs])
        case Op(name, inp, binp):
            decl = sig.ops.get(name)
            if decl is None:
                return Failure((), "UnknownOpSym", name)
            if [i for i, _ in inp] != sorted(decl.free):
                return Failure((), "ArityDomainMismatch",
                               f"{name}: free inputs {[i for i, _ in inp]}, "
                               f"arity {sorted(decl.free)}")
            if [j for j, _ in binp] != sorted(decl.bound):
                return Failure((), "ArityDomainMismatch",
                               f"{name}: bound inputs {[j for j, _ in binp]}, "
                               f"arity {sorted(decl.bound)}")
            for i, c in inp:
                r = infer_sort(sig, c)
                if isinstance(r, Failure):
                    return _under(("free", i), r)
                if r.sort != decl.free[i]:
                    return Failure((("free", i),), "ChildSortMismatch",
                                   f"expected {decl.free[i]}, got {r.sort}")
            for j, a in binp:
                r = check_abs(sig, a)
                if isinstance(r, Failure):
                    return _under(("bound", j), r)
                want_vs, want_s = decl.bound[j]
                if r.vs != want_vs:
                    return Failure((("bound", j),), "BinderVarSortMismatch",
                                   f"expected {want_vs}, got {r.vs}")
                if r.sort != want_s:
                    return Failure((("bound", j), "abs-body"), "ChildSortMismatch",
                                   f"expected {want_s}, got {r.sort}")
            return Sorted(decl.result)
    raise TypeError(f"not a term: {t!r}")


def check_abs(sig: Signature, a: Abs) -> SortReport:
    if a.vs not in sig.as_sort:
        return Failure((), "UnknownVarSort", a.vs)
    r = _under("abs-body", infer_sort(sig, a.body))
    if isinstance(r, Failure):
        return r
    pair = (a.vs, r.sort)
    if not any(pair in d.bound.values() for d in sig.ops.values()):
        return Failure((), "NotInBar", f"({a.vs}, {r.sort})")
    return AbsSorted(a.vs, r.sort)


def wls(sig: Signature, s: str, t: Term) -> bool:
    return infer_sort(sig, t) == Sorted(s)


def wls_abs(sig: Signature, vs: str, s: str, a: Abs) -> bool:
    return check_abs(sig, a) == AbsSorted(vs, s)
