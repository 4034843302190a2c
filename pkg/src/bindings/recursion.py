"""Folds over terms that respect alpha-equivalence when the target model obeys
the term laws, plus semantic interpretation, binder refreshing and skeletons.

A fold here is a plain structural traversal of the concrete term.  Whether its
result depends only on the alpha class is a property of the model; use
:func:`check_model_laws` to test a model before trusting it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping

from .signature import Signature
from .sorting import Failure, check_abs, infer_sort
from .subst import subst
from .term import (Abs, Op, Term, Var, VarRef, all_vars, free_vars,
                   fresh, fresh_var, swap)


def _structural_eq(a, b) -> bool:
    return a == b


@dataclass
class FsModel:
    """Freshness-substitution model.  Field names follow the term operations:
    ``var``, ``op``, ``abs`` build values; ``subst``/``subst_abs`` and
    ``fresh``/``fresh_abs`` mirror substitution and freshness."""

    var: Callable[[str, str], Any]
    op: Callable[[str, dict, dict], Any]
    abs: Callable[[str, str, Any], Any]
    subst: Callable[[Any, Any, str, str], Any]
    subst_abs: Callable[[Any, Any, str, str], Any]
    fresh: Callable[[str, str, Any], bool]
    fresh_abs: Callable[[str, str, Any], bool]
    eq: Callable[[Any, Any], bool] = _structural_eq
    wls: Callable[[str, Any], bool] | None = None
    wls_abs: Callable[[str, str, Any], bool] | None = None


@dataclass
class SwapModel:
    var: Callable[[str, str], Any]
    op: Callable[[str, dict, dict], Any]
    abs: Callable[[str, str, Any], Any]
    swap: Callable[[Any, str, str, str], Any]
    swap_abs: Callable[[Any, str, str, str], Any]
    fresh: Callable[[str, str, Any], bool]
    fresh_abs: Callable[[str, str, Any], bool]
    eq: Callable[[Any, Any], bool] = _structural_eq


@dataclass
class FullModel:
    """Like :class:`FsModel`, but every operation also sees the original
    terms/abstractions alongside their recursive results.

    Signatures: ``op(name, inp_terms, inp_vals, binp_abs, binp_vals)``,
    ``abs(vs, x, X, val)``, ``subst(X, val, Y, val_y, y, ys)``,
    ``fresh(vs, x, X, val)``, and their ``_abs`` counterparts.
    """

    var: Callable[[str, str], Any]
    op: Callable[[str, dict, dict, dict, dict], Any]
    abs: Callable[[str, str, Term, Any], Any]
    subst: Callable[[Term, Any, Term, Any, str, str], Any]
    subst_abs: Callable[[Abs, Any, Term, Any, str, str], Any]
    fresh: Callable[[str, str, Term, Any], bool]
    fresh_abs: Callable[[str, str, Abs, Any], bool]
    eq: Callable[[Any, Any], bool] = _structural_eq


class SortViolation(Exception):
    pass


class ValuationUndefined(KeyError):
    pass


# -- iteration ------------------------------------------------------------------------

def fold_fs(m: FsModel | SwapModel, t: Term):
    match t:
        case Var(vs, x):
            return m.var(vs, x)
        case Op(name, inp, binp):
            return m.op(name, {i: fold_fs(m, c) for i, c in inp},
                        {j: fold_fs_abs(m, a) for j, a in binp})
    raise TypeError(f"not a term: {t!r}")


def fold_fs_abs(m: FsModel | SwapModel, a: Abs):
    return m.abs(a.vs, a.x, fold_fs(m, a.body))


# Swapping models share the constructor interface; only the law set differs.
fold_swap = fold_fs
fold_swap_abs = fold_fs_abs


def fold_full(m: FullModel, t: Term):
    match t:
        case Var(vs, x):
            return m.var(vs, x)
        case Op(name, inp, binp):
            return m.op(name, dict(inp), {i: fold_full(m, c) for i, c in inp},
                        dict(binp), {j: fold_full_abs(m, a) for j, a in binp})
    raise TypeError(f"not a term: {t!r}")


def fold_full_abs(m: FullModel, a: Abs):
    return m.abs(a.vs, a.x, a.body, fold_full(m, a.body))


def fold_fs_sorted(sig: Signature, m: FsModel, t: Term):
    """:func:`fold_fs` on a well-sorted term, checking the model's sorting
    predicates (when supplied) at every node."""
    top = infer_sort(sig, t)
    if isinstance(top, Failure):
        raise SortViolation(f"input term is not well-sorted: {top}")

    def go(u: Term):
        match u:
            case Var(vs, x):
                val = m.var(vs, x)
            case Op(name, inp, binp):
                val = m.op(name, {i: go(c) for i, c in inp},
                           {j: go_abs(a) for j, a in binp})
        s = infer_sort(sig, u).sort
        if m.wls is not None and not m.wls(s, val):
            raise SortViolation(f"model value {val!r} not of sort {s}")
        return val

    def go_abs(a: Abs):
        val = m.abs(a.vs, a.x, go(a.body))
        r = check_abs(sig, a)
        if m.wls_abs is not None and not m.wls_abs(r.vs, r.sort, val):
            raise SortViolation(f"model value {val!r} not of abstraction sort "
                                f"({r.vs}, {r.sort})")
        return val

    return go(t)


# -- semantic interpretation -------------------------------------------------------

@dataclass
class SemDomain:
    """``op(name, inp_vals, binp_vals)`` and ``abs(vs, fn)`` where ``fn``
    maps a domain value for the bound variable to the body's value."""

    op: Callable[[str, dict, dict], Any]
    abs: Callable[[str, Callable[[Any], Any]], Any]


def interpret(d: SemDomain, rho: Mapping[VarRef, Any], t: Term):
    match t:
        case Var(vs, x):
            try:
                return rho[VarRef(vs, x)]
            except KeyError:
                raise ValuationUndefined(VarRef(vs, x)) from None
        case Op(name, inp, binp):
            return d.op(name, {i: interpret(d, rho, c) for i, c in inp},
                        {j: interpret_abs(d, rho, a) for j, a in binp})
    raise TypeError(f"not a term: {t!r}")


def interpret_abs(d: SemDomain, rho: Mapping[VarRef, Any], a: Abs):
    key = VarRef(a.vs, a.x)

    def body(value):
        inner = dict(rho)
        inner[key] = value
        return interpret(d, inner, a.body)

    return d.abs(a.vs, body)


# -- Barendregt-style refreshing ------------------------------------------------------

def refresh_binders(t: Term, avoid=frozenset()) -> Term:
    """Alpha-equivalent copy of ``t`` whose binders are pairwise distinct and
    avoid both ``avoid`` and the free variables of ``t``."""
    forbidden = set(avoid) | free_vars(t)
    used: set[VarRef] = set()

    def go(u: Term, ren: dict) -> Term:
        match u:
            case Var(vs, x):
                return Var(vs, ren.get(VarRef(vs, x), x))
            case Op(name, inp, binp):
                return Op(name, tuple((i, go(c, ren)) for i, c in inp),
                          tuple((j, go_abs(a, ren)) for j, a in binp))
        raise TypeError(f"not a term: {u!r}")

    def go_abs(a: Abs, ren: dict) -> Abs:
        ref = VarRef(a.vs, a.x)
        z = a.x
        if ref in forbidden or ref in used:
            z = fresh_var(a.vs, forbidden | used)
        used.add(VarRef(a.vs, z))
        return Abs(a.vs, z, go(a.body, {**ren, ref: z}))

    return go(t, {})


# -- skeletons ----------------------------------------------------------------------

@dataclass(frozen=True)
class Tree:
    inp: tuple = ()
    binp: tuple = ()


def skel(t: Term) -> Tree:
    match t:
        case Var():
            return Tree()
        case Op(_, inp, binp):
            return Tree(tuple((i, skel(c)) for i, c in inp),
                        tuple((j, skel_abs(a)) for j, a in binp))
    raise TypeError(f"not a term: {t!r}")


def skel_abs(a: Abs) -> Tree:
    # A total map over indices is represented by its single value at 0.
    return Tree(((0, skel(a.body)),), ())


def tree_to_sexp(tr: Tree) -> list:
    return ["branch", [[str(i), tree_to_sexp(c)] for i, c in tr.inp],
            [[str(j), tree_to_sexp(c)] for j, c in tr.binp]]


# -- law harness ------------------------------------------------------------------------

@dataclass
class LawReport:
    checked: dict[str, int] = field(default_factory=dict)
    failed: dict[str, int] = field(default_factory=dict)
    counterexamples: list[tuple[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failed

    def _tick(self, law):
        self.checked[law] = self.checked.get(law, 0) + 1


def rename_binders_randomly(t: Term, rng: random.Random, pool=("x", "y", "z")) -> Term:
    """Random alpha-equivalent variant, built from swapping only."""
    def go(u):
        match u:
            case Var():
                return u
            case Op(name, inp, binp):
                return Op(name, tuple((i, go(c)) for i, c in inp),
                          tuple((j, go_abs(a)) for j, a in binp))

    def go_abs(a: Abs) -> Abs:
        body = go(a.body)
        fv = free_vars(body) - {VarRef(a.vs, a.x)}
        taken = {r.x for r in fv if r.vs == a.vs}
        options = [n for n in pool if n not in taken] or [a.x]
        if rng.random() < 0.3:
            options.append(fresh_var(a.vs, fv | all_vars(body)))
        z = rng.choice(options)
        if z == a.x:
            return Abs(a.vs, a.x, body)
        return Abs(a.vs, z, swap(body, z, a.x, a.vs))

    return go(t)


def _candidate_vars(*terms: Term) -> list[VarRef]:
    refs: set[VarRef] = set()
    for t in terms:
        refs |= all_vars(t)
    return sorted(refs, key=VarRef.key)


def check_model_laws(m: FsModel | SwapModel | FullModel,
                     gen: Callable[[random.Random], Term],
                     n: int = 200, seed: int = 0,
                     max_counterexamples: int = 5) -> LawReport:
    """Sample ``n`` terms from ``gen`` and test that the fold induced by ``m``
    (a) respects alpha, (b) commutes with substitution (swapping for a
    :class:`SwapModel`), and (c) preserves freshness."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    rep = LawReport()

    if isinstance(m, FullModel):
        f = lambda t: fold_full(m, t)  # noqa: E731
        FRESH = lambda vs, x, t, v: m.fresh(vs, x, t, v)  # noqa: E731
    else:
        f = lambda t: fold_fs(m, t)  # noqa: E731
        FRESH = lambda vs, x, t, v: m.fresh(vs, x, v)  # noqa: E731

    def fail(law, witness):
        rep.failed[law] = rep.failed.get(law, 0) + 1
        if len(rep.counterexamples) < max_counterexamples:
            rep.counterexamples.append((law, witness))

    for _ in range(n):
        X = gen(rng)
        Y = gen(rng)
        fX = f(X)

        X2 = rename_binders_randomly(X, rng)
        if rng.random() < 0.5:
            X2 = refresh_binders(X2, set(all_vars(X)))
        rep._tick("alpha")
        if not m.eq(fX, f(X2)):
            fail("alpha", (X, X2))

        cands = _candidate_vars(X, Y) or [VarRef("_", "x")]
        fv = sorted(free_vars(X), key=VarRef.key)
        yref = rng.choice(fv) if fv and rng.random() < 0.8 else rng.choice(cands)
        if isinstance(m, SwapModel):
            z1, z2 = rng.choice(cands), rng.choice(cands)
            rep._tick("swap")
            lhs = f(swap(X, z1.x, z2.x, z1.vs))
            if not m.eq(lhs, m.swap(fX, z1.x, z2.x, z1.vs)):
                fail("swap", (X, z1.x, z2.x, z1.vs))
        else:
            rep._tick("subst")
            lhs = f(subst(X, Y, yref.x, yref.vs))
            if isinstance(m, FullModel):
                rhs = m.subst(X, fX, Y, f(Y), yref.x, yref.vs)
            else:
                rhs = m.subst(fX, f(Y), yref.x, yref.vs)
            if not m.eq(lhs, rhs):
                fail("subst", (X, Y, yref.x, yref.vs))

        probes = set(cands)
        vs_set = {r.vs for r in cands}
        for vs in vs_set:
            probes.add(VarRef(vs, fresh_var(vs, cands)))
        for ref in sorted(probes, key=VarRef.key):
            if fresh(ref.vs, ref.x, X):
                rep._tick("fresh")
                if not FRESH(ref.vs, ref.x, X, fX):
                    fail("fresh", (X, ref))
    return rep
