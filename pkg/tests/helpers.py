"""Shared generators for the test suites."""
from __future__ import annotations

import random

from bindings.instances import ccs_sig, fol_kit, lambda_sig
from bindings.recursion import rename_binders_randomly
from bindings.signature import RawOp, RawSignature, validate_signature
from bindings.term import Abs, Op, Term, Var, VarRef, generated
from bindings.testkit import TermGen

LAM = lambda_sig()
FOL = fol_kit()
CCS = ccs_sig()

# Two varsorts whose binders can shadow across sorts; Mix binds a `vb`
# variable inside an `a`-body and a `va` variable inside a `b`-body.
TWO = validate_signature(RawSignature(
    ["a", "b"], [("va", "a"), ("vb", "b")], [
        RawOp("F", "a", [(0, "a"), (1, "b")]),
        RawOp("G", "b", [(0, "b")]),
        RawOp("K", "b"),
        RawOp("LamA", "a", [], [(0, "va", "a")]),
        RawOp("Mix", "a", [(2, "a")], [(0, "vb", "a"), (1, "va", "b")]),
    ]))

SIGS = {"lambda": LAM, "two": TWO, "fol": FOL.sig, "ccs": CCS}


class Gen:
    """Random terms over one signature with tiny name pools."""

    def __init__(self, sig, seed=0, max_depth=5, pool=("x", "y", "z")):
        self.sig = sig
        self.rng = random.Random(seed)
        self.max_depth = max_depth
        self.names = pool
        self.tg = TermGen(sig, {vs: pool for vs in sig.as_sort})
        self.sorts = sorted(self.tg.depths)
        self.varsorts = sorted(sig.as_sort)

    def term(self, sort=None, depth=None) -> Term:
        sort = sort or self.rng.choice(self.sorts)
        if depth is None:
            depth = self.rng.randint(0, self.max_depth)
        return self.tg.term(sort, depth, self.rng)

    def term_for(self, vs: str) -> Term:
        return self.term(self.sig.as_sort[vs])

    def name(self) -> str:
        if self.rng.random() < 0.1:
            return generated(self.rng.randint(0, 2))
        return self.rng.choice(self.names)

    def ref(self) -> VarRef:
        return VarRef(self.rng.choice(self.varsorts), self.name())

    def variant(self, t: Term) -> Term:
        """An alpha-equivalent copy with shuffled binder names."""
        return rename_binders_randomly(t, self.rng, self.names)

    def mutate(self, t: Term) -> Term:
        """Change one variable occurrence or binder name; usually breaks alpha."""
        sites = _count_sites(t)
        target = self.rng.randrange(sites) if sites else -1
        counter = [0]
        new = self.rng.choice(self.names)

        def go(u):
            if isinstance(u, Var):
                hit = counter[0] == target
                counter[0] += 1
                return Var(u.vs, new) if hit else u
            inp = tuple((i, go(c)) for i, c in u.inp)
            out = []
            for j, a in u.binp:
                hit = counter[0] == target
                counter[0] += 1
                out.append((j, Abs(a.vs, new if hit else a.x, go(a.body))))
            return Op(u.op, inp, tuple(out))

        return go(t)

    def pair(self, sort=None):
        """Adversarial pair: alpha-variant, near miss, or independent draw."""
        X = self.term(sort)
        k = self.rng.random()
        if k < 0.4:
            return X, self.variant(X)
        if k < 0.7:
            return X, self.variant(self.mutate(X))
        if k < 0.8:
            return X, self.variant(drop_input(X))
        return X, self.term(sort)


def drop_input(t: Term) -> Term:
    """Remove the last free input of the first operator that has one."""
    if isinstance(t, Var):
        return t
    if t.inp:
        return Op(t.op, t.inp[:-1], t.binp)
    for k, (j, a) in enumerate(t.binp):
        body = drop_input(a.body)
        if body != a.body:
            binp = t.binp[:k] + ((j, Abs(a.vs, a.x, body)),) + t.binp[k + 1:]
            return Op(t.op, t.inp, binp)
    return t


def _count_sites(t) -> int:
    if isinstance(t, Var):
        return 1
    return (sum(_count_sites(c) for _, c in t.inp)
            + sum(1 + _count_sites(a.body) for _, a in t.binp))


def abs_of(t: Term) -> list[Abs]:
    """All abstractions occurring in ``t``."""
    out: list[Abs] = []

    def go(u):
        if isinstance(u, Op):
            for _, c in u.inp:
                go(c)
            for _, a in u.binp:
                out.append(a)
                go(a.body)

    go(t)
    return out


def terms(sig, sort=None, max_depth=5, pool=("x", "y", "z")):
    """Hypothesis strategy: seeds mapped through :class:`Gen`."""
    from hypothesis import strategies as st
    return st.integers(0, 2**32 - 1).map(
        lambda s: Gen(sig, s, max_depth, pool).term(sort))
