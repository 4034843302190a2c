"""Random well-sorted terms and independent oracles for the law suites."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .signature import Signature
from .term import Abs, Op, Term, Var, generated, generated_index

DEFAULT_POOL = ("x", "y", "z")


class UninhabitedSort(ValueError):
    pass


def min_depths(sig: Signature) -> dict[str, int]:
    """Least height of a finite well-sorted term, per inhabited sort."""
    depth = {s: 0 for s in sig.as_sort.values()}
    changed = True
    while changed:
        changed = False
        for d in sig.ops.values():
            needs = list(d.free.values()) + [s for _, s in d.bound.values()]
            if all(s in depth for s in needs):
                h = 1 + max((depth[s] for s in needs), default=-1)
                if depth.get(d.result, h + 1) > h:
                    depth[d.result] = h
                    changed = True
    return depth


@dataclass
class GenConfig:
    sig: Signature
    sort: str
    max_depth: int = 4
    var_pool: dict[str, tuple[str, ...]] = field(default_factory=dict)
    seed: int = 0

    def pool(self, vs: str) -> tuple[str, ...]:
        return self.var_pool.get(vs) or DEFAULT_POOL


class TermGen:
    """Depth-bounded random generator over one signature.

    Small shared name pools make shadowing and capture frequent.
    """

    def __init__(self, sig: Signature, pools: dict | None = None):
        self.sig = sig
        self.pools = pools or {}
        self.depths = min_depths(sig)
        self.var_of_sort = {s: vs for vs, s in sig.as_sort.items()}
        self.ops_by_sort: dict[str, list[str]] = {}
        for name in sorted(sig.ops):
            self.ops_by_sort.setdefault(sig.ops[name].result, []).append(name)

    def pool(self, vs):
        return self.pools.get(vs) or DEFAULT_POOL

    def term(self, sort: str, depth: int, rng: random.Random) -> Term:
        if sort not in self.depths:
            raise UninhabitedSort(sort)
        if self.depths[sort] > depth:
            depth = self.depths[sort]
        vs = self.var_of_sort.get(sort)
        choices = [n for n in self.ops_by_sort.get(sort, ())
                   if self._op_height(n) <= depth]
        if vs is not None and (depth == 0 or not choices or rng.random() < 0.25):
            return Var(vs, rng.choice(self.pool(vs)))
        if depth == 0 or not choices:
            # nullary-reachable fallback: cheapest operator
            choices = [min(self.ops_by_sort[sort], key=lambda n: (self._op_height(n), n))]
        name = rng.choice(choices)
        d = self.sig.ops[name]
        sub = max(depth - 1, 0)
        inp = tuple((i, self.term(s, sub, rng)) for i, s in sorted(d.free.items()))
        binp = tuple((j, Abs(bvs, rng.choice(self.pool(bvs)), self.term(s, sub, rng)))
                     for j, (bvs, s) in sorted(d.bound.items()))
        return Op(name, inp, binp)

    def _op_height(self, name) -> int:
        d = self.sig.ops[name]
        needs = list(d.free.values()) + [s for _, s in d.bound.values()]
        if any(s not in self.depths for s in needs):
            return 10 ** 9
        return 1 + max((self.depths[s] for s in needs), default=-1)


def gen_term(cfg: GenConfig) -> Term:
    rng = random.Random(cfg.seed)
    return TermGen(cfg.sig, cfg.var_pool).term(cfg.sort, cfg.max_depth, rng)


# -- substitution oracle ---------------------------------------------------------

def _names(t, acc: set):
    if isinstance(t, Var):
        acc.add(t.x)
    elif isinstance(t, Op):
        for _, c in t.inp:
            _names(c, acc)
        for _, a in t.binp:
            acc.add(a.x)
            _names(a.body, acc)


def oracle_subst(X: Term, Y: Term, y: str, ys: str) -> Term:
    """Give every binder of ``X`` a brand-new name, then replace occurrences of
    ``(ys, y)`` textually.  Nothing can be captured after the renaming."""
    used: set[str] = {y}
    _names(X, used)
    _names(Y, used)
    counter = 1 + max((k for k in map(generated_index, used) if k is not None),
                      default=-1)

    def rename(t: Term, env: dict) -> Term:
        nonlocal counter
        if isinstance(t, Var):
            return Var(t.vs, env.get((t.vs, t.x), t.x))
        out_b = []
        for j, a in t.binp:
            new = generated(counter)
            counter += 1
            out_b.append((j, Abs(a.vs, new, rename(a.body, {**env, (a.vs, a.x): new}))))
        return Op(t.op, tuple((i, rename(c, env)) for i, c in t.inp), tuple(out_b))

    def graft(t: Term) -> Term:
        if isinstance(t, Var):
            return Y if (t.vs, t.x) == (ys, y) else t
        return Op(t.op, tuple((i, graft(c)) for i, c in t.inp),
                  tuple((j, Abs(a.vs, a.x, graft(a.body))) for j, a in t.binp))

    return graft(rename(X, {}))
