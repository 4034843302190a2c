"""Raw terms with bindings: variables, operator applications and abstractions.

Terms here are *quasiterms*: binder names are part of the value and equality
is structural.  Alpha-equivalence lives in :mod:`bindings.alpha`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Union

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
GENERATED_RE = re.compile(r"g\$(0|[1-9][0-9]*)\Z")


def is_identifier(s: str) -> bool:
    return bool(IDENT_RE.match(s))


def is_var_name(s: str) -> bool:
    return bool(IDENT_RE.match(s) or GENERATED_RE.match(s))


def generated(k: int) -> str:
    return f"g${k}"


def generated_index(name: str) -> int | None:
    m = GENERATED_RE.match(name)
    return int(m.group(1)) if m else None


def name_key(name: str) -> tuple:
    """Sort key: user names first (lexicographic), then ``g$k`` by ``k``."""
    k = generated_index(name)
    if k is None:
        return (0, 0, name)
    return (1, k, "")


class VarRef(NamedTuple):
    """A variable together with its varsort."""

    vs: str
    x: str

    def key(self) -> tuple:
        return (self.vs, name_key(self.x))


@dataclass(frozen=True, slots=True)
class Var:
    vs: str
    x: str

    @property
    def ref(self) -> VarRef:
        return VarRef(self.vs, self.x)


@dataclass(frozen=True, slots=True)
class Op:
    """Operator application.

    ``inp`` and ``binp`` are finite maps stored as index-ascending tuples of
    ``(index, child)`` pairs so that terms stay hashable.
    """

    op: str
    inp: tuple[tuple[int, "Term"], ...] = ()
    binp: tuple[tuple[int, "Abs"], ...] = ()

    def __post_init__(self):
        for name in ("inp", "binp"):
            pairs = getattr(self, name)
            if isinstance(pairs, Mapping):
                pairs = pairs.items()
            pairs = tuple(sorted(pairs, key=lambda p: p[0]))
            idx = [i for i, _ in pairs]
            if len(set(idx)) != len(idx):
                raise ValueError(f"duplicate index in {name} of {self.op}")
            if any(not isinstance(i, int) or i < 0 for i in idx):
                raise ValueError(f"indices must be naturals in {name} of {self.op}")
            object.__setattr__(self, name, pairs)

    @property
    def inputs(self) -> dict[int, "Term"]:
        return dict(self.inp)

    @property
    def binputs(self) -> dict[int, "Abs"]:
        return dict(self.binp)


@dataclass(frozen=True, slots=True)
class Abs:
    vs: str
    x: str
    body: "Term"

    @property
    def ref(self) -> VarRef:
        return VarRef(self.vs, self.x)


Term = Union[Var, Op]


def op(name: str, inp: Mapping[int, Term] | None = None,
       binp: Mapping[int, Abs] | None = None) -> Op:
    return Op(name, tuple((inp or {}).items()), tuple((binp or {}).items()))


def map_op(t: Op, f, g) -> Op:
    """Rebuild ``t`` applying ``f`` to free inputs and ``g`` to bound ones."""
    return Op(t.op, tuple((i, f(c)) for i, c in t.inp),
              tuple((j, g(a)) for j, a in t.binp))


# -- free variables and freshness ---------------------------------------------

def free_vars(t: Term) -> frozenset[VarRef]:
    match t:
        case Var(vs, x):
            return frozenset({VarRef(vs, x)})
        case Op(_, inp, binp):
            acc: set[VarRef] = set()
            for _, c in inp:
                acc |= free_vars(c)
            for _, a in binp:
                acc |= free_vars_abs(a)
            return frozenset(acc)
    raise TypeError(f"not a term: {t!r}")


def free_vars_abs(a: Abs) -> frozenset[VarRef]:
    return free_vars(a.body) - {VarRef(a.vs, a.x)}


def fresh(vs: str, y: str, t: Term) -> bool:
    match t:
        case Var(xs, x):
            return (vs, y) != (xs, x)
        case Op(_, inp, binp):
            return (all(fresh(vs, y, c) for _, c in inp)
                    and all(fresh_abs(vs, y, a) for _, a in binp))
    raise TypeError(f"not a term: {t!r}")


def fresh_abs(vs: str, y: str, a: Abs) -> bool:
    return (vs, y) == (a.vs, a.x) or fresh(vs, y, a.body)


def all_vars(t: Term | Abs) -> set[VarRef]:
    """Every variable occurring anywhere, binding positions included."""
    out: set[VarRef] = set()

    def go(u):
        match u:
            case Var(vs, x):
                out.add(VarRef(vs, x))
            case Op(_, inp, binp):
                for _, c in inp:
                    go(c)
                for _, a in binp:
                    go(a)
            case Abs(vs, x, body):
                out.add(VarRef(vs, x))
                go(body)

    go(t)
    return out


def binders(t: Term | Abs) -> list[VarRef]:
    """Binding occurrences in pre-order."""
    out: list[VarRef] = []

    def go(u):
        match u:
            case Op(_, inp, binp):
                for _, c in inp:
                    go(c)
                for _, a in binp:
                    go(a)
            case Abs(vs, x, body):
                out.append(VarRef(vs, x))
                go(body)

    go(t)
    return out


# -- swapping -----------------------------------------------------------------

def swap_name(x: str, xs: str, z1: str, z2: str, zs: str) -> str:
    if xs != zs:
        return x
    if x == z1:
        return z2
    if x == z2:
        return z1
    return x


def swap(t: Term, z1: str, z2: str, zs: str) -> Term:
    match t:
        case Var(vs, x):
            return Var(vs, swap_name(x, vs, z1, z2, zs))
        case Op():
            return map_op(t, lambda c: swap(c, z1, z2, zs),
                          lambda a: swap_abs(a, z1, z2, zs))
    raise TypeError(f"not a term: {t!r}")


def swap_abs(a: Abs, z1: str, z2: str, zs: str) -> Abs:
    return Abs(a.vs, swap_name(a.x, a.vs, z1, z2, zs), swap(a.body, z1, z2, zs))


# -- fresh names ----------------------------------------------------------------

def fresh_var(vs: str, avoid: Iterable[VarRef]) -> str:
    """Smallest generated name ``g$k`` with ``(vs, g$k)`` outside ``avoid``."""
    taken = {generated_index(r.x) for r in avoid if r.vs == vs}
    k = 0
    while k in taken:
        k += 1
    return generated(k)


def fresh_vars(vs: str, avoid: Iterable[VarRef], n: int) -> list[str]:
    taken = {generated_index(r.x) for r in avoid if r.vs == vs}
    out, k = [], 0
    while len(out) < n:
        if k not in taken:
            out.append(generated(k))
        k += 1
    return out


def eq_raw(t1: Term | Abs, t2: Term | Abs) -> bool:
    return t1 == t2


def size(t: Term | Abs) -> int:
    match t:
        case Var():
            return 1
        case Op(_, inp, binp):
            return 1 + sum(size(c) for _, c in inp) + sum(size(a) for _, a in binp)
        case Abs(_, _, body):
            return 1 + size(body)
    raise TypeError(f"not a term: {t!r}")
