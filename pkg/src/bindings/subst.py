"""Capture-avoiding substitution: unary, variable-for-variable, and parallel."""
from __future__ import annotations

from typing import Mapping

from .term import Abs, Op, Term, Var, VarRef, free_vars, fresh, fresh_var, map_op

Env = Mapping[VarRef, Term]


def subst(X: Term, Y: Term, y: str, ys: str) -> Term:
    """Replace the free occurrences of ``(ys, y)`` in ``X`` by ``Y``."""
    fv_y = free_vars(Y)
    target = VarRef(ys, y)

    def go(t: Term) -> Term:
        match t:
            case Var(vs, x):
                return Y if (vs, x) == target else t
            case Op():
                return map_op(t, go, go_abs)
        raise TypeError(f"not a term: {t!r}")

    def go_abs(a: Abs) -> Abs:
        if a.ref == target:
            return a
        if a.ref not in fv_y:
            return Abs(a.vs, a.x, go(a.body))
        z = fresh_var(a.vs, free_vars(a.body) | fv_y | {target, a.ref})
        return Abs(a.vs, z, go(vsubst(a.body, z, a.x, a.vs)))

    return go(X)


def subst_abs(A: Abs, Y: Term, y: str, ys: str) -> Abs:
    # Wrap in a throwaway operator so the binder logic lives in one place.
    return subst(Op("_", (), ((0, A),)), Y, y, ys).binp[0][1]


def vsubst(X: Term, z: str, x: str, xs: str) -> Term:
    """Rename free ``(xs, x)`` to ``(xs, z)``."""
    return subst(X, Var(xs, z), x, xs)


def vsubst_abs(A: Abs, z: str, x: str, xs: str) -> Abs:
    return subst_abs(A, Var(xs, z), x, xs)


def psubst(X: Term, rho: Env) -> Term:
    """Parallel substitution.  Every binder is renamed on the way down."""
    avoid = set(rho)
    for v in rho.values():
        avoid |= free_vars(v)
    return _psubst(X, dict(rho), avoid)


def psubst_abs(A: Abs, rho: Env) -> Abs:
    return psubst(Op("_", (), ((0, A),)), rho).binp[0][1]


def _psubst(t: Term, rho: dict, avoid: set) -> Term:
    match t:
        case Var(vs, x):
            return rho.get(VarRef(vs, x), t)
        case Op():
            return map_op(t, lambda c: _psubst(c, rho, avoid),
                          lambda a: _psubst_abs(a, rho, avoid))
    raise TypeError(f"not a term: {t!r}")


def _psubst_abs(a: Abs, rho: dict, avoid: set) -> Abs:
    z = fresh_var(a.vs, avoid | free_vars(a.body))
    inner = dict(rho)
    inner[a.ref] = Var(a.vs, z)
    return Abs(a.vs, z, _psubst(a.body, inner, avoid | {a.ref, VarRef(a.vs, z)}))


def env_comp(rho: Env, rho2: Env) -> dict[VarRef, Term]:
    """Monadic composition: substitute with ``rho`` first, then ``rho2``."""
    out = dict(rho2)
    for k, v in rho.items():
        out[k] = psubst(v, rho2)
    return out


def is_fresh_for_env(vs: str, x: str, rho: Env) -> bool:
    return all(fresh(vs, x, v) for v in rho.values())
