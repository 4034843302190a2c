"""Worked instantiations: lambda-calculus, first-order logic, finite CCS."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from importlib import resources
from typing import Any, Mapping

from .recursion import SemDomain, interpret
from .sexp import FiniteModel, parse_model, parse_signature
from .signature import OpDecl, RawOp, RawSignature, Signature, validate_signature
from .sorting import Failure, Sorted, infer_sort
from .subst import subst
from .term import Abs, Op, Term, Var, VarRef, op


class IllSorted(ValueError):
    pass


class NoRedex(Exception):
    pass


class OutOfFuel(Exception):
    def __init__(self, term: Term, fuel: int):
        self.term, self.fuel = term, fuel
        super().__init__(f"no normal form within {fuel} steps")


class NonBooleanFormula(TypeError):
    pass


def bundled_text(name: str) -> str:
    return resources.files("bindings").joinpath("data", name).read_text("utf-8")


@cache
def bundled_signature(name: str) -> Signature:
    return validate_signature(parse_signature(bundled_text(name)))


# -- lambda-calculus ---------------------------------------------------------------

LAM, VLAM = "lam", "vlam"


def lambda_sig() -> Signature:
    return bundled_signature("lambda.sig")


def var(x: str) -> Var:
    return Var(VLAM, x)


def app(t1: Term, t2: Term) -> Op:
    return op("App", {0: t1, 1: t2})


def lam(x: str, body: Term) -> Op:
    return op("Lam", binp={0: Abs(VLAM, x, body)})


def apps(*ts: Term) -> Term:
    out = ts[0]
    for t in ts[1:]:
        out = app(out, t)
    return out


def church(n: int) -> Term:
    body: Term = var("x")
    for _ in range(n):
        body = app(var("f"), body)
    return lam("f", lam("x", body))


PLUS = lam("m", lam("n", lam("f", lam("x", apps(
    var("m"), var("f"), apps(var("n"), var("f"), var("x")))))))

_SELF_APP = lam("x", app(var("x"), var("x")))
OMEGA = app(_SELF_APP, _SELF_APP)


def _require_lam(t: Term, sig: Signature | None):
    r = infer_sort(sig or lambda_sig(), t)
    if r != Sorted(LAM):
        raise IllSorted(f"not a lambda-term: {r}")


def _step(t: Term) -> Term | None:
    if isinstance(t, Var):
        return None
    if t.op == "App":
        f, a = t.inputs[0], t.inputs[1]
        if isinstance(f, Op) and f.op == "Lam":
            ab = f.binputs[0]
            return subst(ab.body, a, ab.x, ab.vs)
        r = _step(f)
        if r is not None:
            return app(r, a)
        r = _step(a)
        return None if r is None else app(f, r)
    if t.op == "Lam":
        ab = t.binputs[0]
        r = _step(ab.body)
        return None if r is None else op("Lam", binp={0: Abs(ab.vs, ab.x, r)})
    raise IllSorted(f"unexpected operator {t.op}")


def beta_step(t: Term, sig: Signature | None = None) -> Term:
    """One leftmost-outermost beta step; raises :class:`NoRedex` on normal forms.

    ``sig`` defaults to the bundled lambda signature and must declare the
    same ``App``/``Lam`` operators.
    """
    _require_lam(t, sig)
    r = _step(t)
    if r is None:
        raise NoRedex()
    return r


def normalize(t: Term, fuel: int, sig: Signature | None = None) -> Term:
    """Iterate :func:`beta_step` at most ``fuel`` times."""
    _require_lam(t, sig)
    for _ in range(fuel):
        r = _step(t)
        if r is None:
            return t
        t = r
    if _step(t) is None:
        return t
    raise OutOfFuel(t, fuel)


# -- first-order logic ---------------------------------------------------------------

TRM, FML, VTRM = "trm", "fml", "vtrm"
CONNECTIVES = {"And", "Not", "All"}


@dataclass(frozen=True)
class FolKit:
    sig: Signature
    functions: dict[str, int]
    predicates: dict[str, int]

    @classmethod
    def from_signature(cls, sig: Signature) -> "FolKit":
        funs, preds = {}, {}
        for name, d in sig.ops.items():
            if name in CONNECTIVES:
                continue
            (funs if d.result == TRM else preds)[name] = len(d.free)
        return cls(sig, funs, preds)

    @classmethod
    def build(cls, functions: Mapping[str, int], predicates: Mapping[str, int]) -> "FolKit":
        raw = RawSignature([TRM, FML], [(VTRM, TRM)], [
            RawOp("And", FML, [(0, FML), (1, FML)]),
            RawOp("Not", FML, [(0, FML)]),
            RawOp("All", FML, [], [(0, VTRM, FML)]),
        ])
        for name, n in functions.items():
            raw.ops.append(RawOp(name, TRM, [(i, TRM) for i in range(n)]))
        for name, n in predicates.items():
            raw.ops.append(RawOp(name, FML, [(i, TRM) for i in range(n)]))
        return cls.from_signature(validate_signature(raw))


def fol_kit() -> FolKit:
    return FolKit.from_signature(bundled_signature("fol.sig"))


def fol_var(x: str) -> Var:
    return Var(VTRM, x)


def forall(x: str, body: Term) -> Op:
    return op("All", binp={0: Abs(VTRM, x, body)})


def conj(a: Term, b: Term) -> Op:
    return op("And", {0: a, 1: b})


def neg(a: Term) -> Op:
    return op("Not", {0: a})


def atom(name: str, *args: Term) -> Op:
    return op(name, dict(enumerate(args)))


def fol_domain(kit: FolKit, m: FiniteModel) -> SemDomain:
    """Values are carrier elements (``str``) or truth values (``bool``)."""

    def need_bool(v):
        if not isinstance(v, bool):
            raise NonBooleanFormula(f"expected a truth value, got {v!r}")
        return v

    def need_elem(v):
        if isinstance(v, bool) or v not in m.carrier:
            raise IllSorted(f"expected a carrier element, got {v!r}")
        return v

    def op_(name, inp, binp):
        args = tuple(need_elem(inp[i]) for i in sorted(inp)) if name not in CONNECTIVES else ()
        if name == "And":
            left, right = need_bool(inp[0]), need_bool(inp[1])
            return left and right
        if name == "Not":
            return not need_bool(inp[0])
        if name == "All":
            fn = binp[0]
            return all(need_bool(fn(c)) for c in m.carrier)
        if name in kit.functions:
            try:
                return m.funs[name][args]
            except KeyError:
                raise IllSorted(f"model has no value for {name}{args}") from None
        if name in kit.predicates:
            return args in m.preds.get(name, set())
        raise IllSorted(f"unknown symbol {name}")

    return SemDomain(op=op_, abs=lambda vs, fn: fn)


def eval_fol(kit: FolKit, m: FiniteModel, rho: Mapping[VarRef, Any], t: Term):
    r = infer_sort(kit.sig, t)
    if isinstance(r, Failure) or r.sort not in (TRM, FML):
        raise IllSorted(f"not a FOL term or formula: {r}")
    for key, v in rho.items():
        if key.vs == VTRM and v not in m.carrier:
            raise IllSorted(f"valuation sends {key.x} outside the carrier: {v!r}")
    return interpret(fol_domain(kit, m), rho, t)


def bundled_model(name: str) -> FiniteModel:
    return parse_model(bundled_text(name))


# -- CCS -------------------------------------------------------------------------------

EXP, PROC, VAREXP = "exp", "proc", "varexp"


def sum_name(indices) -> str:
    idx = sorted(indices)
    return "Sum" + "".join(f"_{i}" for i in idx)


@dataclass(frozen=True)
class CcsKit:
    sig: Signature
    channels: tuple[str, ...]

    @classmethod
    def build(cls, channels=("a", "c"), sums=((), (0, 1), (0, 1, 2))) -> "CcsKit":
        ops = {
            "Zero": OpDecl(EXP),
            "Plus": OpDecl(EXP, {0: EXP, 1: EXP}),
        }
        for ch in channels:
            ops[f"Inp_{ch}"] = OpDecl(PROC, {}, {0: (VAREXP, PROC)})
            ops[f"Out_{ch}"] = OpDecl(PROC, {0: EXP, 1: PROC})
        for idx in sums:
            ops[sum_name(idx)] = OpDecl(PROC, {i: PROC for i in idx})
        sig = validate_signature(Signature(frozenset({EXP, PROC}), {VAREXP: EXP}, ops))
        return cls(sig, tuple(channels))


def ccs_sig() -> Signature:
    return bundled_signature("ccs.sig")
