"""Many-sorted binding signatures."""
from __future__ import annotations

from dataclasses import dataclass, field

from .term import is_identifier


@dataclass(frozen=True)
class OpDecl:
    result: str
    free: dict[int, str] = field(default_factory=dict)
    bound: dict[int, tuple[str, str]] = field(default_factory=dict)


@dataclass(frozen=True)
class Signature:
    sorts: frozenset[str]
    as_sort: dict[str, str]
    ops: dict[str, OpDecl]

    @property
    def varsorts(self) -> frozenset[str]:
        return frozenset(self.as_sort)

    def to_raw(self) -> "RawSignature":
        return RawSignature(
            sorts=sorted(self.sorts),
            varsorts=sorted(self.as_sort.items()),
            ops=[RawOp(name, d.result, sorted(d.free.items()),
                       [(j, vs, s) for j, (vs, s) in sorted(d.bound.items())])
                 for name, d in sorted(self.ops.items())],
        )


@dataclass
class RawOp:
    name: str
    result: str
    free: list[tuple[int, str]] = field(default_factory=list)
    bound: list[tuple[int, str, str]] = field(default_factory=list)


@dataclass
class RawSignature:
    """Unchecked declarations, in source order, duplicates allowed."""

    sorts: list[str] = field(default_factory=list)
    varsorts: list[tuple[str, str]] = field(default_factory=list)
    ops: list[RawOp] = field(default_factory=list)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


class SignatureError(Exception):
    """Raised with every violation found, not just the first."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(map(str, violations)))

    @property
    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


class UndeclaredIdentifier(KeyError):
    pass


class UndeclaredVarSort(UndeclaredIdentifier):
    pass


def validate_signature(raw: RawSignature | Signature) -> Signature:
    if isinstance(raw, Signature):
        raw = raw.to_raw()
    errs: list[Violation] = []

    def err(kind, msg):
        errs.append(Violation(kind, msg))

    def ident(s, what):
        if not isinstance(s, str) or not is_identifier(s):
            err("InvalidIdentifier", f"{what} {s!r}")

    sorts: set[str] = set()
    for s in raw.sorts:
        ident(s, "sort")
        if s in sorts:
            err("DuplicateDeclaration", f"sort {s}")
        sorts.add(s)

    as_sort: dict[str, str] = {}
    for vs, s in raw.varsorts:
        ident(vs, "varsort")
        if vs in as_sort:
            err("DuplicateDeclaration", f"varsort {vs}")
            continue
        if s not in sorts:
            err("UndeclaredSort", f"varsort {vs} maps to undeclared sort {s}")
        as_sort[vs] = s

    owner: dict[str, str] = {}
    for vs, s in as_sort.items():
        if s in owner:
            err("NonInjectiveAsSort", f"varsorts {owner[s]} and {vs} both map to {s}")
        else:
            owner[s] = vs

    ops: dict[str, OpDecl] = {}
    for o in raw.ops:
        ident(o.name, "opsym")
        if o.name in ops:
            err("DuplicateDeclaration", f"opsym {o.name}")
            continue
        if o.result not in sorts:
            err("UndeclaredSort", f"result of {o.name}: {o.result}")
        free: dict[int, str] = {}
        for i, s in o.free:
            if not isinstance(i, int) or i < 0:
                err("InvalidIndex", f"{o.name} free index {i!r}")
            if i in free:
                err("DuplicateDeclaration", f"{o.name} free index {i}")
            if s not in sorts:
                err("UndeclaredSort", f"{o.name} free {i}: {s}")
            free[i] = s
        bound: dict[int, tuple[str, str]] = {}
        for j, vs, s in o.bound:
            if not isinstance(j, int) or j < 0:
                err("InvalidIndex", f"{o.name} bound index {j!r}")
            if j in bound:
                err("DuplicateDeclaration", f"{o.name} bound index {j}")
            if vs not in as_sort:
                err("UndeclaredVarSort", f"{o.name} bound {j}: {vs}")
            if s not in sorts:
                err("UndeclaredSort", f"{o.name} bound {j}: {s}")
            bound[j] = (vs, s)
        ops[o.name] = OpDecl(o.result, free, bound)

    if errs:
        raise SignatureError(errs)
    return Signature(frozenset(sorts), as_sort, ops)


def is_in_bar(sig: Signature, vs: str, s: str) -> bool:
    if vs not in sig.as_sort:
        raise UndeclaredVarSort(vs)
    if s not in sig.sorts:
        raise UndeclaredIdentifier(f"sort {s}")
    return any(pair == (vs, s) for d in sig.ops.values() for pair in d.bound.values())


def sort_of_var(sig: Signature, vs: str) -> str:
    try:
        return sig.as_sort[vs]
    except KeyError:
        raise UndeclaredVarSort(vs) from None
