"""S-expression reader/printer and the signature, term, env and model formats.

An s-expression is either an atom (``str``) or a ``list`` of s-expressions.
Lists returned by :func:`read` are :class:`SList`, which remember where they
started so that format errors can point at the source.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .signature import RawOp, RawSignature, Signature
from .term import Abs, Op, Term, Var, VarRef, is_identifier, is_var_name

NAT_RE = re.compile(r"(0|[1-9][0-9]*)\Z")
ELEMENT_RE = re.compile(r"[A-Za-z0-9_]+\Z")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.msg, self.line, self.col = msg, line, col
        super().__init__(f"{line}:{col}: {msg}" if line else msg)


class SAtom(str):
    line = col = 0


class SList(list):
    line = col = 0


def _at(node, msg) -> ParseError:
    return ParseError(msg, getattr(node, "line", 0), getattr(node, "col", 0))


def read_all(text: str) -> list:
    stack: list[SList] = [SList()]
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "(":
            lst = SList()
            lst.line, lst.col = line, col
            stack[-1].append(lst)
            stack.append(lst)
        elif c == ")":
            if len(stack) == 1:
                raise ParseError("unexpected ')'", line, col)
            stack.pop()
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                j += 1
            atom = SAtom(text[i:j])
            atom.line, atom.col = line, col
            stack[-1].append(atom)
            col += j - i
            i = j
            continue
        i += 1
        col += 1
    if len(stack) > 1:
        open_ = stack[-1]
        raise ParseError("unbalanced '('", open_.line, open_.col)
    return stack[0]


def read(text: str):
    forms = read_all(text)
    if len(forms) != 1:
        raise ParseError(f"expected exactly one s-expression, found {len(forms)}")
    return forms[0]


def dumps(x) -> str:
    if isinstance(x, str):
        return x
    return "(" + " ".join(dumps(e) for e in x) + ")"


# -- helpers ---------------------------------------------------------------------

def _atom(x, what) -> str:
    if not isinstance(x, str):
        raise _at(x, f"expected {what}, got a list")
    return str(x)


def _list(x, what) -> list:
    if isinstance(x, str):
        raise _at(x, f"expected {what} list, got atom {x!r}")
    return x


def _head(x, tag, arity=None) -> list:
    lst = _list(x, f"({tag} ...)")
    if not lst or lst[0] != tag:
        raise _at(x, f"expected ({tag} ...)")
    if arity is not None and len(lst) != arity:
        raise _at(x, f"({tag} ...) takes {arity - 1} arguments, got {len(lst) - 1}")
    return lst


def _ident(x, what) -> str:
    s = _atom(x, what)
    if not is_identifier(s):
        raise _at(x, f"invalid {what} {s!r}")
    return s


def _name(x) -> str:
    s = _atom(x, "variable name")
    if not is_var_name(s):
        raise _at(x, f"invalid variable name {s!r}")
    return s


def _nat(x) -> int:
    s = _atom(x, "index")
    if not NAT_RE.match(s):
        raise _at(x, f"invalid index {s!r}")
    return int(s)


def _indexed(x, what, value) -> list:
    seen = set()
    out = []
    for entry in _list(x, what):
        e = _list(entry, f"{what} entry")
        if len(e) != 2:
            raise _at(entry, f"{what} entry must be (INDEX VALUE)")
        i = _nat(e[0])
        if i in seen:
            raise _at(e[0], f"duplicate index {i} in {what}")
        seen.add(i)
        out.append((i, value(e[1])))
    return out


# -- terms -------------------------------------------------------------------------

def term_from_sexp(x) -> Term:
    lst = _list(x, "term")
    if not lst:
        raise _at(x, "empty term")
    tag = lst[0]
    if tag == "v":
        _head(x, "v", 3)
        return Var(_ident(lst[1], "varsort"), _name(lst[2]))
    if tag == "op":
        _head(x, "op", 4)
        return Op(_ident(lst[1], "opsym"),
                  tuple(_indexed(lst[2], "free inputs", term_from_sexp)),
                  tuple(_indexed(lst[3], "bound inputs", abs_from_sexp)))
    raise _at(x, f"expected (v ...) or (op ...), got ({tag} ...)")


def abs_from_sexp(x) -> Abs:
    lst = _head(x, "abs", 4)
    return Abs(_ident(lst[1], "varsort"), _name(lst[2]), term_from_sexp(lst[3]))


def term_to_sexp(t: Term) -> list:
    match t:
        case Var(vs, x):
            return ["v", vs, x]
        case Op(name, inp, binp):
            return ["op", name, [[str(i), term_to_sexp(c)] for i, c in inp],
                    [[str(j), abs_to_sexp(a)] for j, a in binp]]
    raise TypeError(f"not a term: {t!r}")


def abs_to_sexp(a: Abs) -> list:
    return ["abs", a.vs, a.x, term_to_sexp(a.body)]


def parse_term(text: str) -> Term:
    return term_from_sexp(read(text))


def print_term(t: Term) -> str:
    return dumps(term_to_sexp(t))


def parse_abs(text: str) -> Abs:
    return abs_from_sexp(read(text))


def print_abs(a: Abs) -> str:
    return dumps(abs_to_sexp(a))


# -- signatures ---------------------------------------------------------------------

def parse_signature(text: str) -> RawSignature:
    root = read(text)
    lst = _head(root, "signature")
    raw = RawSignature()
    for clause in lst[1:]:
        c = _list(clause, "signature clause")
        tag = c[0] if c else None
        if tag == "sorts":
            raw.sorts.extend(_ident(s, "sort") for s in c[1:])
        elif tag == "varsorts":
            for entry in c[1:]:
                e = _list(entry, "varsort entry")
                if len(e) != 2:
                    raise _at(entry, "varsort entry must be (VARSORT SORT)")
                raw.varsorts.append((_ident(e[0], "varsort"), _ident(e[1], "sort")))
        elif tag == "op":
            raw.ops.append(_parse_op(c))
        else:
            raise _at(clause, f"unknown signature clause {tag!r}")
    return raw


def _parse_op(c: list) -> RawOp:
    if len(c) < 3:
        raise _at(c, "op needs a name and a (result SORT) clause")
    op = RawOp(_ident(c[1], "opsym"), "")
    seen = set()
    for clause in c[2:]:
        sub = _list(clause, "op clause")
        tag = sub[0] if sub else None
        if tag in seen:
            raise _at(clause, f"repeated ({tag} ...) in op {op.name}")
        seen.add(tag)
        if tag == "result":
            _head(clause, "result", 2)
            op.result = _ident(sub[1], "sort")
        elif tag in ("free", "bound"):
            idx = set()
            for entry in sub[1:]:
                e = _list(entry, f"{tag} entry")
                want = 2 if tag == "free" else 3
                if len(e) != want:
                    raise _at(entry, f"{tag} entry has {want} fields")
                i = _nat(e[0])
                if i in idx:
                    raise _at(e[0], f"duplicate {tag} index {i} in op {op.name}")
                idx.add(i)
                if tag == "free":
                    op.free.append((i, _ident(e[1], "sort")))
                else:
                    op.bound.append((i, _ident(e[1], "varsort"), _ident(e[2], "sort")))
        else:
            raise _at(clause, f"unknown op clause {tag!r}")
    if "result" not in seen:
        raise _at(c, f"op {op.name} lacks (result SORT)")
    return op


def print_signature(sig: RawSignature | Signature) -> str:
    raw = sig.to_raw() if isinstance(sig, Signature) else sig
    lines = ["(signature",
             "  " + dumps(["sorts", *raw.sorts]),
             "  " + dumps(["varsorts", *[[vs, s] for vs, s in raw.varsorts]])]
    for o in raw.ops:
        lines.append("  " + dumps([
            "op", o.name, ["result", o.result],
            ["free", *[[str(i), s] for i, s in o.free]],
            ["bound", *[[str(j), vs, s] for j, vs, s in o.bound]],
        ]))
    return "\n".join(lines) + ")\n"


# -- environments -------------------------------------------------------------------

def parse_env(text: str, value=term_from_sexp) -> dict:
    """Read ``(env ((VS NAME VALUE) ...))``; ``value`` converts each VALUE."""
    lst = _head(read(text), "env", 2)
    out: dict = {}
    for entry in _list(lst[1], "env bindings"):
        e = _list(entry, "env entry")
        if len(e) != 3:
            raise _at(entry, "env entry must be (VARSORT NAME VALUE)")
        key = VarRef(_ident(e[0], "varsort"), _name(e[1]))
        if key in out:
            raise _at(entry, f"duplicate binding for {key.vs} {key.x}")
        out[key] = value(e[2])
    return out


def print_env(env: dict, value=term_to_sexp) -> str:
    items = sorted(env.items(), key=lambda kv: kv[0].key())
    return dumps(["env", [[k.vs, k.x, value(v)] for k, v in items]])


# -- finite models ---------------------------------------------------------------

@dataclass
class FiniteModel:
    carrier: tuple[str, ...]
    funs: dict[str, dict[tuple[str, ...], str]] = field(default_factory=dict)
    preds: dict[str, set[tuple[str, ...]]] = field(default_factory=dict)


def _element(x) -> str:
    s = _atom(x, "carrier element")
    if not ELEMENT_RE.match(s):
        raise _at(x, f"invalid carrier element {s!r}")
    return s


def parse_model(text: str) -> FiniteModel:
    lst = _head(read(text), "model")
    carrier: list[str] | None = None
    funs: dict = {}
    preds: dict = {}
    for clause in lst[1:]:
        c = _list(clause, "model clause")
        tag = c[0] if c else None
        if tag == "carrier":
            if carrier is not None:
                raise _at(clause, "repeated carrier")
            carrier = [_element(e) for e in c[1:]]
            if len(set(carrier)) != len(carrier):
                raise _at(clause, "duplicate carrier element")
        elif tag == "fun":
            name = _ident(c[1], "function symbol") if len(c) > 1 else None
            if name is None or name in funs:
                raise _at(clause, "fun needs a fresh name")
            table = {}
            for entry in c[2:]:
                e = _list(entry, "fun entry")
                if len(e) != 3 or e[1] != "->":
                    raise _at(entry, "fun entry must be ((ARGS ...) -> RESULT)")
                args = tuple(_element(a) for a in _list(e[0], "argument"))
                if args in table:
                    raise _at(entry, f"duplicate entry for {name}{args}")
                table[args] = _element(e[2])
            funs[name] = table
        elif tag == "pred":
            name = _ident(c[1], "predicate symbol") if len(c) > 1 else None
            if name is None or name in preds:
                raise _at(clause, "pred needs a fresh name")
            preds[name] = {tuple(_element(a) for a in _list(e, "pred tuple"))
                           for e in c[2:]}
        else:
            raise _at(clause, f"unknown model clause {tag!r}")
    if carrier is None:
        raise _at(lst, "model lacks (carrier ...)")
    return FiniteModel(tuple(carrier), funs, preds)


def print_model(m: FiniteModel) -> str:
    lines = ["(model", "  " + dumps(["carrier", *m.carrier])]
    for name, table in sorted(m.funs.items()):
        entries = [[list(args), "->", res] for args, res in sorted(table.items())]
        lines.append("  " + dumps(["fun", name, *entries]))
    for name, rows in sorted(m.preds.items()):
        lines.append("  " + dumps(["pred", name, *[list(r) for r in sorted(rows)]]))
    return "\n".join(lines) + ")\n"
