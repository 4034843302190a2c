"""Command-line front end.

Every command reads a signature (``--sig``) and sort-checks its inputs before
doing anything.  Results go to stdout as s-expressions; diagnostics go to
stderr.  Exit status: 0 success or positive verdict, 1 negative verdict,
2 malformed input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import instances
from .alpha import alpha_eq
from .recursion import ValuationUndefined, skel, tree_to_sexp
from .sexp import (ParseError, dumps, parse_env, parse_model, parse_signature,
                   parse_term, print_term, term_from_sexp)
from .signature import Signature, SignatureError, validate_signature
from .sorting import Failure, Sorted, infer_sort
from .subst import psubst, subst
from .term import Term, VarRef, free_vars, fresh, fresh_var, is_var_name, swap


class UsageError(Exception):
    """Malformed input; reported with exit status 2."""


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        try:
            return instances.bundled_text(p.name)
        except (FileNotFoundError, OSError):
            pass
    try:
        return p.read_text("utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from None


def _load_sig(path: str) -> Signature:
    return validate_signature(parse_signature(_read(path)))


def _path_sexp(path) -> list:
    out = ["path"]
    for step in path:
        out.append(step if isinstance(step, str) else [step[0], str(step[1])])
    return out


def fail_sexp(f: Failure) -> str:
    return dumps(["fail", _path_sexp(f.path), f.reason])


def _sorted_term(sig: Signature, path: str, want: str | None = None) -> tuple[Term, str]:
    t = parse_term(_read(path))
    r = infer_sort(sig, t)
    if isinstance(r, Failure):
        raise UsageError(f"{path}: ill-sorted {fail_sexp(r)} {r.detail}".rstrip())
    if want is not None and r.sort != want:
        raise UsageError(f"{path}: has sort {r.sort}, expected {want}")
    return t, r.sort


def _varsort(sig: Signature, vs: str) -> str:
    if vs not in sig.as_sort:
        raise UsageError(f"undeclared varsort {vs}")
    return sig.as_sort[vs]


def _var_name(x: str) -> str:
    if not is_var_name(x):
        raise UsageError(f"invalid variable name {x!r}")
    return x


def cmd_check(a, sig, out):
    t = parse_term(_read(a.term))
    r = infer_sort(sig, t)
    if isinstance(r, Failure):
        print(fail_sexp(r), file=out)
        if r.detail:
            print(f"{r.reason}: {r.detail}", file=sys.stderr)
        return 1
    if a.sort is not None and r.sort != a.sort:
        print(dumps(["fail", ["path"], "SortMismatch"]), file=out)
        print(f"term has sort {r.sort}, expected {a.sort}", file=sys.stderr)
        return 1
    print(dumps(["sorted", r.sort]), file=out)
    return 0


def cmd_alpha(a, sig, out):
    t1, _ = _sorted_term(sig, a.files[0])
    t2, _ = _sorted_term(sig, a.files[1])
    same = alpha_eq(t1, t2)
    print("(alpha-equal)" if same else "(not-alpha-equal)", file=out)
    return 0 if same else 1


def cmd_subst(a, sig, out):
    t, _ = _sorted_term(sig, a.term)
    target = _varsort(sig, a.varsort)
    by, _ = _sorted_term(sig, a.by, target)
    print(print_term(subst(t, by, _var_name(a.var[0]), a.varsort)), file=out)
    return 0


def cmd_psubst(a, sig, out):
    t, _ = _sorted_term(sig, a.term)
    env = parse_env(_read(a.env))
    for key, v in env.items():
        want = _varsort(sig, key.vs)
        r = infer_sort(sig, v)
        if r != Sorted(want):
            raise UsageError(f"env value for {key.vs} {key.x} is not of sort {want}")
    print(print_term(psubst(t, env)), file=out)
    return 0


def cmd_swap(a, sig, out):
    t, _ = _sorted_term(sig, a.term)
    _varsort(sig, a.varsort)
    if len(a.var) != 2:
        raise UsageError("swap needs exactly two --var flags")
    z1, z2 = map(_var_name, a.var)
    print(print_term(swap(t, z1, z2, a.varsort)), file=out)
    return 0


def cmd_fresh(a, sig, out):
    t, _ = _sorted_term(sig, a.term)
    _varsort(sig, a.varsort)
    if a.var:
        ok = fresh(a.varsort, _var_name(a.var[0]), t)
        print(dumps(["fresh", "true" if ok else "false"]), file=out)
        return 0 if ok else 1
    avoid = set(free_vars(t))
    for name in filter(None, (a.avoid or "").split(",")):
        avoid.add(VarRef(a.varsort, _var_name(name.strip())))
    print(dumps(["v", a.varsort, fresh_var(a.varsort, avoid)]), file=out)
    return 0


def cmd_freevars(a, sig, out):
    t, _ = _sorted_term(sig, a.term)
    refs = sorted(free_vars(t), key=VarRef.key)
    print(dumps(["vars", *[[r.vs, r.x] for r in refs]]), file=out)
    return 0


def cmd_skel(a, sig, out):
    t, _ = _sorted_term(sig, a.term)
    print(dumps(tree_to_sexp(skel(t))), file=out)
    return 0


def cmd_beta(a, sig, out):
    t, _ = _sorted_term(sig, a.term)
    try:
        r = instances.beta_step(t, sig)
    except instances.NoRedex:
        print("(no-redex)", file=out)
        return 1
    print(print_term(r), file=out)
    return 0


def cmd_normalize(a, sig, out):
    t, _ = _sorted_term(sig, a.term)
    try:
        r = instances.normalize(t, a.fuel, sig)
    except instances.OutOfFuel as e:
        print(dumps(["out-of-fuel", str(e.fuel)]), file=out)
        return 1
    print(print_term(r), file=out)
    return 0


def cmd_eval_fol(a, sig, out):
    t, _ = _sorted_term(sig, a.term)
    kit = instances.FolKit.from_signature(sig)
    if a.model is None:
        raise UsageError("eval-fol needs --model")
    m = parse_model(_read(a.model))
    rho = {}
    if a.val is not None:
        def value(x):
            if isinstance(x, str):
                return str(x)
            closed = term_from_sexp(x)
            return instances.eval_fol(kit, m, {}, closed)
        rho = parse_env(_read(a.val), value=value)
    v = instances.eval_fol(kit, m, rho, t)
    print(("true" if v else "false") if isinstance(v, bool) else v, file=out)
    return 0


COMMANDS = {
    "check": cmd_check, "alpha": cmd_alpha, "subst": cmd_subst,
    "psubst": cmd_psubst, "swap": cmd_swap, "fresh": cmd_fresh,
    "freevars": cmd_freevars, "skel": cmd_skel, "beta": cmd_beta,
    "normalize": cmd_normalize, "eval-fol": cmd_eval_fol,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bindings", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        c = sub.add_parser(name)
        c.add_argument("--sig", required=True, help="signature file")
        if name == "alpha":
            c.add_argument("files", nargs=2, metavar="TERM")
        else:
            c.add_argument("--term", required=True, help="term file")
        if name == "check":
            c.add_argument("--sort")
        if name in ("subst", "swap", "fresh"):
            c.add_argument("--var", action="append", default=[])
            c.add_argument("--varsort", required=True)
        if name == "subst":
            c.add_argument("--by", required=True, help="replacement term file")
        if name == "psubst":
            c.add_argument("--env", required=True, help="env file")
        if name == "fresh":
            c.add_argument("--avoid", help="comma-separated names to avoid")
        if name == "normalize":
            c.add_argument("--fuel", type=int, default=100)
        if name == "eval-fol":
            c.add_argument("--model")
            c.add_argument("--val", help="env file mapping variables to carrier elements")
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "subst" and len(args.var) != 1:
        print("error: subst needs exactly one --var", file=sys.stderr)
        return 2
    try:
        sig = _load_sig(args.sig)
        return COMMANDS[args.command](args, sig, out)
    except (UsageError, ParseError, SignatureError, ValuationUndefined,
            instances.IllSorted, instances.NonBooleanFormula) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    try:
        code = run()
    except SystemExit as e:  # argparse usage errors
        code = 2 if e.code not in (0, None) else 0
    sys.exit(code)


if __name__ == "__main__":
    main()
