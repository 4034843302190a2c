from hypothesis import given, settings
from hypothesis import strategies as st
from helpers import LAM, TWO, Gen, terms

from bindings.alpha import alpha_eq, alpha_eq_abs
from bindings.instances import app, lam, var
from bindings.recursion import skel
from bindings.subst import (env_comp, is_fresh_for_env, psubst, psubst_abs, subst,
                            subst_abs, vsubst, vsubst_abs)
from bindings.term import Abs, Var, VarRef, eq_raw
from bindings.testkit import oracle_subst

Y22 = lam("x", app(var("x"), var("y")))


def test_substitution_examples():
    assert eq_raw(subst(Y22, var("z"), "y", "vlam"), lam("x", app(var("x"), var("z"))))
    assert eq_raw(subst(Y22, var("z"), "x", "vlam"), Y22)


def test_capture_is_avoided():
    got = subst_abs(Abs("vlam", "x", var("y")), var("x"), "y", "vlam")
    assert got == Abs("vlam", "g$0", var("x"))
    assert alpha_eq_abs(got, oracle_subst_abs(Abs("vlam", "x", var("y")), var("x"), "y"))


def oracle_subst_abs(a, Y, y):
    return oracle_subst(lam(a.x, a.body), Y, y, "vlam").binp[0][1]


def test_other_varsort_is_untouched():
    t = Abs("va", "x", Var("vb", "x"))
    assert subst_abs(t, Var("vb", "q"), "x", "vb") == Abs("va", "x", Var("vb", "q"))
    assert subst_abs(t, Var("va", "q"), "x", "va") == t


def test_vsubst_examples():
    assert vsubst(var("x"), "z", "x", "vlam") == var("z")
    assert vsubst_abs(Abs("vlam", "y", var("x")), "y", "x", "vlam") == \
        Abs("vlam", "g$0", var("y"))


@given(terms(TWO), st.sampled_from(["va", "vb"]), st.sampled_from(["x", "y", "z"]))
def test_vsubst_identity_and_skeleton(t, xs, x):
    assert alpha_eq(vsubst(t, x, x, xs), t)
    assert skel(vsubst(t, "y", x, xs)) == skel(t)


def test_psubst_examples():
    a = Abs("vlam", "x", var("x"))
    assert alpha_eq_abs(psubst_abs(a, {VarRef("vlam", "x"): var("y")}), a)
    t = Gen(LAM, 3).term()
    assert alpha_eq(psubst(t, {}), t)
    # simultaneous, not sequential
    swapped = psubst(app(var("x"), var("y")),
                     {VarRef("vlam", "x"): var("y"), VarRef("vlam", "y"): var("x")})
    assert swapped == app(var("y"), var("x"))


@settings(max_examples=200)
@given(st.integers(0, 2**32 - 1))
def test_psubst_singleton_matches_subst(seed):
    g = Gen(TWO, seed)
    X = g.term()
    ref = g.ref()
    Y = g.term_for(ref.vs)
    assert alpha_eq(psubst(X, {ref: Y}), subst(X, Y, ref.x, ref.vs))


def test_psubst_keeps_binder_when_fresh_up_to_alpha():
    rho = {VarRef("vlam", "y"): var("z")}
    assert is_fresh_for_env("vlam", "x", rho)
    got = psubst(Y22, rho)
    assert alpha_eq(got, lam("x", app(var("x"), var("z"))))


def test_env_comp_examples():
    Z = app(var("a"), var("b"))
    rho2 = {VarRef("v", "y"): Z}
    assert env_comp({}, rho2) == rho2
    rho = {VarRef("vlam", "x"): var("q")}
    assert env_comp(rho, {}) == rho
    got = env_comp({VarRef("v", "x"): Var("v", "y")}, rho2)
    assert got == {VarRef("v", "x"): Z, VarRef("v", "y"): Z}


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_alpha_congruence(seed):
    g = Gen(TWO, seed, pool=("x", "y"))
    X = g.term()
    ref = g.ref()
    Y = g.term_for(ref.vs)
    X2, Y2 = g.variant(X), g.variant(Y)
    assert alpha_eq(subst(X, Y, ref.x, ref.vs), subst(X2, Y2, ref.x, ref.vs))
