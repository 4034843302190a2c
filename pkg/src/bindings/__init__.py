"""Terms with bindings over many-sorted binding signatures."""
from .alpha import alpha_eq, alpha_eq_abs, alpha_eq_forall, to_canonical
from .signature import Signature, SignatureError, is_in_bar, sort_of_var, validate_signature
from .sorting import AbsSorted, Failure, Sorted, check_abs, infer_sort, wls
from .subst import env_comp, psubst, subst, subst_abs, vsubst
from .term import (Abs, Op, Var, VarRef, eq_raw, free_vars, free_vars_abs, fresh,
                   fresh_abs, fresh_var, op, swap, swap_abs)

__all__ = [
    "Abs", "AbsSorted", "Failure", "Op", "Signature", "SignatureError", "Sorted",
    "Var", "VarRef", "alpha_eq", "alpha_eq_abs", "alpha_eq_forall", "check_abs",
    "env_comp", "eq_raw", "free_vars", "free_vars_abs", "fresh", "fresh_abs",
    "fresh_var", "infer_sort", "is_in_bar", "op", "psubst", "sort_of_var", "subst",
    "subst_abs", "swap", "swap_abs", "to_canonical", "validate_signature",
    "vsubst", "wls",
]
