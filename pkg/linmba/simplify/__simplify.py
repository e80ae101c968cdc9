import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from linmba.expr import Expr, Width, render, variables
from linmba.linearity import LinearForm, linearize, normalize_form
from linmba.semantics import DEFAULT_MAX_VARIABLES, SignatureVector, signature_of_terms, signature_vector
from linmba.simplify.__basis import BasisCombination, drop_dead_variables, live_positions, restrict, solve_basis
from linmba.simplify.__refine import refine_with_case
from linmba.tables import SUPPORTED_COUNTS, TableRegistry
from linmba.util.exceptions import NotLinearError

# Passes spent bringing the output's variable order in line with the order used to compute it.
MAX_REORDER_PASSES = 4

@dataclass(frozen=True)
class SimplifyResult:
    """Everything the pipeline computed for one input.

    linear_checked is False only when the linearity gate was bypassed for an input it rejects. The result is then
    only known to agree with the input on 0/1 inputs."""
    expr: Expr
    signature: SignatureVector
    basis: BasisCombination
    reduced: BasisCombination
    refinement_case: Optional[int]
    linear_checked: bool = True

class _Pass(NamedTuple):
    signature: SignatureVector
    basis: BasisCombination
    reduced: BasisCombination
    case: Optional[int]
    expr: Expr

def _signature(e: Expr, form: Optional[LinearForm], names: Sequence[str], width: Width, cap: int) -> SignatureVector:
    if form is None:
        return signature_vector(e, names, width, cap)
    return signature_of_terms(form.constant, form.terms(), names, width, cap)

def _run(e: Expr, form: Optional[LinearForm], width: Width, cap: int, registry: Optional[TableRegistry]) -> _Pass:
    names = variables(e)
    F = _signature(e, form, names, width, cap)
    logging.debug("Signature over %s: %s" % (names, F.values))
    basis = solve_basis(F, names)
    reduced = drop_dead_variables(basis)

    if reduced.t == 0 or reduced.t in SUPPORTED_COUNTS:
        found = refine_with_case(restrict(F, live_positions(basis)), reduced.vars, registry, reduced.term_count())
        if found is not None:
            return _Pass(F, basis, reduced, found.case, found.expr)
    return _Pass(F, basis, reduced, None, reduced.to_expr())

def analyze(e: Expr, width: Width, allow_nonlinear: bool = False, cap: int = DEFAULT_MAX_VARIABLES,
            registry: Optional[TableRegistry] = None) -> SimplifyResult:
    report, form = normalize_form(e, width)
    if not report.is_linear:
        if not allow_nonlinear:
            raise NotLinearError(report)
        logging.warning("Simplifying a nonlinear expression; the result is only checked on 0/1 inputs (%s)."
                        % report.reason)

    first = _run(e, form, width, cap, registry)
    current = first
    # Variable indices follow first occurrence, so an output that mentions its variables in another order can
    # simplify to a different spelling. Re-running until the order is stable makes simplify idempotent.
    for _ in range(MAX_REORDER_PASSES):
        if variables(current.expr) == list(current.reduced.vars):
            break
        again = _run(current.expr, linearize(current.expr, width), width, cap, registry)
        if render(again.expr) == render(current.expr):
            break
        current = again
    return SimplifyResult(current.expr, first.signature, first.basis, first.reduced, current.case, report.is_linear)

def simplify(e: Expr, width: Width, allow_nonlinear: bool = False, cap: int = DEFAULT_MAX_VARIABLES,
             registry: Optional[TableRegistry] = None) -> Expr:
    """Simplest equivalent linear MBA found for e. Raises NotLinearError unless allow_nonlinear is set, and
    CapExceededError when e has more variables than cap."""
    return analyze(e, width, allow_nonlinear, cap, registry).expr
