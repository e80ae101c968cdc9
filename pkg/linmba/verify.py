import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from linmba.expr import Binary, BinaryOp, Const, Expr, Unary, UnaryOp, Var, Width, variables
from linmba.linearity import normalize
from linmba.semantics import DEFAULT_MAX_VARIABLES, compile_expr, enumerate_inputs, signature_vector
from linmba.util.exceptions import BudgetExceededError, NotLinearError

DEFAULT_BUDGET = 1 << 24
DEFAULT_SAMPLES = 1000

# Assignments evaluated per numpy batch in exhaustive mode.
CHUNK = 1 << 16

class VerdictKind(Enum):
    PROVEN_LINEAR = "ProvenLinear"
    PROVEN_EXHAUSTIVE = "ProvenExhaustive"
    PROBABLY_SAME = "ProbablySame"
    DIFFERENT = "Different"

@dataclass(frozen=True)
class EquivalenceVerdict:
    kind: VerdictKind
    samples: Optional[int] = None
    counterexample: Optional[Dict[str, int]] = None
    values: Optional[Tuple[int, int]] = None  # e1 and e2 at the counterexample

    def __post_init__(self) -> None:
        if self.kind is VerdictKind.DIFFERENT and self.counterexample is None:
            raise ValueError("A Different verdict needs a counterexample")

    @property
    def equivalent(self) -> bool:
        return self.kind is not VerdictKind.DIFFERENT

    def describe(self) -> str:
        if self.kind is VerdictKind.DIFFERENT:
            assert self.counterexample is not None and self.values is not None
            where = ", ".join("%s=%i" % (k, v) for k, v in self.counterexample.items())
            return "%s at {%s}: %i vs %i" % (self.kind.value, where, self.values[0], self.values[1])
        if self.kind is VerdictKind.PROBABLY_SAME:
            return "%s (%i samples)" % (self.kind.value, self.samples)
        return self.kind.value

def union_variables(e1: Expr, e2: Expr) -> List[str]:
    ret = variables(e1)
    ret.extend(name for name in variables(e2) if name not in ret)
    return ret

def _different(e1: Expr, e2: Expr, assignment: Dict[str, int], width: Width,
               samples: Optional[int] = None) -> EquivalenceVerdict:
    ev1, ev2 = compile_expr(e1, width), compile_expr(e2, width)
    return EquivalenceVerdict(VerdictKind.DIFFERENT, samples, assignment, (ev1(assignment), ev2(assignment)))

def equivalent_linear(e1: Expr, e2: Expr, width: Width, cap: int = DEFAULT_MAX_VARIABLES) -> EquivalenceVerdict:
    """Decide equivalence of two linear MBAs by comparing their values on all 0/1 inputs. For linear expressions this
    is a proof: agreeing there means agreeing everywhere."""
    for e in (e1, e2):
        report = normalize(e, width)
        if not report.is_linear:
            raise NotLinearError(report)
    names = union_variables(e1, e2)
    f1 = signature_vector(e1, names, width, cap)
    f2 = signature_vector(e2, names, width, cap)
    for k, (v1, v2) in enumerate(zip(f1.values, f2.values)):
        if v1 != v2:
            assignment = {name: (k >> i) & 1 for i, name in enumerate(names)}
            return EquivalenceVerdict(VerdictKind.DIFFERENT, None, assignment, (v1, v2))
    return EquivalenceVerdict(VerdictKind.PROVEN_LINEAR)

def _vectorize(e: Expr, env: Dict[str, np.ndarray], width: Width) -> np.ndarray:
    """Evaluate over arrays of uint64 words; numpy wraps modulo 2^64 and the mask handles narrower widths."""
    mask = np.uint64(width.mask)
    size = len(next(iter(env.values()))) if env else 1
    if isinstance(e, Const):
        return np.full(size, e.value & width.mask, dtype=np.uint64)
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Unary):
        child = _vectorize(e.child, env, width)
        if e.op is UnaryOp.BIT_NOT:
            return child ^ mask
        return (np.uint64(0) - child) & mask
    assert isinstance(e, Binary)
    left = _vectorize(e.left, env, width)
    right = _vectorize(e.right, env, width)
    if e.op is BinaryOp.AND:
        return left & right
    if e.op is BinaryOp.XOR:
        return left ^ right
    if e.op is BinaryOp.OR:
        return left | right
    if e.op is BinaryOp.ADD:
        return (left + right) & mask
    if e.op is BinaryOp.SUB:
        return (left - right) & mask
    return (left * right) & mask

def equivalent_exhaustive(e1: Expr, e2: Expr, width: Width, budget: int = DEFAULT_BUDGET) -> EquivalenceVerdict:
    """Compare on every n-bit assignment. Raises BudgetExceededError when there are more than budget of them."""
    names = union_variables(e1, e2)
    required = 1 << (width.bits * len(names))
    if required > budget:
        raise BudgetExceededError(required, budget)
    logging.debug("Exhaustive check over %i assignments." % required)
    mask = np.uint64(width.mask)
    with np.errstate(over="ignore"):
        for start in range(0, required, CHUNK):
            stop = min(start + CHUNK, required)
            k = np.arange(start, stop, dtype=np.uint64)
            env = {name: (k >> np.uint64(i * width.bits)) & mask for i, name in enumerate(names)}
            v1 = _vectorize(e1, env, width)
            v2 = _vectorize(e2, env, width)
            mismatch = np.nonzero(v1 != v2)[0]
            if len(mismatch) > 0:
                index = start + int(mismatch[0])
                assignment = {name: (index >> (i * width.bits)) & width.mask for i, name in enumerate(names)}
                return _different(e1, e2, assignment, width)
    return EquivalenceVerdict(VerdictKind.PROVEN_EXHAUSTIVE, samples=required)

def equivalent_sampled(e1: Expr, e2: Expr, width: Width, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                       cap: int = DEFAULT_MAX_VARIABLES) -> EquivalenceVerdict:
    """Compare on all 0/1 corner assignments and on `samples` uniformly random ones. The corners are skipped when
    there are more than cap variables."""
    if samples < 1:
        raise ValueError("At least one sample is required")
    names = union_variables(e1, e2)
    ev1, ev2 = compile_expr(e1, width), compile_expr(e2, width)
    rng = random.Random(seed)

    points: List[Sequence[int]] = []
    if len(names) <= cap:
        points.extend(enumerate_inputs(len(names), cap))
    else:
        logging.debug("Skipping corner assignments of %i variables (cap %i); random samples only." % (len(names), cap))
    points.extend(tuple(rng.getrandbits(width.bits) for _ in names) for _ in range(samples))
    for point in points:
        assignment = dict(zip(names, point))
        v1, v2 = ev1(assignment), ev2(assignment)
        if v1 != v2:
            return EquivalenceVerdict(VerdictKind.DIFFERENT, len(points), assignment, (v1, v2))
    return EquivalenceVerdict(VerdictKind.PROBABLY_SAME, samples=len(points))
