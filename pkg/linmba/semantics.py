from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple

from cachetools import cached

from linmba.expr import Binary, BinaryOp, Const, Expr, Unary, UnaryOp, Var, Width
from linmba.util.exceptions import CapExceededError, MissingVariableError

DEFAULT_MAX_VARIABLES = 10

Evaluator = Callable[[Mapping[str, int]], int]

@dataclass(frozen=True)
class SignatureVector:
    """The 2^t values of an expression on all 0/1 assignments to its t variables. Index k holds the value on the
    assignment giving x_i the bit (k >> (i - 1)) & 1."""
    width: Width
    t: int
    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != 1 << self.t:
            raise ValueError("Signature of %i variables needs %i entries, got %i" %
                             (self.t, 1 << self.t, len(self.values)))
        if any(not 0 <= v < self.width.modulus for v in self.values):
            raise ValueError("Signature entries must be reduced modulo 2^%i" % self.width.bits)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    @property
    def is_constant(self) -> bool:
        return len(set(self.values)) == 1

def _lookup(name: str) -> Evaluator:
    def ev(env: Mapping[str, int]) -> int:
        try:
            return env[name]
        except KeyError:
            raise MissingVariableError(name)
    return ev

def compile_expr(e: Expr, width: Width) -> Evaluator:
    """Turn an expression into a closure over an assignment. Every intermediate result is masked to n bits."""
    mask = width.mask
    if isinstance(e, Const):
        value = e.value & mask
        return lambda env: value
    if isinstance(e, Var):
        return _lookup(e.name)
    if isinstance(e, Unary):
        child = compile_expr(e.child, width)
        if e.op is UnaryOp.BIT_NOT:
            return lambda env: child(env) ^ mask
        return lambda env: -child(env) & mask
    assert isinstance(e, Binary)
    left = compile_expr(e.left, width)
    right = compile_expr(e.right, width)
    op = e.op
    if op is BinaryOp.AND:
        return lambda env: left(env) & right(env)
    if op is BinaryOp.XOR:
        return lambda env: left(env) ^ right(env)
    if op is BinaryOp.OR:
        return lambda env: left(env) | right(env)
    if op is BinaryOp.ADD:
        return lambda env: (left(env) + right(env)) & mask
    if op is BinaryOp.SUB:
        return lambda env: (left(env) - right(env)) & mask
    return lambda env: (left(env) * right(env)) & mask

def evaluate(e: Expr, assignment: Mapping[str, int], width: Width) -> int:
    """Evaluate with n-bit wraparound. Raises MissingVariableError for an unassigned variable."""
    env: Dict[str, int] = {name: width.reduce(value) for name, value in assignment.items()}
    return compile_expr(e, width)(env)

def enumerate_inputs(t: int, cap: int = DEFAULT_MAX_VARIABLES) -> List[Tuple[int, ...]]:
    """All 0/1 assignments to t variables in binary counting order: (0,...,0), (1,0,...,0), (0,1,0,...), ...,
    (1,...,1)."""
    if t < 0:
        raise ValueError("Variable count must be nonnegative")
    if t > cap:
        raise CapExceededError(t, cap)
    return [tuple((k >> i) & 1 for i in range(t)) for k in range(1 << t)]

def signature_vector(e: Expr, names: Sequence[str], width: Width,
                     cap: int = DEFAULT_MAX_VARIABLES) -> SignatureVector:
    ev = compile_expr(e, width)
    values: List[int] = []
    for point in enumerate_inputs(len(names), cap):
        values.append(ev(dict(zip(names, point))))
    return SignatureVector(width, len(names), tuple(values))

@cached(cache={})
def variable_column(i: int, t: int) -> int:
    """Truth table of x_(i+1) over t variables, as an integer whose bit k is the variable's value on input k."""
    return sum(1 << k for k in range(1 << t) if (k >> i) & 1)

def truth_column(e: Expr, names: Sequence[str]) -> int:
    """Truth table of a bitwise expression as an integer: bit k is its one-bit value on input k. All inputs are
    evaluated at once, one integer operation per node."""
    t = len(names)
    full = (1 << (1 << t)) - 1
    index = {name: i for i, name in enumerate(names)}

    def column(node: Expr) -> int:
        if isinstance(node, Var):
            if node.name not in index:
                raise MissingVariableError(node.name)
            return variable_column(index[node.name], t)
        if isinstance(node, Unary) and node.op is UnaryOp.BIT_NOT:
            return column(node.child) ^ full
        if isinstance(node, Binary) and node.op is BinaryOp.AND:
            return column(node.left) & column(node.right)
        if isinstance(node, Binary) and node.op is BinaryOp.XOR:
            return column(node.left) ^ column(node.right)
        if isinstance(node, Binary) and node.op is BinaryOp.OR:
            return column(node.left) | column(node.right)
        raise ValueError("Truth columns are defined for bitwise expressions only")

    return column(e)

def signature_of_terms(constant: int, terms: Iterable[Tuple[int, Expr]], names: Sequence[str], width: Width,
                       cap: int = DEFAULT_MAX_VARIABLES) -> SignatureVector:
    """Signature of constant + sum of coeff * bitwise, equal to signature_vector of that sum. On a 0/1 input a
    bitwise term has its one-bit value in bit 0 and its value on the all-zero input in every higher bit."""
    t = len(names)
    if t > cap:
        raise CapExceededError(t, cap)
    size = 1 << t
    high = width.mask ^ 1
    values = [constant] * size
    for coeff, bitwise in terms:
        col = truth_column(bitwise, names)
        base = high if col & 1 else 0
        for k in range(size):
            values[k] += coeff * (base | ((col >> k) & 1))
    return SignatureVector(width, t, tuple(width.reduce(v) for v in values))
