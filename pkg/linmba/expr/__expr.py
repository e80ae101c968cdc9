import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

MAX_BITS = 64

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

@dataclass(frozen=True)
class Width:
    """Word width n. All arithmetic on expressions of this width is performed modulo 2^n."""
    bits: int

    def __post_init__(self) -> None:
        if not isinstance(self.bits, int) or not 1 <= self.bits <= MAX_BITS:
            raise ValueError("Word width must be an integer between 1 and %i, got %r" % (MAX_BITS, self.bits))

    @property
    def modulus(self) -> int:
        return 1 << self.bits

    @property
    def mask(self) -> int:
        return (1 << self.bits) - 1

    @property
    def half(self) -> int:
        return 1 << (self.bits - 1)

    def reduce(self, value: int) -> int:
        return value & self.mask

class UnaryOp(Enum):
    BIT_NOT = "~"
    NEG = "-"

class BinaryOp(Enum):
    AND = "&"
    XOR = "^"
    OR = "|"
    ADD = "+"
    SUB = "-"
    MUL = "*"

BITWISE_OPS = frozenset({BinaryOp.AND, BinaryOp.XOR, BinaryOp.OR})
ARITHMETIC_OPS = frozenset({BinaryOp.ADD, BinaryOp.SUB, BinaryOp.MUL})
COMMUTATIVE_OPS = frozenset({BinaryOp.AND, BinaryOp.XOR, BinaryOp.OR, BinaryOp.ADD, BinaryOp.MUL})

# Binding strength, loosest first; C convention.
PRECEDENCE: Dict[BinaryOp, int] = {
    BinaryOp.OR: 1,
    BinaryOp.XOR: 2,
    BinaryOp.AND: 3,
    BinaryOp.ADD: 4,
    BinaryOp.SUB: 4,
    BinaryOp.MUL: 5,
}
UNARY_PRECEDENCE = 6
ATOM_PRECEDENCE = 7

@dataclass(frozen=True)
class Const:
    value: int

@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self) -> None:
        if not IDENTIFIER.match(self.name):
            raise ValueError('Invalid variable name "%s"' % self.name)

@dataclass(frozen=True)
class Unary:
    op: UnaryOp
    child: "Expr"

@dataclass(frozen=True)
class Binary:
    op: BinaryOp
    left: "Expr"
    right: "Expr"

Expr = Union[Const, Var, Unary, Binary]

def precedence(e: Expr) -> int:
    if isinstance(e, Binary):
        return PRECEDENCE[e.op]
    if isinstance(e, Unary):
        return UNARY_PRECEDENCE
    return ATOM_PRECEDENCE

def children(e: Expr) -> Tuple[Expr, ...]:
    if isinstance(e, Unary):
        return (e.child,)
    if isinstance(e, Binary):
        return (e.left, e.right)
    return ()

def variables(e: Expr) -> List[str]:
    """Distinct variable names in order of first occurrence, reading left to right. This order fixes the index i of
    x_i everywhere downstream."""
    seen: Dict[str, None] = {}
    stack: List[Expr] = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            seen.setdefault(node.name, None)
        else:
            stack.extend(reversed(children(node)))
    return list(seen)

def node_count(e: Expr) -> int:
    return 1 + sum(node_count(c) for c in children(e))

def is_bitwise(e: Expr) -> bool:
    """True iff the tree uses only variables and the operators ~, &, ^, |."""
    if isinstance(e, Var):
        return True
    if isinstance(e, Unary):
        return e.op is UnaryOp.BIT_NOT and is_bitwise(e.child)
    if isinstance(e, Binary):
        return e.op in BITWISE_OPS and is_bitwise(e.left) and is_bitwise(e.right)
    return False

def has_arithmetic(e: Expr) -> bool:
    if isinstance(e, Unary):
        return e.op is UnaryOp.NEG or has_arithmetic(e.child)
    if isinstance(e, Binary):
        return e.op in ARITHMETIC_OPS or has_arithmetic(e.left) or has_arithmetic(e.right)
    return False

def substitute(e: Expr, mapping: Dict[str, str]) -> Expr:
    """Rename variables. Names absent from the mapping are kept."""
    if isinstance(e, Var):
        return Var(mapping.get(e.name, e.name))
    if isinstance(e, Unary):
        return Unary(e.op, substitute(e.child, mapping))
    if isinstance(e, Binary):
        return Binary(e.op, substitute(e.left, mapping), substitute(e.right, mapping))
    return e

def bit_not(e: Expr) -> Expr:
    """Bitwise complement that cancels an existing complement instead of stacking another one."""
    if isinstance(e, Unary) and e.op is UnaryOp.BIT_NOT:
        return e.child
    return Unary(UnaryOp.BIT_NOT, e)

def conjunction(names: Sequence[str]) -> Expr:
    assert len(names) > 0
    ret: Expr = Var(names[0])
    for name in names[1:]:
        ret = Binary(BinaryOp.AND, ret, Var(name))
    return ret

def _scaled(magnitude: int, bitwise: Optional[Expr]) -> Expr:
    if bitwise is None:
        return Const(magnitude)
    if magnitude == 1:
        return bitwise
    return Binary(BinaryOp.MUL, Const(magnitude), bitwise)

def linear_sum(terms: Sequence[Tuple[int, Optional[Expr]]], width: Width) -> Expr:
    """Build the sum of coefficient * bitwise terms (None stands for the constant term), in the given order. Zero
    coefficients are skipped. A coefficient c above 2^(n-1) is written as a subtracted term of magnitude 2^n - c; a
    leading one becomes a unary minus."""
    ret: Optional[Expr] = None
    for coeff, bitwise in terms:
        coeff = width.reduce(coeff)
        if coeff == 0:
            continue
        negative = coeff > width.half
        magnitude = width.modulus - coeff if negative else coeff
        if ret is None:
            if not negative:
                ret = _scaled(magnitude, bitwise)
            elif bitwise is None:
                ret = Unary(UnaryOp.NEG, Const(magnitude))
            elif magnitude == 1:
                ret = Unary(UnaryOp.NEG, bitwise)
            else:
                ret = Binary(BinaryOp.MUL, Unary(UnaryOp.NEG, Const(magnitude)), bitwise)
        else:
            op = BinaryOp.SUB if negative else BinaryOp.ADD
            ret = Binary(op, ret, _scaled(magnitude, bitwise))
    if ret is None:
        return Const(0)
    return ret

def summands(e: Expr) -> List[Expr]:
    """The top-level summands of a sum, with subtraction kept on the subtrahend's side of the split."""
    if isinstance(e, Binary) and e.op in (BinaryOp.ADD, BinaryOp.SUB):
        return summands(e.left) + [e.right]
    return [e]

def term_count(e: Expr) -> int:
    """Number of top-level summands; a constant counts as one."""
    return len(summands(e))
