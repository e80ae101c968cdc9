import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from linmba.expr import Binary, BinaryOp, COMMUTATIVE_OPS, Expr, Unary, UnaryOp, Var, node_count, render, substitute, \
    variables
from linmba.util.exceptions import LengthMismatchError

SUPPORTED_COUNTS = (1, 2, 3)

# Ranks of the root operator used to break ties between trees of equal size.
_OPERATOR_CLASS: Dict[object, int] = {
    UnaryOp.BIT_NOT: 1,
    BinaryOp.AND: 2,
    BinaryOp.XOR: 3,
    BinaryOp.OR: 4,
}

def placeholder(i: int) -> str:
    """Name of the i-th (1-based) table variable."""
    return "x_%i" % i

def placeholders(t: int) -> List[str]:
    return [placeholder(i) for i in range(1, t + 1)]

@dataclass(frozen=True)
class LookupTable:
    """Canonical minimal bitwise expression for every truth vector of t variables. Entry idx holds the expression whose
    value on the k-th 0/1 input (enumeration order) is bit k of idx."""
    t: int
    entries: Tuple[Expr, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != 1 << (1 << self.t):
            raise ValueError("A table over %i variables needs %i entries" % (self.t, 1 << (1 << self.t)))

def truth_index(truth: Sequence[int]) -> int:
    return sum(1 << k for k, bit in enumerate(truth) if bit)

def lookup(table: LookupTable, truth: Sequence[int]) -> Expr:
    """The stored expression for a 0/1 truth vector of length 2^t."""
    if len(truth) != 1 << table.t:
        raise LengthMismatchError(1 << table.t, len(truth))
    return table.entries[truth_index(truth)]

def lookup_for(table: LookupTable, truth: Sequence[int], names: Sequence[str]) -> Expr:
    """Like lookup, with the placeholders x_1, ..., x_t replaced by the given names."""
    return substitute(lookup(table, truth), {placeholder(i + 1): name for i, name in enumerate(names)})

def _min_index(e: Expr) -> int:
    return min(int(name[2:]) for name in variables(e))

def _order_operands(e: Expr) -> Expr:
    """Put the operand holding the lowest-numbered variable first under every commutative operator."""
    if isinstance(e, Unary):
        return Unary(e.op, _order_operands(e.child))
    if isinstance(e, Binary):
        left, right = _order_operands(e.left), _order_operands(e.right)
        if e.op in COMMUTATIVE_OPS and _min_index(right) < _min_index(left):
            left, right = right, left
        return Binary(e.op, left, right)
    return e

def cost(e: Expr) -> Tuple[int, int, int, int, str]:
    """Total order used to pick a table entry: node count, then variables out of placeholder order, then root operator
    class (variable < ~ < & < ^ < |), then rendered length, then rendered text."""
    indices = [int(name[2:]) for name in variables(e)]
    out_of_order = 0 if indices == sorted(indices) else 1
    text = render(e)
    root = _OPERATOR_CLASS.get(e.op, 0) if isinstance(e, (Unary, Binary)) else 0
    return node_count(e), out_of_order, root, len(text), text

def _truth_of_variable(i: int, t: int) -> int:
    return sum(1 << k for k in range(1 << t) if (k >> (i - 1)) & 1)

def build_lookup_table(t: int) -> LookupTable:
    """Enumerate bitwise trees over x_1..x_t by increasing node count until every truth vector is covered, keeping the
    cheapest tree per vector. Subtrees of a minimal tree are themselves minimal for their own truth vector, so each
    size level only combines the representatives found on smaller levels. The node count of every entry is minimal;
    the remaining tie-breaks of cost() only choose among trees combined from those representatives, so an equally
    small tree with different subtrees may rank better and still not be picked."""
    if t not in SUPPORTED_COUNTS:
        raise ValueError("Lookup tables exist for 1 to 3 variables, not %i" % t)
    logging.info("Building lookup table for %i variables." % t)
    full = (1 << (1 << t)) - 1
    total = full + 1
    best: Dict[int, Expr] = {}
    levels: Dict[int, List[Tuple[int, Expr]]] = {}

    size = 0
    while len(best) < total:
        size += 1
        found: Dict[int, Tuple[Tuple, Expr]] = {}

        def offer(truth: int, candidate: Expr) -> None:
            if truth in best:
                return
            candidate = _order_operands(candidate)
            key = cost(candidate)
            if truth not in found or key < found[truth][0]:
                found[truth] = (key, candidate)

        if size == 1:
            for i in range(1, t + 1):
                offer(_truth_of_variable(i, t), Var(placeholder(i)))
        else:
            for truth, e in levels.get(size - 1, []):
                offer(full ^ truth, Unary(UnaryOp.BIT_NOT, e))
            for left_size in range(1, size - 1):
                right_size = size - 1 - left_size
                for lt, le in levels.get(left_size, []):
                    for rt, re_ in levels.get(right_size, []):
                        offer(lt & rt, Binary(BinaryOp.AND, le, re_))
                        offer(lt ^ rt, Binary(BinaryOp.XOR, le, re_))
                        offer(lt | rt, Binary(BinaryOp.OR, le, re_))

        levels[size] = []
        for truth in sorted(found):
            best[truth] = found[truth][1]
            levels[size].append((truth, found[truth][1]))
        logging.debug("Size %i: %i new truth vectors, %i of %i covered." % (size, len(found), len(best), total))

    return LookupTable(t, tuple(best[idx] for idx in range(total)))
