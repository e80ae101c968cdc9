import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

from linmba.expr import (
    BITWISE_OPS, Binary, BinaryOp, Const, Expr, Unary, UnaryOp, Var, Width, bit_not, is_bitwise, linear_sum
)

def _not_key(key: str) -> str:
    # Only a complement key starts with "~(" and it wraps the whole key.
    if key.startswith("~("):
        return key[2:-1]
    return "~(" + key + ")"

def _binary_key(op: BinaryOp, left: str, right: str) -> str:
    return "(" + left + op.value + right + ")"

def _canonical(e: Expr) -> Tuple[Expr, str]:
    """Canonical form of e together with its key, built in one bottom-up pass."""
    if isinstance(e, Var):
        return e, e.name
    if isinstance(e, Const):
        return e, str(e.value)
    if isinstance(e, Unary):
        child, key = _canonical(e.child)
        if e.op is UnaryOp.BIT_NOT:
            return bit_not(child), _not_key(key)
        return Unary(e.op, child), "-(" + key + ")"
    assert isinstance(e, Binary)
    (left, lkey), (right, rkey) = _canonical(e.left), _canonical(e.right)
    if e.op in BITWISE_OPS and rkey < lkey:
        left, right, lkey, rkey = right, left, rkey, lkey
    return Binary(e.op, left, right), _binary_key(e.op, lkey, rkey)

def canonical(e: Expr) -> Expr:
    """Bitwise-canonical spelling used to recognise like terms: double complements cancel and the operands of &, ^ and
    | are put in a fixed order."""
    return _canonical(e)[0]

def term_key(e: Expr) -> str:
    """Fully parenthesized text of canonical(e), computed without building it. Two bitwise terms are like terms iff
    their keys agree."""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Unary):
        key = term_key(e.child)
        return _not_key(key) if e.op is UnaryOp.BIT_NOT else "-(" + key + ")"
    assert isinstance(e, Binary)
    lkey, rkey = term_key(e.left), term_key(e.right)
    if e.op in BITWISE_OPS and rkey < lkey:
        lkey, rkey = rkey, lkey
    return _binary_key(e.op, lkey, rkey)

class LinearForm:
    """A constant plus integer multiples of bitwise expressions, all modulo 2^n. Terms keep the order and spelling of
    their first appearance; terms whose keys agree are merged."""

    def __init__(self, width: Width):
        self.width = width
        self.constant = 0
        self._terms: Dict[str, List] = {}

    @classmethod
    def of_constant(cls, width: Width, value: int) -> "LinearForm":
        ret = cls(width)
        ret.constant = width.reduce(value)
        return ret

    @classmethod
    def of_term(cls, width: Width, bitwise: Expr, coeff: int = 1, key: Optional[str] = None) -> "LinearForm":
        ret = cls(width)
        ret.add(bitwise, coeff, key)
        return ret

    def add(self, bitwise: Optional[Expr], coeff: int, key: Optional[str] = None) -> None:
        """Add coeff * bitwise; None stands for the constant term. A key already computed for bitwise may be passed
        in."""
        if bitwise is None:
            self.constant = self.width.reduce(self.constant + coeff)
            return
        if key is None:
            key = term_key(bitwise)
        entry = self._terms.get(key)
        if entry is not None:
            entry[1] = self.width.reduce(entry[1] + coeff)
        else:
            self._terms[key] = [bitwise, self.width.reduce(coeff)]

    def extend(self, other: "LinearForm", factor: int = 1) -> None:
        self.add(None, other.constant * factor)
        for key, coeff, bitwise in other.keyed_terms():
            self.add(bitwise, coeff * factor, key)

    def scaled(self, factor: int) -> "LinearForm":
        ret = LinearForm(self.width)
        ret.extend(self, factor)
        return ret

    def coefficient(self, bitwise: Expr) -> int:
        entry = self._terms.get(term_key(bitwise))
        return entry[1] if entry is not None else 0

    def remove(self, bitwise: Expr) -> int:
        """Drop a term, returning its coefficient."""
        entry = self._terms.pop(term_key(bitwise), None)
        return entry[1] if entry is not None else 0

    def keyed_terms(self) -> Iterator[Tuple[str, int, Expr]]:
        for key, (bitwise, coeff) in self._terms.items():
            if coeff != 0:
                yield key, coeff, bitwise

    def terms(self) -> Iterator[Tuple[int, Expr]]:
        """Nonzero (coefficient, bitwise) pairs in order of first appearance."""
        for _, coeff, bitwise in self.keyed_terms():
            yield coeff, bitwise

    @property
    def is_constant(self) -> bool:
        return next(self.terms(), None) is None

    def term_count(self) -> int:
        return sum(1 for _ in self.terms()) + (1 if self.constant != 0 else 0)

    def ordered(self) -> List[Tuple[int, Optional[Expr]]]:
        ret: List[Tuple[int, Optional[Expr]]] = [(self.constant, None)]
        ret.extend(self.terms())
        return ret

    def to_expr(self) -> Expr:
        return linear_sum(self.ordered(), self.width)

class Verdict(Enum):
    LINEAR = "Linear"
    NONLINEAR = "Nonlinear"

@dataclass(frozen=True)
class LinearityReport:
    verdict: Verdict
    normalized: Optional[Expr] = None
    reason: Optional[str] = None
    path: Optional[str] = None  # Slash-separated route from the root to the offending node

    @property
    def is_linear(self) -> bool:
        return self.verdict is Verdict.LINEAR

class _Nonlinear(Exception):
    def __init__(self, path: Tuple[str, ...], reason: str):
        self.path = path
        self.reason = reason

def _path_to_str(path: Tuple[str, ...]) -> str:
    return "/" + "/".join(path)

_Operand = Tuple[Optional[int], Optional[Expr], Optional[str]]

def _as_bitwise(form: LinearForm, path: Tuple[str, ...]) -> _Operand:
    """Interpret a linear form as an operand of a bitwise operator: either a constant or a bitwise expression with its
    key. Only the shapes b and -b-1 (that is, ~b) can be recovered."""
    if form.is_constant:
        return form.constant, None, None
    terms = list(form.keyed_terms())
    if len(terms) == 1:
        key, coeff, bitwise = terms[0]
        if coeff == 1 and form.constant == 0:
            return None, bitwise, key
        if coeff == form.width.mask and form.constant == form.width.mask:
            return None, bit_not(bitwise), _not_key(key)
    raise _Nonlinear(path, "bitwise operator applied to arithmetic that does not reduce to a bitwise expression")

def _fold_bitwise(op: BinaryOp, left: _Operand, right: _Operand, width: Width, path: Tuple[str, ...]) -> LinearForm:
    (lc, lb, lkey), (rc, rb, rkey) = left, right
    if lb is not None and rb is not None:
        assert lkey is not None and rkey is not None
        key = _binary_key(op, lkey, rkey) if lkey <= rkey else _binary_key(op, rkey, lkey)
        return LinearForm.of_term(width, Binary(op, lb, rb), key=key)
    if lb is None and rb is None:
        assert lc is not None and rc is not None
        if op is BinaryOp.AND:
            return LinearForm.of_constant(width, lc & rc)
        if op is BinaryOp.XOR:
            return LinearForm.of_constant(width, lc ^ rc)
        return LinearForm.of_constant(width, lc | rc)

    c = lc if lb is None else rc
    b, bkey = (lb, lkey) if lb is not None else (rb, rkey)
    assert c is not None and b is not None and bkey is not None
    if c not in (0, width.mask):
        raise _Nonlinear(path, "constant %i under a bitwise operator" % c)
    if op is BinaryOp.AND:
        return LinearForm.of_term(width, b, key=bkey) if c == width.mask else LinearForm(width)
    if op is BinaryOp.OR:
        if c == width.mask:
            return LinearForm.of_constant(width, width.mask)
        return LinearForm.of_term(width, b, key=bkey)
    if c == width.mask:
        return LinearForm.of_term(width, bit_not(b), key=_not_key(bkey))
    return LinearForm.of_term(width, b, key=bkey)

def linearize(e: Expr, width: Width, path: Tuple[str, ...] = ()) -> LinearForm:
    """Rewrite an expression into a linear form. Raises _Nonlinear with the offending path."""
    if isinstance(e, Const):
        return LinearForm.of_constant(width, e.value)
    if isinstance(e, Var) or is_bitwise(e):
        return LinearForm.of_term(width, e)
    if isinstance(e, Unary):
        inner = linearize(e.child, width, path + ("child",))
        if e.op is UnaryOp.NEG:
            return inner.scaled(width.mask)
        # ~a = -a - 1
        ret = inner.scaled(width.mask)
        ret.add(None, width.mask)
        return ret
    assert isinstance(e, Binary)
    left = linearize(e.left, width, path + ("left",))
    right = linearize(e.right, width, path + ("right",))
    if e.op is BinaryOp.ADD:
        left.extend(right)
        return left
    if e.op is BinaryOp.SUB:
        left.extend(right, width.mask)
        return left
    if e.op is BinaryOp.MUL:
        if left.is_constant:
            return right.scaled(left.constant)
        if right.is_constant:
            return left.scaled(right.constant)
        raise _Nonlinear(path, "product of two non-constant factors")
    return _fold_bitwise(e.op, _as_bitwise(left, path + ("left",)), _as_bitwise(right, path + ("right",)), width, path)

def normalize_form(e: Expr, width: Width) -> Tuple[LinearityReport, Optional[LinearForm]]:
    """normalize, also returning the linear form behind the normalized expression when there is one."""
    try:
        form = linearize(e, width)
    except _Nonlinear as nl:
        where = _path_to_str(nl.path)
        logging.debug("Expression is not linear at %s: %s" % (where, nl.reason))
        return LinearityReport(Verdict.NONLINEAR, reason="%s at %s" % (nl.reason, where), path=where), None
    return LinearityReport(Verdict.LINEAR, normalized=form.to_expr()), form

def normalize(e: Expr, width: Width) -> LinearityReport:
    """Decide whether e denotes a linear MBA and, if so, return it as a sum of constant multiples of bitwise
    expressions: constants folded, negations and complements over arithmetic rewritten, constant factors
    distributed, like terms merged. The constant term leads; other terms keep their first-appearance order."""
    return normalize_form(e, width)[0]
