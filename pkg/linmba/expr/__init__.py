from linmba.expr.__expr import (
    ARITHMETIC_OPS, BITWISE_OPS, COMMUTATIVE_OPS, MAX_BITS, Binary, BinaryOp, Const, Expr, Unary, UnaryOp, Var, Width,
    bit_not, children, conjunction, has_arithmetic, is_bitwise, linear_sum, node_count, precedence, substitute,
    summands, term_count, variables
)
from linmba.expr.__parse import parse, tokenize
from linmba.expr.__render import render
