from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from linmba.expr import Expr, Width
from linmba.semantics import signature_vector
from linmba.simplify import subset_order

_ONE_BIT = Width(1)

@dataclass(frozen=True)
class TruthMatrix:
    """2^t x s matrix of 0/1 values: column j holds the j-th bitwise expression evaluated on one-bit inputs, in
    enumeration order. A linear combination of the expressions with coefficient vector Y is identically zero modulo
    2^n exactly when A.Y vanishes modulo 2^n. A constant m enters as the column of ~0 (all ones) with coefficient -m."""
    t: int
    columns: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for column in self.columns:
            if len(column) != 1 << self.t:
                raise ValueError("Truth matrix columns over %i variables have %i entries" % (self.t, 1 << self.t))

    @classmethod
    def of_expressions(cls, exprs: Sequence[Expr], names: Sequence[str]) -> "TruthMatrix":
        columns = tuple(signature_vector(e, names, _ONE_BIT).values for e in exprs)
        return cls(len(names), columns)

    @classmethod
    def conjunction_basis(cls, t: int) -> "TruthMatrix":
        """Columns for ~0 and for every conjunction of a nonempty variable subset, in the order solve_basis assigns
        coefficients."""
        rows = range(1 << t)
        columns = [tuple(1 for _ in rows)]
        for mask in subset_order(t):
            columns.append(tuple(1 if k & mask == mask else 0 for k in rows))
        return cls(t, tuple(columns))

    @property
    def shape(self) -> Tuple[int, int]:
        return 1 << self.t, len(self.columns)

    def array(self) -> np.ndarray:
        if not self.columns:
            return np.zeros(self.shape, dtype=object)
        return np.array(self.columns, dtype=object).T

    def apply(self, Y: Sequence[int], width: Width) -> Tuple[int, ...]:
        """A.Y modulo 2^n. Object dtype keeps the products exact before reduction."""
        if len(Y) != len(self.columns):
            raise ValueError("Expected %i coefficients, got %i" % (len(self.columns), len(Y)))
        if not self.columns:
            return tuple(0 for _ in range(1 << self.t))
        product = self.array().dot(np.array([int(y) for y in Y], dtype=object))
        return tuple(width.reduce(int(v)) for v in product)

    def is_null(self, Y: Sequence[int], width: Width) -> bool:
        return not any(self.apply(Y, width))
