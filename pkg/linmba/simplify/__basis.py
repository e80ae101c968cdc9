import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from linmba.expr import Expr, Width, conjunction, linear_sum
from linmba.semantics import SignatureVector
from linmba.tables import placeholders

def _popcount(mask: int) -> int:
    return bin(mask).count("1")

def subset_order(t: int) -> List[int]:
    """Nonempty variable subsets as bitmasks, by cardinality and then by mask value."""
    return sorted(range(1, 1 << t), key=lambda mask: (_popcount(mask), mask))

@dataclass(frozen=True)
class BasisCombination:
    """A constant plus one coefficient per nonempty subset S of the variables, standing for
    constant + sum of coeffs[S] * (conjunction of the variables in S). Bit i-1 of a mask selects variable x_i, that is
    vars[i-1]. Only nonzero coefficients are stored."""
    width: Width
    vars: Tuple[str, ...]
    constant: int
    coeffs: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        full = (1 << len(self.vars)) - 1
        for mask, coeff in self.coeffs.items():
            if mask <= 0 or mask & ~full:
                raise ValueError("Subset mask %i does not fit %i variables" % (mask, len(self.vars)))
            if coeff == 0:
                raise ValueError("Zero coefficients are not stored")

    @property
    def t(self) -> int:
        return len(self.vars)

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) == 0

    def term_count(self) -> int:
        return len(self.coeffs) + (1 if self.constant != 0 else 0)

    def subset_names(self, mask: int) -> List[str]:
        return [name for i, name in enumerate(self.vars) if (mask >> i) & 1]

    def ordered(self) -> List[Tuple[int, Optional[Expr]]]:
        ret: List[Tuple[int, Optional[Expr]]] = [(self.constant, None)]
        for mask in sorted(self.coeffs, key=lambda m: (_popcount(m), m)):
            ret.append((self.coeffs[mask], conjunction(self.subset_names(mask))))
        return ret

    def to_expr(self) -> Expr:
        return linear_sum(self.ordered(), self.width)

    def signature(self) -> SignatureVector:
        """Rebuild the signature vector by evaluating the combination on every 0/1 input. The conjunction over S is 1
        on input k exactly when S is a subset of k's bits."""
        values = []
        for k in range(1 << self.t):
            total = self.constant
            for mask, coeff in self.coeffs.items():
                if k & mask == mask:
                    total += coeff
            values.append(self.width.reduce(total))
        return SignatureVector(self.width, self.t, tuple(values))

def solve_basis(F: SignatureVector, names: Optional[Sequence[str]] = None) -> BasisCombination:
    """Express a signature vector over the conjunction basis. Ordered by subset size, the basis truth matrix is
    unitriangular: the row of input idx(S) has a one in the column of S and otherwise only in columns of subsets of S.
    Each coefficient is therefore read off directly and subtracted from every superset row; no division is needed."""
    width = F.width
    if names is None:
        names = placeholders(F.t)
    if len(names) != F.t:
        raise ValueError("Got %i names for a signature over %i variables" % (len(names), F.t))
    residual = list(F.values)
    constant = residual[0]
    residual = [width.reduce(v - constant) for v in residual]

    coeffs: Dict[int, int] = {}
    for mask in subset_order(F.t):
        coeff = residual[mask]
        if coeff == 0:
            continue
        coeffs[mask] = coeff
        for k in range(mask, 1 << F.t):
            if k & mask == mask:
                residual[k] = width.reduce(residual[k] - coeff)
    return BasisCombination(width, tuple(names), constant, coeffs)

def _compress(mask: int, kept: Sequence[int]) -> int:
    return sum(1 << j for j, i in enumerate(kept) if (mask >> i) & 1)

def live_positions(c: BasisCombination) -> List[int]:
    """0-based indices of the variables that occur in some stored subset."""
    used = 0
    for mask in c.coeffs:
        used |= mask
    return [i for i in range(c.t) if (used >> i) & 1]

def drop_dead_variables(c: BasisCombination) -> BasisCombination:
    kept = live_positions(c)
    if len(kept) == c.t:
        return c
    logging.debug("Dropping %i of %i variables that no basis term uses." % (c.t - len(kept), c.t))
    coeffs = {_compress(mask, kept): coeff for mask, coeff in c.coeffs.items()}
    return BasisCombination(c.width, tuple(c.vars[i] for i in kept), c.constant, coeffs)

def restrict(F: SignatureVector, kept: Sequence[int]) -> SignatureVector:
    """Subsample a signature at the inputs where every variable outside kept is 0, reindexed over the kept
    variables."""
    values = []
    for k in range(1 << len(kept)):
        source = sum(1 << i for j, i in enumerate(kept) if (k >> j) & 1)
        values.append(F[source])
    return SignatureVector(F.width, len(kept), tuple(values))
