import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from linmba.expr import Expr, Width, bit_not, linear_sum
from linmba.semantics import SignatureVector
from linmba.simplify.__basis import solve_basis
from linmba.tables import SUPPORTED_COUNTS, TableRegistry, default_registry, lookup_for, placeholders

class _Term(NamedTuple):
    coeff: int
    truth: Tuple[int, ...]

@dataclass(frozen=True)
class Refinement:
    case: int
    expr: Expr
    term_count: int

def _unique(values: Sequence[int]) -> List[int]:
    """Distinct values in order of first appearance."""
    return list(dict.fromkeys(values))

def _ones_where(values: Sequence[int], accepted: Sequence[int]) -> Tuple[int, ...]:
    return tuple(1 if v in accepted else 0 for v in values)

def _truth_key(truth: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    """Order terms by the number of inputs they are true on, then by where."""
    return sum(truth), tuple(k for k, bit in enumerate(truth) if bit)

class _Refiner:
    def __init__(self, F: SignatureVector, names: Sequence[str], registry: TableRegistry):
        self.F = F
        self.width: Width = F.width
        self.names = names
        self.registry = registry

    def bitwise(self, truth: Tuple[int, ...]) -> Expr:
        return lookup_for(self.registry.table(self.F.t), truth, self.names)

    def combine(self, constant: int, terms: Sequence[_Term]) -> Tuple[Expr, int]:
        ordered = sorted(terms, key=lambda term: _truth_key(term.truth))
        pairs: List[Tuple[int, Optional[Expr]]] = [(constant, None)]
        pairs.extend((term.coeff, self.bitwise(term.truth)) for term in ordered)
        count = sum(1 for coeff, _ in pairs if self.width.reduce(coeff) != 0)
        return linear_sum(pairs, self.width), count

    def split(self, values: Sequence[int], nonzero: List[int]) -> Optional[Tuple[List[_Term], int]]:
        """Cases 5 to 7 on a vector whose first entry is 0. Returns the terms and the case number that produced
        them."""
        if len(nonzero) == 2:
            return [_Term(v, _ones_where(values, [v])) for v in nonzero], 5
        if len(nonzero) != 3:
            return None
        for i, total in enumerate(nonzero):
            b, c = [v for j, v in enumerate(nonzero) if j != i]
            if self.width.reduce(b + c) == total:
                return [_Term(b, _ones_where(values, [b, total])), _Term(c, _ones_where(values, [c, total]))], 6
        return [_Term(v, _ones_where(values, [v])) for v in nonzero], 7

    def candidates(self):
        """Yield (case, expr, term count) in the order the cases are tried."""
        values = self.F.values
        unique = _unique(values)
        first = values[0]
        reduce = self.width.reduce

        if len(unique) == 2:
            other = unique[1]
            if first == 0:
                yield (2,) + self.combine(0, [_Term(other, _ones_where(values, [other]))])
            else:
                if other == reduce(2 * first):
                    # -a * ~g equals a where g is 0 and 2a where g is 1; g is 0 on the all-zero input
                    g = self.bitwise(_ones_where(values, [other]))
                    yield 3, linear_sum([(reduce(-first), bit_not(g))], self.width), 1
                elif first == reduce(2 * other):
                    # A bitwise term that is 1 on the all-zero input is -1 or -2 elsewhere, so no single term fits.
                    logging.debug("Doubled value on the all-zero input; trying case 4.")
                yield (4,) + self.combine(first, [_Term(reduce(other - first), _ones_where(values, [other]))])
            return

        if first == 0:
            found = self.split(values, unique[1:])
            if found is not None:
                terms, case = found
                yield (case,) + self.combine(0, terms)
            return

        shifted = tuple(reduce(v - first) for v in values)
        found = self.split(shifted, _unique(shifted)[1:])
        if found is not None:
            terms, _ = found
            yield (8,) + self.combine(first, terms)

def refine_with_case(F: SignatureVector, names: Optional[Sequence[str]] = None,
                     registry: Optional[TableRegistry] = None,
                     basis_terms: Optional[int] = None) -> Optional[Refinement]:
    """Try the refinement cases in order and return the first result with strictly fewer terms than the basis
    combination of F, whose term count may be passed in as basis_terms. A constant vector is always returned as the
    bare constant."""
    if F.is_constant:
        return Refinement(1, linear_sum([(F[0], None)], F.width), 1 if F[0] != 0 else 0)
    if F.t not in SUPPORTED_COUNTS:
        raise ValueError("Refinement needs 1 to 3 variables, got %i" % F.t)
    if names is None:
        names = placeholders(F.t)
    if registry is None:
        registry = default_registry()

    limit = basis_terms if basis_terms is not None else solve_basis(F, names).term_count()
    refiner = _Refiner(F, names, registry)
    for case, expr, count in refiner.candidates():
        if count < limit:
            logging.debug("Refinement case %i gives %i terms instead of %i." % (case, count, limit))
            return Refinement(case, expr, count)
        logging.debug("Refinement case %i rejected: %i terms, basis has %i." % (case, count, limit))
    return None

def refine(F: SignatureVector, names: Optional[Sequence[str]] = None,
           registry: Optional[TableRegistry] = None) -> Optional[Expr]:
    found = refine_with_case(F, names, registry)
    return found.expr if found is not None else None
