import itertools
import random
from typing import Dict, List

import pytest

from linmba.expr import Binary, BinaryOp, Const, Expr, Unary, UnaryOp, Var, Width, node_count, render
from linmba.generate import DEFAULT_NAMES, TruthMatrix, zero_mba
from linmba.linearity import linearize
from linmba.semantics import SignatureVector, signature_vector, variable_column
from linmba.simplify import simplify, solve_basis, subset_order
from linmba.tables import lookup_for, placeholders, truth_index
from linmba.verify import equivalent_exhaustive

ONE_BIT = Width(1)
W64 = Width(64)

@pytest.mark.repeat(10)
@pytest.mark.parametrize("bits", [4, 8, 64])
@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_solution_reproduces_signature_through_truth_matrix(bits, t):
    width = Width(bits)
    rng = random.Random()
    F = SignatureVector(width, t, tuple(rng.getrandbits(bits) for _ in range(1 << t)))
    c = solve_basis(F)
    Y = [0] + [c.coeffs.get(mask, 0) for mask in subset_order(t)]
    rebuilt = TruthMatrix.conjunction_basis(t).apply(Y, width)
    assert tuple(width.reduce(v + c.constant) for v in rebuilt) == F.values

def _all_trees(t: int, max_size: int) -> Dict[int, List[Expr]]:
    """Every bitwise tree over x_1..x_t with at most max_size nodes, by size."""
    trees: Dict[int, List[Expr]] = {1: [Var(name) for name in placeholders(t)]}
    for size in range(2, max_size + 1):
        level = [Unary(UnaryOp.BIT_NOT, e) for e in trees[size - 1]]
        for left_size in range(1, size - 1):
            for left, right in itertools.product(trees[left_size], trees[size - 1 - left_size]):
                level.extend(Binary(op, left, right) for op in (BinaryOp.AND, BinaryOp.XOR, BinaryOp.OR))
        trees[size] = level
    return trees

@pytest.mark.parametrize("t", [1, 2])
def test_table_entries_are_minimal(registry, t):
    table = registry.table(t)
    largest = max(node_count(e) for e in table.entries)
    for size, trees in _all_trees(t, largest).items():
        for e in trees:
            idx = truth_index(signature_vector(e, placeholders(t), ONE_BIT).values)
            assert node_count(table.entries[idx]) <= size, render(e)

@pytest.mark.parametrize("t", [1, 2])
@pytest.mark.parametrize("seed", range(3))
def test_zero_mba_vanishes_everywhere(registry, t, seed):
    width = Width(8)
    z = zero_mba(t, 4, seed, width, registry)
    names = list(DEFAULT_NAMES[:t])
    assert signature_vector(z, names, width).values == (0,) * (1 << t)
    assert equivalent_exhaustive(z, Const(0), width).equivalent

def _minimal_sizes(t: int, limit: int) -> Dict[int, int]:
    """Fewest nodes of any bitwise tree over x_1..x_t, per truth vector, for trees of up to limit nodes. Works on sets
    of truth vectors per exact tree size, so every tree is accounted for."""
    full = (1 << (1 << t)) - 1
    by_size = {1: {variable_column(i, t) for i in range(t)}}
    for size in range(2, limit + 1):
        level = {full ^ v for v in by_size[size - 1]}
        for left_size in range(1, size - 1):
            right = by_size[size - 1 - left_size]
            for a in by_size[left_size]:
                for b in right:
                    level.update((a & b, a ^ b, a | b))
        by_size[size] = level
    ret: Dict[int, int] = {}
    for size in sorted(by_size):
        for v in by_size[size]:
            ret.setdefault(v, size)
    return ret

def test_three_variable_entries_are_minimal(registry):
    table = registry.table(3)
    rng = random.Random(230)
    sample = rng.sample(range(256), 32)
    minimal = _minimal_sizes(3, max(node_count(table.entries[idx]) for idx in sample))
    for idx in sample:
        entry = table.entries[idx]
        assert truth_index(signature_vector(entry, placeholders(3), ONE_BIT).values) == idx
        assert node_count(entry) == minimal[idx], render(entry)

def _sub(a, b):
    return tuple(W64.reduce(x - y) for x, y in zip(a, b))

def _add(a, b):
    return tuple(W64.reduce(x + y) for x, y in zip(a, b))

def _reachable(F, singles, size: int) -> bool:
    """Whether F is the sum of size members of singles with pairwise different tags."""
    if size == 1:
        return any(vec == F for _, vec in singles)
    if size == 2:
        return any(vec == _sub(F, other) and tag != other_tag
                   for tag, vec in singles for other_tag, other in singles)
    pairs: Dict[tuple, List[tuple]] = {}
    for (ta, va), (tb, vb) in itertools.combinations(singles, 2):
        if ta != tb:
            pairs.setdefault(_add(va, vb), []).append((ta, tb))
    return any(tag not in tags for tag, vec in singles for tags in pairs.get(_sub(F, vec), []))

def test_two_variable_output_has_fewest_terms(registry):
    table = registry.table(2)
    names = ["x", "y"]
    columns = {idx: signature_vector(lookup_for(table, [(idx >> k) & 1 for k in range(4)], names), names, W64).values
               for idx in range(1, 16)}
    rng = random.Random(305)
    for _ in range(200):
        # Values drawn from a small pool repeat, which is what the refinement cases look for.
        pool = [0] + [rng.getrandbits(64) for _ in range(3)]
        F = tuple(rng.choice(pool) for _ in range(4))
        e = solve_basis(SignatureVector(W64, 2, F), names).to_expr()

        out = simplify(e, W64, registry=registry)
        assert signature_vector(out, names, W64).values == F
        form = linearize(out, W64)
        coeffs = ({form.constant} | {c for c, _ in form.terms()}) - {0}
        singles = [("const", (c,) * 4) for c in coeffs]
        singles.extend((idx, tuple(W64.reduce(c * v) for v in column))
                       for idx, column in columns.items() for c in coeffs)
        for size in range(1, form.term_count()):
            assert not _reachable(F, singles, size), "%s has a %i-term form" % (render(out), size)
