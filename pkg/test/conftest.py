import os
import random
from typing import Callable, Sequence

import pytest

from linmba.expr import Binary, BinaryOp, Const, Expr, Unary, UnaryOp, Var, Width
from linmba.tables import TableRegistry

@pytest.fixture
def basepath() -> str:
    return os.path.dirname(os.path.abspath(__file__))

@pytest.fixture(scope="session")
def registry() -> TableRegistry:
    return TableRegistry()

@pytest.fixture
def w64() -> Width:
    return Width(64)

def _random_tree(rng: random.Random, names: Sequence[str], width: Width, depth: int) -> Expr:
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.3:
            return Const(rng.getrandbits(width.bits))
        return Var(rng.choice(names))
    if rng.random() < 0.2:
        return Unary(rng.choice(list(UnaryOp)), _random_tree(rng, names, width, depth - 1))
    return Binary(rng.choice(list(BinaryOp)), _random_tree(rng, names, width, depth - 1),
                  _random_tree(rng, names, width, depth - 1))

@pytest.fixture
def random_tree() -> Callable[..., Expr]:
    """Arbitrary (not necessarily linear) expression trees with reduced constants."""
    def _make(rng: random.Random, width: Width, names: Sequence[str] = ("x", "y", "z"), depth: int = 4) -> Expr:
        return _random_tree(rng, names, width, depth)
    return _make
