import random

import pytest

from linmba.expr import Binary, BinaryOp, Const, Unary, UnaryOp, Var, Width, linear_sum, parse, render

W64 = Width(64)
W8 = Width(8)

@pytest.mark.parametrize("text", [
    "x+y",
    "3735936685*(x^y)+49374",
    "x-(y-z)",
    "x-y-z",
    "(x|y)&z",
    "x|y&z",
    "~(x&y)",
    "~x&y",
    "-x*y",
    "-(x*y)",
    "x*(y*z)",
    "x^(y^z)",
    "2*~(x|y)",
])
def test_render_is_minimal(text):
    assert render(parse(text, W64)) == text

@pytest.mark.parametrize("text, expected", [
    ("((x))", "x"),
    ("(x+y)+z", "x+y+z"),
    ("(x&y)|(z)", "x&y|z"),
    ("0x10", "16"),
    ("(~x)", "~x"),
    ("(x^y)^z", "x^y^z"),
])
def test_render_drops_redundant_parentheses(text, expected):
    assert render(parse(text, W64)) == expected

def test_render_reparses_to_same_tree(random_tree):
    rng = random.Random(52)
    for _ in range(200):
        e = random_tree(rng, W64)
        assert parse(render(e), W64) == e

@pytest.mark.parametrize("width", [Width(4), W8, W64])
def test_render_respects_precedence(random_tree, width):
    rng = random.Random(width.bits)
    for _ in range(10000):
        e = random_tree(rng, width, depth=rng.randint(1, 6))
        assert parse(render(e), width) == e

@pytest.mark.parametrize("terms, expected", [
    ([(0, None)], "0"),
    ([(5, None), (3, Var("x"))], "5+3*x"),
    ([(255, None), (1, Var("x"))], "-1+x"),
    ([(0, None), (255, Var("x"))], "-x"),
    ([(0, None), (254, Var("x")), (1, Var("y"))], "-2*x+y"),
    ([(0, None), (1, Var("x")), (255, Var("y"))], "x-y"),
    ([(7, None), (0, Var("x")), (128, Var("y"))], "7+128*y"),
    ([(0, None), (2, Binary(BinaryOp.AND, Var("x"), Var("y")))], "2*(x&y)"),
])
def test_linear_sum_signs(terms, expected):
    assert render(linear_sum(terms, W8)) == expected

def test_linear_sum_negative_leading_term_structure():
    e = linear_sum([(0, None), (253, Var("x"))], W8)
    assert e == Binary(BinaryOp.MUL, Unary(UnaryOp.NEG, Const(3)), Var("x"))
