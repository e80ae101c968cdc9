import pytest

from linmba.expr import Width, render
from linmba.semantics import SignatureVector, signature_vector
from linmba.simplify import refine, refine_with_case, solve_basis

W64 = Width(64)
XY = ["x", "y"]

@pytest.mark.parametrize("values, case, expected", [
    ((7, 7, 7, 7), 1, "7"),
    ((0, 5, 5, 5), 2, "5*(x|y)"),
    ((49374, 98748, 98748, 49374), 3, "-49374*~(x^y)"),
    ((5, 7, 7, 7), 4, "5+2*(x|y)"),
    ((98748, 49374, 49374, 98748), 4, "98748-49374*(x^y)"),
    ((0, 3, 5, 5), 5, "3*(x&~y)+5*y"),
    ((0, 5, 2, 3), 6, "2*(x^y)+3*x"),
    ((1, 6, 3, 4), 8, "1+2*(x^y)+3*x"),
])
def test_refinement_cases(registry, values, case, expected):
    F = SignatureVector(W64, 2, values)
    found = refine_with_case(F, XY, registry)
    assert found is not None
    assert found.case == case
    assert render(found.expr) == expected
    assert signature_vector(found.expr, XY, W64) == F

def test_case_three_single_variable(registry):
    c = 3735936685
    F = SignatureVector(W64, 1, (W64.reduce(-c), W64.reduce(-2 * c)))
    found = refine_with_case(F, ["x"], registry)
    assert found.case == 3
    assert render(found.expr) == "3735936685*~x"

def test_case_seven_on_three_variables(registry):
    names = ["x", "y", "z"]
    F = SignatureVector(W64, 3, (0, 1, 1, 2, 1, 2, 2, 4))
    found = refine_with_case(F, names, registry)
    assert found.case == 7
    assert found.term_count == 3
    assert solve_basis(F, names).term_count() == 4
    assert signature_vector(found.expr, names, W64) == F

@pytest.mark.parametrize("values", [
    (0, 2, 3, 5),  # case 6 ties with x-form
    (0, 1, 2, 4),  # case 7 ties
    (1, 3, 4, 6),  # case 8 ties
    (0, 1, 1, 2),
    (1, 2, 3, 5, 7, 11, 13, 17),
])
def test_no_strict_improvement(registry, values):
    t = 2 if len(values) == 4 else 3
    assert refine(SignatureVector(W64, t, values), registry=registry) is None

def test_zero_vector(registry):
    found = refine_with_case(SignatureVector(W64, 2, (0, 0, 0, 0)), XY, registry)
    assert render(found.expr) == "0"
    assert found.term_count == 0

def test_placeholder_names_by_default(registry):
    assert render(refine(SignatureVector(W64, 2, (0, 1, 1, 0)), registry=registry)) == "x_1^x_2"

def test_too_many_variables(registry):
    with pytest.raises(ValueError):
        refine(SignatureVector(W64, 4, tuple(range(16))), registry=registry)

def test_half_word_doubles_to_zero(registry):
    half = W64.half
    F = SignatureVector(W64, 1, (half, 0))
    found = refine_with_case(F, ["x"], registry)
    assert found.case == 3
    assert signature_vector(found.expr, ["x"], W64) == F
