from linmba.expr.__expr import Binary, Const, Expr, Unary, Var, precedence, UNARY_PRECEDENCE

def _wrap(e: Expr, parenthesize: bool) -> str:
    text = render(e)
    return "(" + text + ")" if parenthesize else text

def render(e: Expr) -> str:
    """Print an expression with the fewest parentheses that reparse to the same tree. Rendering is purely structural:
    signed coefficients come from the way sums are built (see linear_sum)."""
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        return e.op.value + _wrap(e.child, precedence(e.child) < UNARY_PRECEDENCE)
    assert isinstance(e, Binary)
    level = precedence(e)
    # Left associativity: an equal-level right operand needs parentheses to keep its grouping.
    left = _wrap(e.left, precedence(e.left) < level)
    right = _wrap(e.right, precedence(e.right) <= level)
    return left + e.op.value + right
