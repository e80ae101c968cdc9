from collections import OrderedDict
from typing import Dict

from asciitree import LeftAligned
from asciitree.drawing import BoxStyle, BOX_DOUBLE

from linmba.expr import Binary, Const, Expr, Unary, Var, children, render

def _label(e: Expr) -> str:
    if isinstance(e, Const):
        return "Const %i" % e.value
    if isinstance(e, Var):
        return "Var %s" % e.name
    if isinstance(e, Unary):
        return "%s %s" % (e.op.name, e.op.value)
    assert isinstance(e, Binary)
    return "%s %s" % (e.op.name, e.op.value)

def _traverse(e: Expr) -> Dict:
    # Siblings may carry the same label (x&x), so keys are prefixed with the operand position.
    ret: Dict[str, Dict] = OrderedDict()
    for i, child in enumerate(children(e)):
        ret["%i %s" % (i, _label(child))] = _traverse(child)
    return ret

def as_ascii(e: Expr) -> str:
    rooted_tree: Dict = {"%s  [%s]" % (_label(e), render(e)): _traverse(e)}
    box_tr: LeftAligned = LeftAligned(draw=BoxStyle(gfx=BOX_DOUBLE, horiz_len=1, indent=1))
    return box_tr(rooted_tree)
