from linmba.simplify.__basis import (
    BasisCombination, drop_dead_variables, live_positions, restrict, solve_basis, subset_order
)
from linmba.simplify.__refine import Refinement, refine, refine_with_case
from linmba.simplify.__simplify import SimplifyResult, analyze, simplify
