from conflictcol.solvers.adaptable import split_adaptable
from conflictcol.solvers.exact import solve_exact
from conflictcol.solvers.lll import solve_lll
from conflictcol.solvers.orientation import solve_orientation, solve_via_orientation
from conflictcol.solvers.peel import PeelTrace, extend_peeled, kernelize
from conflictcol.solvers.result import SearchLimits, SolveResult, Status
from conflictcol.solvers.two_phase import (
    ParameterError,
    TwoPhaseParams,
    lll_feasibility_check,
    two_phase,
)

__all__ = [
    "ParameterError", "PeelTrace", "SearchLimits", "SolveResult", "Status", "TwoPhaseParams",
    "extend_peeled", "kernelize", "lll_feasibility_check", "solve_exact", "solve_lll",
    "solve_orientation", "solve_via_orientation", "split_adaptable", "two_phase",
]
