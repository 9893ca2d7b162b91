"""Exact unit grid intersection graph tools."""

from ._gridlab import *  # noqa: F401,F403
from ._gridlab import GridlabError, ParseError, RoutingFailure, UnsatisfiableAssignment, BudgetExceeded  # noqa: F401
