"""Improvers for complete colorings: tabu weight, AFISA-, RedLS- and ILSTS-like searches."""

from .afisa import Afisa, afisa_like
from .base import LocalSearch, LsParams, LsResult, legal_descent
from .ilsts import Ilsts, grenade, ilsts_like
from .redls import EdgePenalties, RedLS, redls_like
from .state import LocalSearchError, LsSolution, check_result
from .tabu import TabuWeight, tabu_weight

IMPROVERS = {
    "tw": TabuWeight,
    "afisa": Afisa,
    "redls": RedLS,
    "ilsts": Ilsts,
}


def make_improver(name: str, params: LsParams | None = None) -> LocalSearch:
    try:
        return IMPROVERS[name](params)
    except KeyError:
        raise ValueError(f"unknown local search {name!r}; expected one of {sorted(IMPROVERS)}") from None


def one_move_neighbors(s: LsSolution, legal_only: bool = True):
    """Yield (vertex, target_color, score_delta) for every one-move of ``s``."""
    cols = s.active_colors().tolist()
    for v in range(s.g.n):
        for c in cols:
            if c == s.color[v]:
                continue
            if legal_only and s.gamma[v, c]:
                continue
            yield v, c, s.move_delta(v, c)[0]


__all__ = [
    "Afisa", "EdgePenalties", "IMPROVERS", "Ilsts", "LocalSearch", "LocalSearchError",
    "LsParams", "LsResult", "LsSolution", "RedLS", "TabuWeight", "afisa_like",
    "check_result", "grenade", "ilsts_like", "legal_descent", "make_improver",
    "one_move_neighbors", "redls_like", "tabu_weight",
]
