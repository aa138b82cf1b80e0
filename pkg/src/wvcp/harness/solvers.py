"""One entry point for every method name accepted by the CLI and the benchmark."""

from __future__ import annotations

import numpy as np

from .. import mcts
from ..clock import Budget, WallClock
from ..coloring import coloring_score, empty_solution, is_legal
from ..instance import WeightedGraph, lift_coloring, reduce
from ..localsearch import IMPROVERS, LsParams, make_improver
from ..records import RunRecord, StopCondition, ms
from ..simulation import LS_TIME_FACTOR, SimulationStrategy

SIMULATIONS = ("random", "greedy", "greedy-random")
METHODS = (
    SIMULATIONS
    + tuple(f"mcts+{k}" for k in SIMULATIONS)
    + ("tw", "afisa", "redls", "ilsts")
    + tuple(f"mcts+{k}" for k in ("tw", "afisa", "redls", "ilsts"))
)


def derive_rng(seed: int, master: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([master, seed]))


def _stopped(stop: StopCondition, clock, best: int | None, iterations: int) -> bool:
    if stop.target is not None and best is not None and best <= stop.target:
        return True
    if stop.max_iterations is not None and iterations >= stop.max_iterations:
        return True
    return stop.time_limit is not None and clock.elapsed() >= stop.time_limit


def _repeat_simulation(g, kind, stop, seed, clock, rng) -> RunRecord:
    strategy = SimulationStrategy(kind, rng)
    root = empty_solution(g)
    best, best_color, t_best, it = None, None, 0.0, 0
    series = []
    while True:
        color, score = strategy(root, clock=clock)
        it += 1
        clock.tick()
        if best is None or score < best:
            best, best_color = score, color
            t_best = ms(clock.elapsed())
            series.append((t_best, best))
        # one deterministic pass is all greedy can give
        if kind == "greedy" or _stopped(stop, clock, best, it):
            break
    total = ms(clock.elapsed())
    series.append((total, best))
    return RunRecord(g.name, kind, seed, int(best), t_best, total, False, series, best_color, it)


def _standalone_ls(g, name, stop, seed, clock, rng, params) -> RunRecord:
    root = empty_solution(g)
    start, start_score = SimulationStrategy("greedy")(root)
    improver = make_improver(name, params)
    series = [(ms(clock.elapsed()), int(start_score))]

    def on_improve(score):
        series.append((ms(clock.elapsed()), int(score)))

    improver.on_improve = on_improve
    seconds = stop.time_limit
    if seconds is None and stop.max_iterations is None:
        seconds = LS_TIME_FACTOR * g.n
    budget = Budget(seconds, stop.max_iterations, clock)
    res = improver.improve(g, start, budget, rng, target=stop.target)
    total = ms(clock.elapsed())
    t_best = series[-1][0]
    series.append((total, int(res.score)))
    return RunRecord(g.name, name, seed, int(res.score), t_best, total, False, series, res.color,
                     res.iterations)


def solve(g: WeightedGraph, method: str, stop: StopCondition | None = None, seed: int = 0, clock=None,
          coeff: float = 1.0, reduce_first: bool = False, ls_params: LsParams | None = None,
          ls_time_factor: float = LS_TIME_FACTOR, prune: bool = True, master_seed: int = 0) -> RunRecord:
    """Run ``method`` on ``g``. The returned coloring is always on the original vertex ids."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    stop = stop or StopCondition()
    clock = clock or WallClock()
    rng = derive_rng(seed, master_seed)
    work, report = (reduce(g) if reduce_first else (g, None))

    if method in SIMULATIONS:
        rec = _repeat_simulation(work, method, stop, seed, clock, rng)
    elif method in IMPROVERS:
        rec = _standalone_ls(work, method, stop, seed, clock, rng, ls_params)
    else:
        kind = method.split("+", 1)[1]
        if kind in IMPROVERS:
            strategy = SimulationStrategy("ls", rng, make_improver(kind, ls_params), ls_time_factor)
        else:
            strategy = SimulationStrategy(kind, rng)
        rec = mcts.run(work, strategy, mcts.SelectionParams(coeff), stop, seed, clock, prune,
                       method=method)

    rec.instance = g.name
    rec.method = method
    if report is not None and rec.best_color is not None:
        rec.best_color = lift_coloring(g, report, rec.best_color)
    if rec.best_color is not None:
        if not is_legal(g, rec.best_color):
            raise RuntimeError(f"{method} produced an illegal coloring")
        actual = coloring_score(g, rec.best_color)
        if actual != rec.best_score:
            raise RuntimeError(f"{method} reported {rec.best_score}, coloring scores {actual}")
    return rec
