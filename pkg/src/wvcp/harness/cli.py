from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..clock import make_clock
from ..coloring import format_solution
from ..instance import InstanceError, read_instance
from ..records import StopCondition, read_records, write_series
from . import stats
from .experiment import ConfigError, load_config, run_experiment
from .solvers import METHODS, solve
from .verify import VerificationError, verify_solution


def _positive(x: str) -> float:
    v = float(x)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wvcp", description="Weighted vertex coloring solvers")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run one method on one instance")
    s.add_argument("--instance", required=True)
    s.add_argument("--weights", required=True)
    s.add_argument("--reduce", action="store_true", help="apply the reduction rules first")
    s.add_argument("--method", required=True, choices=METHODS)
    s.add_argument("--time-limit", type=_positive, required=True)
    s.add_argument("--target", type=int)
    s.add_argument("--coeff", type=float, default=1.0)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--series", help="write the best-score time series CSV here")
    s.add_argument("--out", help="write the best coloring here")
    s.add_argument("--max-iterations", type=int)
    s.add_argument("--clock", choices=("wall", "step"), default="wall",
                   help="'step' counts work units instead of seconds; output becomes reproducible")

    b = sub.add_parser("bench", help="run a benchmark matrix from a TOML config")
    b.add_argument("--config", required=True)
    b.add_argument("--out", required=True)

    c = sub.add_parser("compare", help="Welch t-test table between two methods")
    c.add_argument("--in", dest="in_dir", required=True)
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--alpha", type=float, default=stats.ALPHA)

    v = sub.add_parser("verify", help="check a solution file")
    v.add_argument("--instance", required=True)
    v.add_argument("--weights", required=True)
    v.add_argument("--solution", required=True)
    return p


def _solve(a) -> int:
    g = read_instance(a.instance, a.weights)
    stop = StopCondition(a.time_limit, a.target, a.max_iterations)
    rec = solve(g, a.method, stop, a.seed, make_clock(a.clock), a.coeff, a.reduce)
    if a.series:
        write_series(rec, a.series)
    if a.out:
        Path(a.out).write_text(format_solution(rec.best_color, rec.best_score))
    print(f"instance={rec.instance} method={rec.method} seed={rec.seed} best={rec.best_score} "
          f"time_to_best_ms={rec.time_to_best_ms:.3f} proven_optimal={int(rec.proven_optimal)}")
    return 0


def _bench(a) -> int:
    cfg = load_config(a.config)
    recs = run_experiment(cfg, a.out, log=print)
    print(f"{len(recs)} runs written to {Path(a.out) / 'records.csv'}")
    return 0


def _compare(a) -> int:
    path = Path(a.in_dir) / "records.csv"
    if not path.exists():
        raise FileNotFoundError(f"no records.csv in {a.in_dir}")
    recs = read_records(path)
    methods = {r.method for r in recs}
    for m in (a.a, a.b):
        if m not in methods:
            raise ValueError(f"method {m!r} not in records (have {sorted(methods)})")
    cells = stats.compare(recs, a.a, a.b, a.alpha)
    sys.stdout.write(stats.format_cells(cells))
    wins_a = sum(c.a_better for c in cells)
    wins_b = sum(c.b_better for c in cells)
    print(f"# {a.a} better on {wins_a}, {a.b} better on {wins_b}, of {len(cells)} instances")
    return 0


def _verify(a) -> int:
    g = read_instance(a.instance, a.weights)
    res = verify_solution(g, Path(a.solution).read_text())
    print(f"valid score={res['score']}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"solve": _solve, "bench": _bench, "compare": _compare, "verify": _verify}[args.command]
    try:
        return handler(args)
    except (InstanceError, VerificationError, ConfigError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
