"""Benchmark matrix: instances x methods x seeds, one CSV row per run.

Config is TOML::

    instances = ["data/p06.col", "data/p07.col"]   # weights: <file>.w
    methods = ["greedy", "mcts+greedy"]
    seeds = [0, 1, 2]          # or: n_seeds = 20
    time_limit = 60            # seconds per run
    clock = "wall"             # or "step"
    workers = 1
    coeff = 1.0
    reduce = false
    ls_time_factor = 0.02      # per-simulation local-search budget, seconds per vertex
    master_seed = 0            # per-run streams derive from (master_seed, seed)

    [targets]                  # optional early stop per instance name
    p06 = 565

    [ls]                       # local-search constants (LsParams fields)
    tenure_base = 10

Relative paths resolve against the config file's directory. Rows are appended
as runs finish, and runs already present in ``records.csv`` are skipped.
"""

from __future__ import annotations

import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ..clock import make_clock
from ..instance import read_instance
from ..localsearch import LsParams
from ..records import RunRecord, StopCondition, read_records, write_records, write_series
from ..simulation import LS_TIME_FACTOR
from .solvers import METHODS, solve

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    instances: list[Path]
    methods: list[str]
    seeds: list[int]
    time_limit: float | None = None
    max_iterations: int | None = None
    clock: str = "wall"
    workers: int = 1
    coeff: float = 1.0
    reduce: bool = False
    ls_time_factor: float = LS_TIME_FACTOR
    master_seed: int = 0
    targets: dict[str, int] = field(default_factory=dict)
    ls: LsParams = field(default_factory=LsParams)


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text())
    except (OSError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    base = path.parent
    for key in ("instances", "methods"):
        if not raw.get(key):
            raise ConfigError(f"config needs a non-empty '{key}' list")
    if "seeds" in raw:
        seeds = [int(s) for s in raw["seeds"]]
    elif "n_seeds" in raw:
        seeds = list(range(int(raw["n_seeds"])))
    else:
        raise ConfigError("config needs 'seeds' or 'n_seeds'")
    bad = [m for m in raw["methods"] if m not in METHODS]
    if bad:
        raise ConfigError(f"unknown methods {bad}")
    if raw.get("time_limit") is None and raw.get("max_iterations") is None:
        raise ConfigError("config needs 'time_limit' or 'max_iterations'")
    try:
        ls = LsParams(**raw.get("ls", {}))
    except TypeError as e:
        raise ConfigError(f"bad [ls] section: {e}") from e
    return ExperimentConfig(
        instances=[(base / p) if not Path(p).is_absolute() else Path(p) for p in raw["instances"]],
        methods=list(raw["methods"]),
        seeds=seeds,
        time_limit=raw.get("time_limit"),
        max_iterations=raw.get("max_iterations"),
        clock=raw.get("clock", "wall"),
        workers=int(raw.get("workers", 1)),
        coeff=float(raw.get("coeff", 1.0)),
        reduce=bool(raw.get("reduce", False)),
        ls_time_factor=float(raw.get("ls_time_factor", LS_TIME_FACTOR)),
        master_seed=int(raw.get("master_seed", 0)),
        targets={str(k): int(v) for k, v in raw.get("targets", {}).items()},
        ls=ls,
    )


def series_name(rec: RunRecord) -> str:
    return f"{rec.instance}__{rec.method.replace('+', '-')}__{rec.seed}.csv"


def _one_run(cfg: ExperimentConfig, inst_path: Path, method: str, seed: int) -> RunRecord:
    g = read_instance(inst_path)
    stop = StopCondition(cfg.time_limit, cfg.targets.get(g.name), cfg.max_iterations)
    return solve(g, method, stop, seed, make_clock(cfg.clock), cfg.coeff, cfg.reduce, cfg.ls,
                 cfg.ls_time_factor, master_seed=cfg.master_seed)


def run_experiment(cfg: ExperimentConfig, out_dir, log=None) -> list[RunRecord]:
    out = Path(out_dir)
    (out / "series").mkdir(parents=True, exist_ok=True)
    records_path = out / "records.csv"
    done = set()
    if records_path.exists():
        done = {(r.instance, r.method, r.seed) for r in read_records(records_path)}
    for p in cfg.instances:
        if not p.exists():
            raise ConfigError(f"instance file not found: {p}")
    jobs = []
    for p in cfg.instances:
        name = p.name[:-4] if p.name.endswith(".col") else p.stem
        for m in cfg.methods:
            for s in cfg.seeds:
                if (name, m, s) not in done:
                    jobs.append((p, m, s))

    finished = []

    def record(rec: RunRecord) -> None:
        write_records([rec], records_path, append=True)
        write_series(rec, out / "series" / series_name(rec))
        finished.append(rec)
        if log:
            log(f"{rec.instance} {rec.method} seed={rec.seed} best={rec.best_score} "
                f"opt={int(rec.proven_optimal)}")

    if cfg.workers <= 1:
        for job in jobs:
            record(_one_run(cfg, *job))
    else:
        workers = min(cfg.workers, os.cpu_count() or 1)
        with ProcessPoolExecutor(workers) as ex:
            futures = [ex.submit(_one_run, cfg, *job) for job in jobs]
            for f in futures:
                record(f.result())
    return finished
