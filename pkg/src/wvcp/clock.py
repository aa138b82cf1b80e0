"""Wall and virtual clocks shared by the tree search and the local searches."""

from __future__ import annotations

import time


class WallClock:
    def __init__(self):
        self.start = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def tick(self, n: int = 1) -> None:
        pass


class StepClock:
    """Advances ``step`` seconds per unit of work; runs become bit-reproducible.

    The tree search ticks once per iteration and local searches once per move,
    so time limits read as work limits.
    """

    def __init__(self, step: float = 1e-3):
        self.step = step
        self.ticks = 0

    def elapsed(self) -> float:
        return self.ticks * self.step

    def tick(self, n: int = 1) -> None:
        self.ticks += n


def make_clock(kind: str = "wall"):
    if kind == "wall":
        return WallClock()
    if kind == "step":
        return StepClock()
    raise ValueError(f"unknown clock {kind!r} (expected 'wall' or 'step')")


class Budget:
    """Stop rule for one local-search call: time, iteration cap, or both."""

    CHECK_EVERY = 32

    def __init__(self, seconds: float | None = None, max_iterations: int | None = None, clock=None):
        self.clock = clock if clock is not None else WallClock()
        self.deadline = None if seconds is None else self.clock.elapsed() + seconds
        self.max_iterations = max_iterations
        self.iterations = 0
        self._expired = seconds is not None and seconds <= 0 or max_iterations == 0

    def step(self) -> bool:
        """Count one iteration; True while budget remains."""
        if self._expired:
            return False
        self.iterations += 1
        self.clock.tick()
        if self.max_iterations is not None and self.iterations >= self.max_iterations:
            self._expired = True
        elif self.deadline is not None and (
            isinstance(self.clock, StepClock) or self.iterations % self.CHECK_EVERY == 0
        ):
            self._expired = self.clock.elapsed() >= self.deadline
        return True

    @property
    def expired(self) -> bool:
        return self._expired
