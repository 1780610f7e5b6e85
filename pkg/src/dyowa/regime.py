"""Checking regimes: which inputs a verification walks over, and how that is reported."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .lattice import Lattice

DEFAULT_STEP = 0.05


@dataclass(frozen=True)
class Regime:
    """``exhaustive`` (finite carriers), ``grid`` (every tuple over ``grid(step)``)
    or ``sampled`` (``samples`` seeded draws from ``grid(step)``)."""

    kind: str = "grid"
    step: float = DEFAULT_STEP
    samples: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("exhaustive", "grid", "sampled"):
            raise ValueError("unknown regime kind %r" % self.kind)

    def label(self) -> str:
        if self.kind == "exhaustive":
            return "exhaustive"
        if self.kind == "grid":
            return "grid(%g)" % self.step
        return "sampled(%d,seed=%d)" % (self.samples, self.seed)

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def elements(self, L: Lattice) -> list:
        if self.kind == "exhaustive" and not L.is_finite:
            raise ValueError("exhaustive regime needs a finite lattice")
        return L.grid(self.step)

    def tuples(self, L: Lattice, n: int, rng: random.Random | None = None):
        """Input vectors of arity ``n``; a fresh seeded generator is used unless one is given."""
        elems = self.elements(L)
        if self.kind == "sampled":
            rng = rng or self.rng()
            return [tuple(rng.choice(elems) for _ in range(n)) for _ in range(self.samples)]
        return itertools.product(elems, repeat=n)


def default_regime(L: Lattice, samples: int = 1000, seed: int = 0, step: float = DEFAULT_STEP) -> Regime:
    """Exhaustive on finite carriers, a 0.05 grid on [0, 1], sampling elsewhere."""
    if L.is_finite:
        return Regime("exhaustive")
    if L.kind == "unit":
        return Regime("grid", step=step)
    return Regime("sampled", step=step, samples=samples, seed=seed)
