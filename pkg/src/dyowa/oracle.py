"""Brute-force reference computations and exhaustive input enumeration.

Nothing here imports the LM transform or the OWA engine: the oracle is kept
separate from the code it audits.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Sequence

from .lattice import Interval, IntervalLattice, Lattice, UnitLattice

ORACLE_CAP = 8
DEFAULT_BUDGET = 10**6
UNIT_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


class BudgetExceeded(ValueError):
    pass


def oracle_lm(L: Lattice, a: Sequence) -> tuple:
    """``b_k`` = join over k-element index sets of the meet of those coordinates, by bitmask scan."""
    a = list(a)
    n = len(a)
    if n == 0:
        raise ValueError("empty input vector")
    if n > ORACLE_CAP:
        raise ValueError("oracle handles n <= %d, got %d" % (ORACLE_CAP, n))
    best: list[Any] = [None] * (n + 1)
    for mask in range(1, 1 << n):
        picked = [a[i] for i in range(n) if mask >> i & 1]
        m = picked[0]
        for x in picked[1:]:
            m = L.meet(m, x)
        k = len(picked)
        best[k] = m if best[k] is None else L.join(best[k], m)
    return tuple(best[1:])


@dataclass(frozen=True)
class EnumerationDomain:
    lattice: Lattice
    elements: tuple
    arity: int
    budget: int = DEFAULT_BUDGET


def make_domain(L: Lattice, n: int, seed: int = 0, count: int = 8, budget: int = DEFAULT_BUDGET) -> EnumerationDomain:
    """Full carrier for finite lattices, {0, .25, .5, .75, 1} for [0, 1], ``count`` seeded grid intervals otherwise."""
    if L.is_finite:
        elems = tuple(L.grid())
    elif isinstance(L, UnitLattice):
        elems = UNIT_GRID
    elif isinstance(L, IntervalLattice):
        rng = random.Random(seed)
        elems = []
        for _ in range(count):
            x, y = rng.choice(UNIT_GRID), rng.choice(UNIT_GRID)
            elems.append(Interval(min(x, y), max(x, y)))
        elems = tuple(elems)
    else:
        raise ValueError("no enumeration domain for %r" % (L,))
    return EnumerationDomain(L, elems, n, budget)


def enumerate_tuples(dom: EnumerationDomain) -> Iterator[tuple]:
    """Lexicographic stream over ``elements ** arity``."""
    total = len(dom.elements) ** dom.arity
    if total > dom.budget:
        raise BudgetExceeded("%d tuples exceed budget %d" % (total, dom.budget))
    return itertools.product(dom.elements, repeat=dom.arity)


def _same(L: Lattice, x, y, tol: float) -> bool:
    if isinstance(x, tuple) and isinstance(y, tuple) and L.kind != "product":
        return len(x) == len(y) and all(_same(L, a, b, tol) for a, b in zip(x, y))
    if tol == 0:
        return x == y
    return L.eq(x, y, tol)


@dataclass(frozen=True)
class EquivalenceReport:
    ok: bool
    checked: int
    divergence: tuple | None = None  # (input, fnA(input), fnB(input))

    def __bool__(self):
        return self.ok


def equivalence_report(fnA: Callable, fnB: Callable, dom: EnumerationDomain | Sequence, tol: float = 0.0,
                       lattice: Lattice | None = None) -> EquivalenceReport:
    """Compare two functions over a domain (or an explicit list of inputs); stop at the first divergence.

    ``tol == 0`` asks for exact equality.
    """
    if isinstance(dom, EnumerationDomain):
        L = dom.lattice
        stream = enumerate_tuples(dom)
    else:
        L = lattice
        stream = dom
    count = 0
    for xs in stream:
        a, b = fnA(xs), fnB(xs)
        count += 1
        if not _same(L, a, b, tol):
            return EquivalenceReport(False, count, (xs, a, b))
    return EquivalenceReport(True, count)
