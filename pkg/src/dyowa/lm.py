"""The Lizasoain-Moreno transform: a decreasing chain built from any lattice vector.

``b_k`` is the join, over all k-element index subsets, of the meet of the
selected coordinates.  On chains this is a descending sort; on interval and
product lattices it factors per coordinate.
"""
from __future__ import annotations

import itertools
from functools import cmp_to_key, reduce
from typing import Sequence

from .lattice import Interval, IntervalLattice, Lattice, ProductLattice, UnitLattice

DEFAULT_CAP = 20


class ArityError(ValueError):
    pass


def lm_naive(L: Lattice, a: Sequence, cap: int = DEFAULT_CAP) -> tuple:
    """Direct subset enumeration; Theta(2^n) lattice operations."""
    a = [L.check(x) for x in a]
    n = len(a)
    if n == 0:
        raise ArityError("empty input vector")
    if n > cap:
        raise ArityError("n=%d exceeds subset cap %d" % (n, cap))
    out = []
    for k in range(1, n + 1):
        meets = (reduce(L.meet, (a[j] for j in idx)) for idx in itertools.combinations(range(n), k))
        out.append(reduce(L.join, meets))
    return tuple(out)


def _all_comparable(L: Lattice, a) -> bool:
    if L.is_chain:
        return True
    return all(L.comparable(x, y) for x, y in itertools.combinations(a, 2))


def _descending(L: Lattice, a) -> tuple:
    def cmp(x, y):
        if L.leq(x, y) and L.leq(y, x):
            return 0
        return 1 if L.leq(x, y) else -1

    return tuple(sorted(a, key=cmp_to_key(cmp)))


def lm_transform(L: Lattice, a: Sequence, cap: int = DEFAULT_CAP) -> tuple:
    """Same value as :func:`lm_naive`, using a sort or a per-coordinate split when possible."""
    a = [L.check(x) for x in a]
    if not a:
        raise ArityError("empty input vector")
    if isinstance(L, UnitLattice):
        # exact numeric order, so the result matches subset enumeration bit for bit
        return tuple(sorted(a, reverse=True))
    if isinstance(L, IntervalLattice):
        los = sorted((x.lo for x in a), reverse=True)
        his = sorted((x.hi for x in a), reverse=True)
        return tuple(Interval(lo, hi) for lo, hi in zip(los, his))
    if _all_comparable(L, a):
        return _descending(L, a)
    if isinstance(L, ProductLattice):
        cols = [lm_transform(f, [x[i] for x in a], cap) for i, f in enumerate(L.factors)]
        return tuple(zip(*cols))
    return lm_naive(L, a, cap)


def is_lm_chain(L: Lattice, a: Sequence, b: Sequence) -> bool:
    """Check that ``b`` is decreasing with ``b[0]`` the join and ``b[-1]`` the meet of ``a``."""
    if len(a) != len(b):
        return False
    if any(not L.leq(y, x) for x, y in zip(b, b[1:])):
        return False
    return L.eq(b[0], L.join_all(a)) and L.eq(b[-1], L.meet_all(a))
