"""t-norms and t-conorms on [0, 1] and on arbitrary lattices."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import reduce
from typing import Callable

from .lattice import TAU, Interval, IntervalLattice, Lattice, LatticeError, ProductLattice, UnitLattice


def _is_one(x):
    return x >= 1.0 - TAU


def _is_zero(x):
    return x <= TAU


def t_min(x, y):
    return x if x <= y else y


def t_prod(x, y):
    return x * y


def t_luk(x, y):
    return max(x + y - 1.0, 0.0)


def t_drastic(x, y):
    if _is_one(x):
        return y
    if _is_one(y):
        return x
    return 0.0


def s_max(x, y):
    return x if x >= y else y


def s_prob(x, y):
    return x + y - x * y


def s_luk(x, y):
    return min(x + y, 1.0)


def s_drastic(x, y):
    if _is_zero(x):
        return y
    if _is_zero(y):
        return x
    return 1.0


UNIT_TNORMS: dict[str, Callable[[float, float], float]] = {
    "min": t_min,
    "prod": t_prod,
    "luk": t_luk,
    "drastic": t_drastic,
}

UNIT_TCONORMS: dict[str, Callable[[float, float], float]] = {
    "max": s_max,
    "probsum": s_prob,
    "luk": s_luk,
    "drastic": s_drastic,
}


@dataclass(frozen=True)
class TriangularPair:
    """A t-norm and t-conorm bound to one lattice.

    ``tnorm`` and ``tconorm`` are the raw binary callables; the ``*_apply`` and
    ``fold_*`` methods validate carrier membership first.
    """

    lattice: Lattice
    tnorm: Callable
    tconorm: Callable
    tnorm_name: str = "?"
    tconorm_name: str = "?"

    def __repr__(self):
        return "TriangularPair(%r, %s, %s)" % (self.lattice, self.tnorm_name, self.tconorm_name)

    @property
    def is_lattice_pair(self) -> bool:
        """True when the pair is (meet, join) of its lattice."""
        meets = {"meet", "min", "cw:min"}
        joins = {"join", "max", "cw:max"}
        return self.tnorm_name in meets and self.tconorm_name in joins

    def tnorm_apply(self, a, b):
        L = self.lattice
        return self.tnorm(L.check(a), L.check(b))

    def tconorm_apply(self, a, b):
        L = self.lattice
        return self.tconorm(L.check(a), L.check(b))

    def fold_tnorm(self, xs):
        xs = [self.lattice.check(x) for x in xs]
        if not xs:
            raise ValueError("fold of an empty vector")
        return reduce(self.tnorm, xs)

    def fold_tconorm(self, xs):
        xs = [self.lattice.check(x) for x in xs]
        if not xs:
            raise ValueError("fold of an empty vector")
        return reduce(self.tconorm, xs)


def tnorm_apply(P: TriangularPair, a, b):
    return P.tnorm_apply(a, b)


def tconorm_apply(P: TriangularPair, a, b):
    return P.tconorm_apply(a, b)


def fold_tnorm(P: TriangularPair, xs):
    return P.fold_tnorm(xs)


def fold_tconorm(P: TriangularPair, xs):
    return P.fold_tconorm(xs)


def unit_pair(tnorm: str = "prod", tconorm: str = "luk", lattice: UnitLattice | None = None) -> TriangularPair:
    """A named t-norm / t-conorm pair on [0, 1], e.g. ``unit_pair("prod", "luk")``."""
    try:
        t = UNIT_TNORMS[tnorm]
    except KeyError:
        raise ValueError("unknown t-norm %r" % tnorm) from None
    try:
        s = UNIT_TCONORMS[tconorm]
    except KeyError:
        raise ValueError("unknown t-conorm %r" % tconorm) from None
    return TriangularPair(lattice or UnitLattice(), t, s, tnorm, tconorm)


def lattice_pair(L: Lattice) -> TriangularPair:
    """(meet, join): a t-norm / t-conorm pair available on every lattice."""
    return TriangularPair(L, L.meet, L.join, "meet", "join")


def _ordered(lo, hi):
    # isotone operators keep lo <= hi; only rounding can invert the ends
    if lo > hi and lo - hi <= TAU:
        lo = hi
    return Interval(lo, hi)


def lift_componentwise(base: TriangularPair, target: Lattice) -> TriangularPair:
    """Apply a unit-lattice pair coordinatewise on an interval or product lattice."""
    if not isinstance(base.lattice, UnitLattice):
        raise LatticeError("componentwise lifting needs a unit-lattice base pair")
    t, s = base.tnorm, base.tconorm
    if isinstance(target, IntervalLattice):
        def tnorm(a, b):
            return _ordered(t(a.lo, b.lo), t(a.hi, b.hi))

        def tconorm(a, b):
            return _ordered(s(a.lo, b.lo), s(a.hi, b.hi))
    elif isinstance(target, ProductLattice):
        if not all(isinstance(f, UnitLattice) for f in target.factors):
            raise LatticeError("componentwise lifting needs unit-lattice factors")

        def tnorm(a, b):
            return tuple(t(x, y) for x, y in zip(a, b))

        def tconorm(a, b):
            return tuple(s(x, y) for x, y in zip(a, b))
    else:
        raise LatticeError("componentwise lifting targets interval or product lattices")
    return TriangularPair(target, tnorm, tconorm, "cw:" + base.tnorm_name, "cw:" + base.tconorm_name)


def resolve_pair(L: Lattice, tnorm: str, tconorm: str) -> TriangularPair:
    """Build a pair from CLI-style operator names.

    ``meet``/``join`` work on any lattice; bare operator names need the unit
    lattice; the ``cw:`` prefix lifts a named operator coordinatewise.
    """

    def pick(name, table, lattice_op, lattice_name):
        if name == lattice_name:
            return lattice_op, name
        if name.startswith("cw:"):
            base = name[3:]
            if base not in table:
                raise ValueError("unknown operator %r" % name)
            dummy = TriangularPair(UnitLattice(), table[base], table[base])
            lifted = lift_componentwise(dummy, L)
            return lifted.tnorm, name
        if name not in table:
            raise ValueError("unknown operator %r" % name)
        if not isinstance(L, UnitLattice):
            raise ValueError("operator %r needs the unit lattice; use cw:%s" % (name, name))
        return table[name], name

    t, tn = pick(tnorm, UNIT_TNORMS, L.meet, "meet")
    s, sn = pick(tconorm, UNIT_TCONORMS, L.join, "join")
    return TriangularPair(L, t, s, tn, sn)


def verify_pair(P: TriangularPair, step: float = 0.05, samples: int = 300, seed: int = 0) -> list[str]:
    """Check the t-norm / t-conorm axioms; return a list of violations (empty when all hold).

    Finite lattices are checked exhaustively; others over ``grid(step)`` for
    pairs and a seeded sample of triples for associativity.
    """
    L = P.lattice
    elems = L.grid(step)
    problems = []
    if L.is_finite:
        triples = itertools.product(elems, repeat=3)
    else:
        rng = random.Random(seed)
        triples = [(rng.choice(elems), rng.choice(elems), rng.choice(elems)) for _ in range(samples)]
    for name, op, neutral in (("tnorm", P.tnorm, L.top), ("tconorm", P.tconorm, L.bottom)):
        for x in elems:
            if not L.eq(op(x, neutral), x):
                problems.append("%s neutral element fails at %s" % (name, L.format(x)))
        for x, y in itertools.product(elems, repeat=2):
            if not L.eq(op(x, y), op(y, x)):
                problems.append("%s not commutative at (%s,%s)" % (name, L.format(x), L.format(y)))
        for x in elems:
            for y in elems:
                for z in L.upper_covers(y, step):
                    if not L.leq(op(x, y), op(x, z)):
                        problems.append("%s not isotone at %s, %s<=%s" % (name, L.format(x), L.format(y), L.format(z)))
        for x, y, z in triples:
            if not L.eq(op(x, op(y, z)), op(op(x, y), z)):
                problems.append("%s not associative at (%s,%s,%s)" % (name, L.format(x), L.format(y), L.format(z)))
    return problems
