"""Ordered weighted averaging: Yager OWA, Lizasoain-Moreno OWA and dynamic (input-weighted) OWA."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Sequence

from .lattice import TAU, Interval, IntervalLattice, Lattice, UnitLattice
from .lm import lm_transform
from .regime import Regime, default_regime
from .triangular import TriangularPair


class WeightError(ValueError):
    """A weight vector or family output is not a valid vector of weights."""

    def __init__(self, msg, weights=None, input=None):
        super().__init__(msg)
        self.weights = weights
        self.input = input


@dataclass(frozen=True)
class Verification:
    """Outcome of a weight vector / family check.

    ``failed`` names the first violated condition: ``"sum"`` (the t-conorm fold
    of the weights is not top), ``"distributive"`` or ``"symmetry"``.
    """

    ok: bool
    regime: str
    failed: str | None = None
    witness: dict | None = None
    checked: int = 0

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class WeightVector:
    weights: tuple
    pair: TriangularPair
    verification: Verification | None = None

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)


def weight_vector(weights: Sequence, pair: TriangularPair) -> WeightVector:
    L = pair.lattice
    return WeightVector(tuple(L.check(w) for w in weights), pair)


@dataclass(frozen=True)
class AggregationResult:
    value: Any
    chain: tuple
    weights_used: tuple


def _sum_is_top(pair: TriangularPair, weights) -> bool:
    L = pair.lattice
    return L.eq(reduce(pair.tconorm, weights), L.top)


def _owa_fold(pair: TriangularPair, weights, chain):
    t = pair.tnorm
    return reduce(pair.tconorm, (t(w, b) for w, b in zip(weights, chain)))


def yager_owa(w, x: Sequence[float], tol: float = TAU) -> float:
    """Sum of ``w[i]`` times the i-th largest input."""
    weights = list(w.weights if isinstance(w, WeightVector) else w)
    if len(weights) != len(x):
        raise ValueError("arity mismatch: %d weights, %d inputs" % (len(weights), len(x)))
    if any(wi < -tol or wi > 1 + tol for wi in weights) or abs(sum(weights) - 1.0) > tol:
        raise WeightError("weights must lie in [0,1] and sum to 1", weights=tuple(weights))
    xs = sorted(x, reverse=True)
    total = 0.0
    for wi, xi in zip(weights, xs):
        total += wi * xi
    return total


def min_weights(n: int) -> tuple:
    return (0.0,) * (n - 1) + (1.0,)


def max_weights(n: int) -> tuple:
    return (1.0,) + (0.0,) * (n - 1)


def arith_weights(n: int) -> tuple:
    return (1.0 / n,) * n


def median_weights(n: int) -> tuple:
    w = [0.0] * n
    if n % 2:
        w[n // 2] = 1.0
    else:
        w[n // 2 - 1] = w[n // 2] = 0.5
    return tuple(w)


def _vector_elements(L: Lattice, regime: Regime):
    if regime.kind == "sampled":
        rng = regime.rng()
        elems = L.grid(regime.step)
        return [rng.choice(elems) for _ in range(regime.samples)]
    return regime.elements(L)


def check_weight_vector(w: WeightVector, regime: Regime | None = None) -> Verification:
    """Check the t-conorm fold of ``w`` is top and that every ``a`` distributes over it."""
    pair = w.pair
    L = pair.lattice
    regime = regime or default_regime(L)
    if not _sum_is_top(pair, w.weights):
        return Verification(False, regime.label(), "sum", {"weights": w.weights})
    total = reduce(pair.tconorm, w.weights)
    count = 0
    for a in _vector_elements(L, regime):
        count += 1
        lhs = pair.tnorm(a, total)
        rhs = reduce(pair.tconorm, (pair.tnorm(a, wi) for wi in w.weights))
        if not L.eq(lhs, rhs):
            return Verification(False, regime.label(), "distributive", {"a": a}, count)
    return Verification(True, regime.label(), checked=count)


def lmowa(w: WeightVector, a: Sequence) -> AggregationResult:
    """t-conorm fold of ``w[i] (t-norm) b[i]`` over the LM chain ``b`` of ``a``."""
    if len(w.weights) != len(a):
        raise ValueError("arity mismatch: %d weights, %d inputs" % (len(w.weights), len(a)))
    if not _sum_is_top(w.pair, w.weights):
        raise WeightError("weights do not fold to top", weights=w.weights)
    chain = lm_transform(w.pair.lattice, a)
    return AggregationResult(_owa_fold(w.pair, w.weights, chain), chain, w.weights)


@dataclass(frozen=True)
class WeightFamily:
    """A rule producing one weight vector per input vector.

    ``evaluator`` maps an input tuple to a tuple of weights and must be pure.
    ``symmetric`` claims the weights do not change under input permutations.
    """

    name: str
    arity: int
    pair: TriangularPair
    evaluator: Callable[[tuple], tuple] = field(repr=False)
    symmetric: bool = False

    def __call__(self, a) -> WeightVector:
        return WeightVector(tuple(self.evaluator(tuple(a))), self.pair)


def _proportional(L, n):
    def weights(a):
        if max(a) - min(a) <= TAU:
            return (1.0 / n,) * n
        b = lm_transform(L, a)
        s = sum(b)  # summed in sorted order so permutations give identical weights
        return tuple(x / s for x in b)

    return weights


def _const_interval(n):
    v = Interval(1.0 / n, 1.0 / n)
    return (v,) * n


def builtin_family(name: str, n: int, pair: TriangularPair, weights: Sequence | None = None) -> WeightFamily:
    """Construct ``gamma1``, ``gamma2``, ``proportional`` or ``constant`` families.

    ``constant`` uses ``weights`` when given; on the interval lattice it
    defaults to ``[1/n, 1/n]`` in every position.
    """
    if n < 1:
        raise ValueError("arity must be positive")
    L = pair.lattice
    if name in ("gamma1", "gamma2"):
        if not pair.is_lattice_pair:
            raise ValueError("%s needs the (meet, join) pair, got %s/%s" % (name, pair.tnorm_name, pair.tconorm_name))
        top, bot = L.top, L.bottom
        w = (top,) + (bot,) * (n - 1) if name == "gamma1" else (bot,) * (n - 1) + (top,)
        return WeightFamily(name, n, pair, lambda a, w=w: w, symmetric=True)
    if name == "proportional":
        if not (isinstance(L, UnitLattice) and pair.tnorm_name == "prod" and pair.tconorm_name == "luk"):
            raise ValueError("proportional needs the unit lattice with (prod, luk)")
        return WeightFamily(name, n, pair, _proportional(L, n), symmetric=True)
    if name == "constant":
        if weights is None:
            if not isinstance(L, IntervalLattice):
                raise ValueError("constant family needs explicit weights")
            weights = _const_interval(n)
        w = tuple(L.check(x) for x in weights)
        if len(w) != n:
            raise ValueError("constant family: %d weights for arity %d" % (len(w), n))
        if not _sum_is_top(pair, w):
            raise WeightError("constant weights do not fold to top", weights=w)
        return WeightFamily(name, n, pair, lambda a, w=w: w, symmetric=True)
    raise ValueError("unknown family %r" % name)


def _permutations(n, regime: Regime, rng):
    if n <= 4:
        return list(itertools.permutations(range(n)))
    out = []
    for _ in range(24):
        p = list(range(n))
        rng.shuffle(p)
        out.append(tuple(p))
    return out


def check_weight_family(F: WeightFamily, regime: Regime | None = None) -> Verification:
    """Check every evaluated weight vector, distributivity over the regime's elements, and any symmetry claim."""
    pair = F.pair
    L = pair.lattice
    regime = regime or default_regime(L)
    rng = regime.rng()
    cs = regime.elements(L)
    perms = _permutations(F.arity, regime, rng)
    count = 0
    for a in regime.tuples(L, F.arity, rng):
        count += 1
        w = tuple(F.evaluator(a))
        if len(w) != F.arity:
            return Verification(False, regime.label(), "sum", {"a": a, "weights": w}, count)
        if not _sum_is_top(pair, w):
            return Verification(False, regime.label(), "sum", {"a": a, "weights": w}, count)
        total = reduce(pair.tconorm, w)
        for c in cs:
            lhs = pair.tnorm(c, total)
            rhs = reduce(pair.tconorm, (pair.tnorm(c, wi) for wi in w))
            if not L.eq(lhs, rhs):
                return Verification(False, regime.label(), "distributive", {"a": a, "c": c}, count)
        if F.symmetric:
            for p in perms:
                wp = tuple(F.evaluator(tuple(a[i] for i in p)))
                if not all(L.eq(x, y) for x, y in zip(w, wp)):
                    return Verification(False, regime.label(), "symmetry", {"a": a, "perm": p}, count)
    return Verification(True, regime.label(), checked=count)


def dyowa(F: WeightFamily, a: Sequence) -> AggregationResult:
    """Aggregate ``a`` with the weights ``F`` assigns to it."""
    if len(a) != F.arity:
        raise ValueError("arity mismatch: family has arity %d, input has %d" % (F.arity, len(a)))
    pair = F.pair
    a = tuple(pair.lattice.check(x) for x in a)
    w = tuple(F.evaluator(a))
    if len(w) != F.arity or not _sum_is_top(pair, w):
        raise WeightError("family %s gave invalid weights at this input" % F.name, weights=w, input=a)
    chain = lm_transform(pair.lattice, a)
    return AggregationResult(_owa_fold(pair, w, chain), chain, w)
