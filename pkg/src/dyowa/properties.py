"""Executable checks for algebraic properties of n-ary operators on a lattice.

Every verdict records the regime it was obtained on.  Failing verdicts of
universal properties carry a counterexample; holding verdicts of existential
properties (neutral/absorbing element, zero/one divisor) carry the element or
input that was found.  Witnesses are re-evaluated before a verdict is returned.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Iterable, Sequence

from .lattice import Lattice, UnitLattice
from .owa import WeightFamily, WeightVector, dyowa, lmowa, yager_owa
from .regime import Regime, default_regime
from .triangular import TriangularPair

PROPERTIES = ("A1A2", "ISO", "IP", "SP", "NP", "AP", "HP", "ZD", "OD", "ASP")
CLASSES = ("averaging", "conjunctive", "disjunctive")


class PropertyMismatch(ValueError):
    """The property is not meaningful for this operator or lattice."""


@dataclass(frozen=True)
class Operator:
    """An n-ary operator ``fn(tuple) -> element`` on ``lattice``.

    ``singular`` marks inputs where ``fn`` is not defined; checks skip them.
    """

    name: str
    lattice: Lattice
    arity: int
    fn: Callable[[tuple], Any] = field(repr=False)
    singular: Callable[[tuple], bool] | None = field(default=None, repr=False)

    def __call__(self, xs):
        return self.fn(tuple(xs))

    def defined(self, xs) -> bool:
        return self.singular is None or not self.singular(tuple(xs))

    def with_arity(self, n: int) -> "Operator":
        if n == self.arity:
            return self
        raise PropertyMismatch("%s is fixed at arity %d" % (self.name, self.arity))


class _NaryOperator(Operator):
    """Operator defined for every arity; ``make(n)`` rebuilds it."""

    def __init__(self, name, lattice, arity, fn, singular=None, make=None):
        super().__init__(name, lattice, arity, fn, singular)
        object.__setattr__(self, "_make", make)

    def with_arity(self, n):
        return self if n == self.arity else self._make(n)


def _mixed(xs):
    p = math.prod(xs)
    q = math.prod(1.0 - x for x in xs)
    if p == 0.0 and q == 0.0:
        return 0.0
    return p / (p + q)


def _mixed_singular(xs):
    return math.prod(xs) == 0.0 and math.prod(1.0 - x for x in xs) == 0.0


_TABLE = {
    "min": (min, None),
    "max": (max, None),
    "arith": (lambda xs: sum(xs) / len(xs), None),
    "prod": (math.prod, None),
    "probsum": (lambda xs: 1.0 - math.prod(1.0 - x for x in xs), None),
    "mixed": (_mixed, _mixed_singular),
}


def table_function(name: str, n: int = 2) -> Operator:
    """The reference functions ``min, max, arith, prod, probsum, mixed`` on [0, 1]^n.

    ``mixed`` is prod(x) / (prod(x) + prod(1-x)); inputs holding both 0 and 1
    make it 0/0 and are marked singular.
    """
    try:
        fn, sing = _TABLE[name]
    except KeyError:
        raise ValueError("unknown reference function %r" % name) from None
    return _NaryOperator(name, UnitLattice(), n, lambda xs: fn(xs), sing, lambda k: table_function(name, k))


def fold_operator(pair: TriangularPair, n: int, which: str = "tnorm") -> Operator:
    """The n-ary left fold of a pair's t-norm (or t-conorm) as an operator."""
    op = pair.tnorm if which == "tnorm" else pair.tconorm
    name = pair.tnorm_name if which == "tnorm" else pair.tconorm_name
    return _NaryOperator("%s:%s" % (which, name), pair.lattice, n, lambda xs: reduce(op, xs),
                         make=lambda k: fold_operator(pair, k, which))


def dyowa_operator(F: WeightFamily) -> Operator:
    return Operator("dyowa[%s]" % F.name, F.pair.lattice, F.arity, lambda xs: dyowa(F, xs).value)


def lmowa_operator(w: WeightVector) -> Operator:
    return Operator("lmowa", w.pair.lattice, len(w.weights), lambda xs: lmowa(w, xs).value)


def yager_operator(w: Sequence[float]) -> Operator:
    w = tuple(w)
    return Operator("owa", UnitLattice(), len(w), lambda xs: yager_owa(w, xs))


@dataclass(frozen=True)
class PropertyVerdict:
    prop: str
    regime: str
    holds: bool
    witness: dict | None = None
    classes: tuple = ()
    checked: int = 0

    def line(self, L: Lattice | None = None) -> str:
        """``PROP <id> <regime> HOLDS|FAIL <witness...>``"""
        parts = ["PROP", self.prop, self.regime, "HOLDS" if self.holds else "FAIL"]
        if self.classes:
            parts.append(",".join(self.classes))
        if self.witness:
            parts.extend(_fmt_witness(self.witness, L))
        return " ".join(parts)


def _fmt_value(v, L):
    if L is None:
        return repr(v)
    if isinstance(v, tuple) and not (L.kind == "product" and len(v) == len(L.factors) and not isinstance(v[0], tuple)):
        return "(" + ",".join(_fmt_value(x, L) for x in v) + ")"
    try:
        return L.format(v)
    except Exception:
        return repr(v)


def _fmt_witness(w: dict, L) -> list[str]:
    out = []
    for k, v in w.items():
        if k == "refutations":
            out.append("no-candidate(%d)" % len(v))
        elif k in ("perm", "position"):
            out.append("%s=%s" % (k, v))
        elif k == "lam":
            out.append("lam=%s" % _fmt_float(v))
        elif isinstance(v, dict):
            out.append("%s=%s" % (k, ";".join("%s:%s" % (kk, _fmt_value(vv, L)) for kk, vv in v.items())))
        else:
            out.append("%s=%s" % (k, _fmt_value(v, L)))
    return out


def _fmt_float(x):
    return "%.9g" % x


# --- witness re-evaluation -------------------------------------------------

def _ev(op: Operator, xs):
    xs = tuple(xs)
    return op(xs) if op.defined(xs) else None


def _violates(op: Operator, prop: str, w: dict) -> bool:
    """True when the stored witness really breaks (or, for existential properties, satisfies) ``prop``."""
    L = op.lattice
    n = op.arity
    if prop == "A1A2":
        v = _ev(op, w["input"])
        return v is not None and not L.eq(v, w["input"][0])
    if prop == "ISO":
        fx, fy = _ev(op, w["x"]), _ev(op, w["y"])
        return (all(L.leq(a, b) for a, b in zip(w["x"], w["y"])) and fx is not None and fy is not None
                and not L.leq(fx, fy))
    if prop == "IP":
        v = _ev(op, (w["x"],) * n)
        return v is not None and not L.eq(v, w["x"])
    if prop == "SP":
        xs = w["x"]
        v, u = _ev(op, xs), _ev(op, tuple(xs[i] for i in w["perm"]))
        return v is not None and u is not None and not L.eq(v, u)
    if prop in ("NP", "AP"):
        if "refutations" in w:
            return all(_refutes(op, prop, r) for r in w["refutations"])
        return True
    if prop == "HP":
        lam, xs = w["lam"], w["x"]
        v, u = _ev(op, tuple(lam * x for x in xs)), _ev(op, xs)
        return v is not None and u is not None and not L.eq(v, lam * u)
    if prop == "ZD":
        v = _ev(op, w["x"])
        return all(not L.eq(x, L.bottom) for x in w["x"]) and v is not None and L.eq(v, L.bottom)
    if prop == "OD":
        v = _ev(op, w["x"])
        return all(not L.eq(x, L.top) for x in w["x"]) and v is not None and L.eq(v, L.top)
    if prop == "ASP":
        x, y, z = w["x"], w["y"], w["z"]
        inner_r, inner_l = _ev(op, (y, z)), _ev(op, (x, y))
        if inner_r is None or inner_l is None:
            return False
        lhs, rhs = _ev(op, (x, inner_r)), _ev(op, (inner_l, z))
        return lhs is not None and rhs is not None and not L.eq(lhs, rhs)
    raise ValueError(prop)


def _refutes(op, prop, r):
    L = op.lattice
    if prop == "NP":
        e, i, t = r
        n = op.arity
        v = _ev(op, (e,) * i + (t,) + (e,) * (n - i - 1))
        return v is not None and not L.eq(v, t)
    a, xs = r
    v = _ev(op, xs)
    return v is not None and not L.eq(v, a)


def _verdict(op, prop, regime, holds, witness=None, checked=0):
    if witness is not None and not _violates(op, prop, witness):
        raise AssertionError("witness for %s does not reproduce: %r" % (prop, witness))
    return PropertyVerdict(prop, regime.label(), holds, witness, checked=checked)


# --- individual properties ------------------------------------------------

def _tuples(op, regime, n=None):
    return regime.tuples(op.lattice, op.arity if n is None else n)


def _check_boundary(op, regime):
    L = op.lattice
    for e in (L.bottom, L.top):
        xs = (e,) * op.arity
        v = _ev(op, xs)
        if v is not None and not L.eq(v, e):
            return _verdict(op, "A1A2", regime, False, {"input": xs, "got": v})
    return _verdict(op, "A1A2", regime, True, checked=2)


def _iso_pairs(op, regime, probes):
    L = op.lattice
    n = op.arity
    for x, y in probes:
        yield tuple(x), tuple(y)
    for xs in _tuples(op, regime):
        for i in range(n):
            for c in L.upper_covers(xs[i], regime.step):
                yield xs, xs[:i] + (c,) + xs[i + 1:]


def _check_iso(op, regime, probes=()):
    L = op.lattice
    count = 0
    for x, y in _iso_pairs(op, regime, probes):
        if not all(L.leq(a, b) for a, b in zip(x, y)):
            continue
        fx, fy = _ev(op, x), _ev(op, y)
        if fx is None or fy is None:
            continue
        count += 1
        if not L.leq(fx, fy):
            return _verdict(op, "ISO", regime, False, {"x": x, "y": y}, count)
    return _verdict(op, "ISO", regime, True, checked=count)


def _check_ip(op, regime):
    L = op.lattice
    count = 0
    for x in regime.elements(L):
        v = _ev(op, (x,) * op.arity)
        if v is None:
            continue
        count += 1
        if not L.eq(v, x):
            return _verdict(op, "IP", regime, False, {"x": x}, count)
    return _verdict(op, "IP", regime, True, checked=count)


def _check_sp(op, regime):
    L = op.lattice
    n = op.arity
    if n <= 4:
        perms = list(itertools.permutations(range(n)))[1:]
    else:
        rng = regime.rng()
        perms = []
        for _ in range(24):
            p = list(range(n))
            rng.shuffle(p)
            perms.append(tuple(p))
    count = 0
    for xs in _tuples(op, regime):
        v = _ev(op, xs)
        if v is None:
            continue
        for p in perms:
            u = _ev(op, tuple(xs[i] for i in p))
            if u is None:
                continue
            count += 1
            if not L.eq(v, u):
                return _verdict(op, "SP", regime, False, {"x": xs, "perm": p}, count)
    return _verdict(op, "SP", regime, True, checked=count)


def _np_probes(op, regime, e):
    n = op.arity
    for t in regime.elements(op.lattice):
        for i in range(n):
            yield t, i, (e,) * i + (t,) + (e,) * (n - i - 1)


def _ap_probes(op, regime, a):
    n = op.arity
    if n == 1:
        yield (a,)
        return
    for rest in _tuples(op, regime, n - 1):
        for i in range(n):
            yield rest[:i] + (a,) + rest[i:]


def _check_np(op, regime):
    L = op.lattice
    refutations = []
    count = 0
    for e in regime.elements(L):
        bad = None
        for t, i, xs in _np_probes(op, regime, e):
            v = _ev(op, xs)
            if v is None:
                continue
            count += 1
            if not L.eq(v, t):
                bad = (e, i, t)
                break
        if bad is None:
            return _verdict(op, "NP", regime, True, {"e": e}, count)
        refutations.append(bad)
    return _verdict(op, "NP", regime, False, {"refutations": refutations}, count)


def _check_ap(op, regime):
    L = op.lattice
    refutations = []
    count = 0
    for a in regime.elements(L):
        bad = None
        for xs in _ap_probes(op, regime, a):
            v = _ev(op, xs)
            if v is None:
                continue
            count += 1
            if not L.eq(v, a):
                bad = (a, xs)
                break
        if bad is None:
            return _verdict(op, "AP", regime, True, {"a": a}, count)
        refutations.append(bad)
    return _verdict(op, "AP", regime, False, {"refutations": refutations}, count)


def _check_hp(op, regime):
    L = op.lattice
    if not isinstance(L, UnitLattice):
        raise PropertyMismatch("HP needs scalar multiplication, only available on the unit lattice")
    count = 0
    lams = regime.elements(L)
    for xs in _tuples(op, regime):
        u = _ev(op, xs)
        if u is None:
            continue
        for lam in lams:
            v = _ev(op, tuple(lam * x for x in xs))
            if v is None:
                continue
            count += 1
            if not L.eq(v, lam * u):
                return _verdict(op, "HP", regime, False, {"lam": lam, "x": xs}, count)
    return _verdict(op, "HP", regime, True, checked=count)


def _check_divisor(op, regime, prop):
    L = op.lattice
    target = L.bottom if prop == "ZD" else L.top
    count = 0
    for xs in _tuples(op, regime):
        if any(L.eq(x, target) for x in xs):
            continue
        v = _ev(op, xs)
        if v is None:
            continue
        count += 1
        if L.eq(v, target):
            return _verdict(op, prop, regime, True, {"x": xs}, count)
    return _verdict(op, prop, regime, False, checked=count)


def _check_asp(op, regime):
    L = op.lattice
    if op.arity != 2:
        raise PropertyMismatch("ASP is defined for binary operators only")
    count = 0
    for x, y, z in regime.tuples(L, 3):
        w = {"x": x, "y": y, "z": z}
        yz, xy = _ev(op, (y, z)), _ev(op, (x, y))
        if yz is None or xy is None:
            continue
        lhs, rhs = _ev(op, (x, yz)), _ev(op, (xy, z))
        if lhs is None or rhs is None:
            continue
        count += 1
        if not L.eq(lhs, rhs):
            return _verdict(op, "ASP", regime, False, w, count)
    return _verdict(op, "ASP", regime, True, checked=count)


def check_property(op: Operator, prop: str, regime: Regime | None = None, probes: Iterable = ()) -> PropertyVerdict:
    """Check one property of ``op`` over ``regime`` (default: exhaustive / grid / sampled by lattice kind).

    ``probes`` are extra ``(x, y)`` input pairs tried first by the ISO check.
    """
    regime = regime or default_regime(op.lattice)
    prop = prop.upper()
    if prop == "A1A2":
        return _check_boundary(op, regime)
    if prop == "ISO":
        return _check_iso(op, regime, probes)
    if prop == "IP":
        return _check_ip(op, regime)
    if prop == "SP":
        return _check_sp(op, regime)
    if prop == "NP":
        return _check_np(op, regime)
    if prop == "AP":
        return _check_ap(op, regime)
    if prop == "HP":
        return _check_hp(op, regime)
    if prop in ("ZD", "OD"):
        return _check_divisor(op, regime, prop)
    if prop == "ASP":
        return _check_asp(op, regime)
    raise PropertyMismatch("unknown property %r" % prop)


def check_boundary_isotone(op: Operator, regime: Regime | None = None, probes: Iterable = ()) -> tuple[PropertyVerdict, PropertyVerdict]:
    """Boundary conditions (A1, A2) and isotonicity, as two verdicts."""
    regime = regime or default_regime(op.lattice)
    return _check_boundary(op, regime), _check_iso(op, regime, probes)


def classify_aggregation(op: Operator, regime: Regime | None = None) -> PropertyVerdict:
    """Place ``op`` relative to min and max of its inputs.

    The verdict's ``classes`` lists every class consistent with all tested
    inputs, or ``("mixed",)`` with one breaking input per class in ``witness``.
    """
    L = op.lattice
    regime = regime or default_regime(L)
    breaks: dict[str, tuple] = {}
    count = 0
    for xs in _tuples(op, regime):
        v = _ev(op, xs)
        if v is None:
            continue
        count += 1
        lo, hi = L.meet_all(xs), L.join_all(xs)
        if "averaging" not in breaks and not (L.leq(lo, v) and L.leq(v, hi)):
            breaks["averaging"] = xs
        if "conjunctive" not in breaks and not L.leq(v, lo):
            breaks["conjunctive"] = xs
        if "disjunctive" not in breaks and not L.leq(hi, v):
            breaks["disjunctive"] = xs
        if len(breaks) == 3:
            break
    classes = tuple(c for c in CLASSES if c not in breaks)
    if classes:
        return PropertyVerdict("class", regime.label(), True, None, classes, count)
    for c, xs in breaks.items():
        v = _ev(op, xs)
        lo, hi = L.meet_all(xs), L.join_all(xs)
        ok = {"averaging": L.leq(lo, v) and L.leq(v, hi), "conjunctive": L.leq(v, lo), "disjunctive": L.leq(hi, v)}[c]
        if ok:
            raise AssertionError("classification witness for %s does not reproduce" % c)
    return PropertyVerdict("class", regime.label(), True, dict(breaks), ("mixed",), count)


def recheck(op: Operator, verdict: PropertyVerdict) -> bool:
    """Re-evaluate a verdict's witness; True when it still demonstrates the verdict."""
    if verdict.witness is None:
        return True
    if verdict.prop == "class":
        return True
    return _violates(op, verdict.prop, verdict.witness)
