"""Complete lattices used as carriers for aggregation.

Four constructions are provided: the unit chain [0, 1], closed subintervals of
[0, 1] under the Kulisch-Miranker order, finite lattices given by their cover
relation, and coordinatewise products of any of these.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce
from typing import Any, Iterable, Sequence

TAU = 1e-9


class LatticeError(ValueError):
    """Raised when a poset is not a lattice, or an element is outside a carrier."""

    def __init__(self, law: str, pair: tuple | None = None, detail: str = ""):
        self.law = law
        self.pair = pair
        self.detail = detail
        msg = law
        if pair is not None:
            msg += " for (%s,%s)" % pair
        if detail:
            msg += ": " + detail
        super().__init__(msg)


def _split_top_level(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


class Lattice:
    """Common interface; subclasses supply ``leq``, ``join``, ``meet``, ``top`` and ``bottom``."""

    kind = "abstract"
    top: Any
    bottom: Any

    def leq(self, a, b) -> bool:
        raise NotImplementedError

    def join(self, a, b):
        raise NotImplementedError

    def meet(self, a, b):
        raise NotImplementedError

    def eq(self, a, b, tol: float | None = None) -> bool:
        return a == b

    def check(self, a):
        """Return ``a`` as a carrier element, or raise LatticeError."""
        raise NotImplementedError

    def join_all(self, xs: Iterable):
        return reduce(self.join, xs, self.bottom)

    def meet_all(self, xs: Iterable):
        return reduce(self.meet, xs, self.top)

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def grid(self, step: float = 0.05) -> list:
        """A finite, deterministic set of carrier elements used by checking regimes."""
        raise NotImplementedError

    def upper_covers(self, a, step: float = 0.05) -> list:
        """Immediate successors of ``a`` inside ``grid(step)``."""
        raise NotImplementedError

    def random_element(self, rng):
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return False

    @property
    def is_chain(self) -> bool:
        return False

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError


def _fmt_float(x: float) -> str:
    s = "%.9g" % x
    return "0" if s == "-0" else s


def _grid_values(step: float) -> list[float]:
    m = round(1.0 / step)
    if m <= 0 or not math.isclose(m * step, 1.0, abs_tol=1e-12):
        raise ValueError("grid step must divide 1, got %r" % step)
    return [i / m for i in range(m + 1)]


class UnitLattice(Lattice):
    """The chain [0, 1] with numeric order; comparisons use an absolute tolerance."""

    kind = "unit"
    top = 1.0
    bottom = 0.0

    def __init__(self, tol: float = TAU):
        self.tol = tol

    def __repr__(self):
        return "UnitLattice()"

    def __eq__(self, other):
        return isinstance(other, UnitLattice)

    def __hash__(self):
        return hash("unit")

    def leq(self, a, b):
        return a <= b + self.tol

    def join(self, a, b):
        return a if a >= b else b

    def meet(self, a, b):
        return a if a <= b else b

    def eq(self, a, b, tol=None):
        return abs(a - b) <= (self.tol if tol is None else tol)

    def check(self, a):
        return unit_value(a, self.tol)

    @property
    def is_chain(self):
        return True

    def grid(self, step=0.05):
        return _grid_values(step)

    def upper_covers(self, a, step=0.05):
        m = round(1.0 / step)
        nxt = round(a * m) + 1
        return [nxt / m] if nxt <= m else []

    def random_element(self, rng):
        return rng.random()

    def parse(self, text):
        try:
            v = float(text)
        except ValueError:
            raise LatticeError("not a unit value", detail=repr(text)) from None
        return unit_value(v, self.tol)

    def format(self, a):
        return _fmt_float(a)


def unit_value(v, tol: float = TAU) -> float:
    """Validate ``v`` as a member of [0, 1]; values within ``tol`` outside are clamped."""
    try:
        v = float(v)
    except (TypeError, ValueError):
        raise LatticeError("not a unit value", detail=repr(v)) from None
    if math.isnan(v) or v < -tol or v > 1.0 + tol:
        raise LatticeError("not in [0,1]", detail=repr(v))
    return min(max(v, 0.0), 1.0)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise LatticeError("interval with lo > hi", detail="[%r,%r]" % (self.lo, self.hi))

    def __iter__(self):
        return iter((self.lo, self.hi))

    def __repr__(self):
        return "[%s,%s]" % (_fmt_float(self.lo), _fmt_float(self.hi))


def interval(lo, hi, tol: float = TAU) -> Interval:
    lo, hi = unit_value(lo, tol), unit_value(hi, tol)
    if lo > hi:
        if lo - hi <= tol:
            lo = hi
        else:
            raise LatticeError("interval with lo > hi", detail="[%r,%r]" % (lo, hi))
    return Interval(lo, hi)


class IntervalLattice(Lattice):
    """Closed subintervals of [0, 1] with [a,b] <= [c,d] iff a <= c and b <= d."""

    kind = "interval"
    top = Interval(1.0, 1.0)
    bottom = Interval(0.0, 0.0)

    def __init__(self, tol: float = TAU):
        self.tol = tol

    def __repr__(self):
        return "IntervalLattice()"

    def __eq__(self, other):
        return isinstance(other, IntervalLattice)

    def __hash__(self):
        return hash("interval")

    def leq(self, a, b):
        return a.lo <= b.lo + self.tol and a.hi <= b.hi + self.tol

    def join(self, a, b):
        return Interval(max(a.lo, b.lo), max(a.hi, b.hi))

    def meet(self, a, b):
        return Interval(min(a.lo, b.lo), min(a.hi, b.hi))

    def eq(self, a, b, tol=None):
        t = self.tol if tol is None else tol
        return abs(a.lo - b.lo) <= t and abs(a.hi - b.hi) <= t

    def check(self, a):
        if isinstance(a, Interval):
            return interval(a.lo, a.hi, self.tol)
        try:
            lo, hi = a
        except (TypeError, ValueError):
            raise LatticeError("not an interval", detail=repr(a)) from None
        return interval(lo, hi, self.tol)

    def grid(self, step=0.05):
        vals = _grid_values(step)
        return [Interval(lo, hi) for i, lo in enumerate(vals) for hi in vals[i:]]

    def upper_covers(self, a, step=0.05):
        m = round(1.0 / step)
        i, j = round(a.lo * m), round(a.hi * m)
        out = []
        if i + 1 <= j:
            out.append(Interval((i + 1) / m, a.hi))
        if j + 1 <= m:
            out.append(Interval(a.lo, (j + 1) / m))
        return out

    def random_element(self, rng):
        x, y = rng.random(), rng.random()
        return Interval(min(x, y), max(x, y))

    def parse(self, text):
        parts = text.strip().split(":")
        if len(parts) != 2:
            raise LatticeError("not an interval", detail=repr(text))
        try:
            lo, hi = float(parts[0]), float(parts[1])
        except ValueError:
            raise LatticeError("not an interval", detail=repr(text)) from None
        return interval(lo, hi, self.tol)

    def format(self, a):
        return "%s:%s" % (_fmt_float(a.lo), _fmt_float(a.hi))


class FiniteLattice(Lattice):
    """A finite lattice with precomputed order, join and meet tables.

    Build instances with :func:`build_finite_lattice`.
    """

    kind = "finite"

    def __init__(self, elements, order, joins, meets, covers, name=None):
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._order = order
        self._join = joins
        self._meet = meets
        self.covers = tuple(covers)
        self.name = name
        n = len(self.elements)
        self.top = self.elements[reduce(lambda i, j: joins[i][j], range(n), 0)]
        self.bottom = self.elements[reduce(lambda i, j: meets[i][j], range(n), 0)]
        self._upper = {e: [] for e in self.elements}
        for lo, hi in self.covers:
            self._upper[lo].append(hi)

    def __repr__(self):
        return "FiniteLattice(%s)" % (self.name or ",".join(self.elements))

    def _idx(self, a):
        try:
            return self._index[a]
        except (KeyError, TypeError):
            raise LatticeError("unknown element", detail=repr(a)) from None

    def leq(self, a, b):
        return self._order[self._idx(a)][self._idx(b)]

    def join(self, a, b):
        return self.elements[self._join[self._idx(a)][self._idx(b)]]

    def meet(self, a, b):
        return self.elements[self._meet[self._idx(a)][self._idx(b)]]

    def check(self, a):
        self._idx(a)
        return a

    @property
    def is_finite(self):
        return True

    @property
    def is_chain(self):
        return all(self.comparable(a, b) for a, b in itertools.combinations(self.elements, 2))

    def grid(self, step=0.05):
        return list(self.elements)

    def upper_covers(self, a, step=0.05):
        return list(self._upper[self.check(a)])

    def random_element(self, rng):
        return self.elements[rng.randrange(len(self.elements))]

    def parse(self, text):
        return self.check(text.strip())

    def format(self, a):
        return str(a)


def build_finite_lattice(elements: Sequence[str], covers: Iterable[tuple[str, str]], name=None) -> FiniteLattice:
    """Validate a poset given by cover pairs ``(lower, upper)`` and tabulate its lattice operations.

    Raises LatticeError naming the first offending pair if the covers contain a
    cycle or some pair lacks a unique least upper / greatest lower bound.
    """
    elements = list(elements)
    if not elements:
        raise LatticeError("empty element list")
    seen = set()
    for e in elements:
        if e in seen:
            raise LatticeError("duplicate element", detail=str(e))
        seen.add(e)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    covers = list(covers)
    order = [[i == j for j in range(n)] for i in range(n)]
    for lo, hi in covers:
        for x in (lo, hi):
            if x not in index:
                raise LatticeError("unknown element", detail=str(x))
        if lo == hi:
            raise LatticeError("cycle", (lo, hi))
        order[index[lo]][index[hi]] = True
    # Warshall closure
    for k in range(n):
        for i in range(n):
            if order[i][k]:
                row_k = order[k]
                row_i = order[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    for i in range(n):
        for j in range(i + 1, n):
            if order[i][j] and order[j][i]:
                raise LatticeError("cycle", (elements[i], elements[j]))

    def least(candidates, below):
        # the unique element of candidates lying below every other candidate
        best = [c for c in candidates if all(below(c, d) for d in candidates)]
        return best[0] if len(best) == 1 else None

    joins = [[0] * n for _ in range(n)]
    meets = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            ups = [k for k in range(n) if order[i][k] and order[j][k]]
            lub = least(ups, lambda c, d: order[c][d])
            if lub is None:
                raise LatticeError("no unique lub", (elements[i], elements[j]))
            downs = [k for k in range(n) if order[k][i] and order[k][j]]
            glb = least(downs, lambda c, d: order[d][c])
            if glb is None:
                raise LatticeError("no unique glb", (elements[i], elements[j]))
            joins[i][j] = joins[j][i] = lub
            meets[i][j] = meets[j][i] = glb

    # Hasse diagram: keep only covering pairs of the closed order
    hasse = []
    for i in range(n):
        for j in range(n):
            if i != j and order[i][j]:
                if not any(k not in (i, j) and order[i][k] and order[k][j] for k in range(n)):
                    hasse.append((elements[i], elements[j]))
    return FiniteLattice(elements, order, joins, meets, hasse, name=name)


def parse_lattice_spec(text: str, name=None) -> FiniteLattice:
    """Read the ``elements:`` / ``cover:`` text format.

    Syntax errors raise ``SyntaxError`` with the 1-based line number in ``lineno``.
    """
    elements = None
    covers = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("elements", "cover"):
            err = SyntaxError("line %d: expected 'elements:' or 'cover:'" % lineno)
            err.lineno = lineno
            raise err
        toks = rest.split()
        if key == "elements":
            if elements is not None or not toks:
                err = SyntaxError("line %d: bad elements line" % lineno)
                err.lineno = lineno
                raise err
            elements = toks
        else:
            if len(toks) != 2:
                err = SyntaxError("line %d: cover needs exactly two names" % lineno)
                err.lineno = lineno
                raise err
            covers.append((toks[0], toks[1]))
    if elements is None:
        err = SyntaxError("missing 'elements:' line")
        err.lineno = 0
        raise err
    return build_finite_lattice(elements, covers, name=name)


def load_lattice_spec(path) -> FiniteLattice:
    with open(path, encoding="utf-8") as fh:
        return parse_lattice_spec(fh.read(), name=str(path))


class ProductLattice(Lattice):
    """Coordinatewise product of factor lattices; elements are tuples."""

    kind = "product"

    def __init__(self, factors: Sequence[Lattice]):
        if not factors:
            raise LatticeError("product needs at least one factor")
        self.factors = tuple(factors)
        self.top = tuple(f.top for f in self.factors)
        self.bottom = tuple(f.bottom for f in self.factors)

    def __repr__(self):
        return "ProductLattice(%s)" % ", ".join(map(repr, self.factors))

    def __eq__(self, other):
        return isinstance(other, ProductLattice) and self.factors == other.factors

    def __hash__(self):
        return hash(("product", self.factors))

    def leq(self, a, b):
        return all(f.leq(x, y) for f, x, y in zip(self.factors, a, b))

    def join(self, a, b):
        return tuple(f.join(x, y) for f, x, y in zip(self.factors, a, b))

    def meet(self, a, b):
        return tuple(f.meet(x, y) for f, x, y in zip(self.factors, a, b))

    def eq(self, a, b, tol=None):
        return all(f.eq(x, y, tol) for f, x, y in zip(self.factors, a, b))

    def check(self, a):
        try:
            coords = tuple(a)
        except TypeError:
            raise LatticeError("not a product element", detail=repr(a)) from None
        if len(coords) != len(self.factors):
            raise LatticeError("wrong arity for product element", detail=repr(a))
        return tuple(f.check(x) for f, x in zip(self.factors, coords))

    @property
    def is_finite(self):
        return all(f.is_finite for f in self.factors)

    @property
    def is_chain(self):
        return len(self.factors) == 1 and self.factors[0].is_chain

    def grid(self, step=0.05):
        return [tuple(p) for p in itertools.product(*(f.grid(step) for f in self.factors))]

    def upper_covers(self, a, step=0.05):
        out = []
        for i, f in enumerate(self.factors):
            for c in f.upper_covers(a[i], step):
                out.append(a[:i] + (c,) + a[i + 1:])
        return out

    def random_element(self, rng):
        return tuple(f.random_element(rng) for f in self.factors)

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise LatticeError("not a product element", detail=repr(text))
        parts = _split_top_level(text[1:-1], "|")
        if len(parts) != len(self.factors):
            raise LatticeError("wrong arity for product element", detail=repr(text))
        return tuple(f.parse(p) for f, p in zip(self.factors, parts))

    def format(self, a):
        return "(" + "|".join(f.format(x) for f, x in zip(self.factors, a)) + ")"


def product_lattice(factors: Sequence[Lattice]) -> ProductLattice:
    return ProductLattice(factors)


def chain(n: int) -> FiniteLattice:
    """The n-element chain 0 < 1 < ... < n-1."""
    names = [str(i) for i in range(n)]
    return build_finite_lattice(names, zip(names, names[1:]), name="chain%d" % n)


def diamond() -> FiniteLattice:
    """Boolean square {bot, a, b, top}."""
    return build_finite_lattice(
        ["bot", "a", "b", "top"],
        [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        name="diamond",
    )


def m3() -> FiniteLattice:
    """The non-distributive diamond M3 with atoms a, b, c."""
    return build_finite_lattice(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("bot", "b"), ("bot", "c"), ("a", "top"), ("b", "top"), ("c", "top")],
        name="M3",
    )


def n5() -> FiniteLattice:
    """The pentagon N5: bot < a < b < top and bot < c < top."""
    return build_finite_lattice(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("a", "b"), ("b", "top"), ("bot", "c"), ("c", "top")],
        name="N5",
    )


# module-level conveniences mirroring the method names
def leq(L: Lattice, a, b) -> bool:
    return L.leq(L.check(a), L.check(b))


def join(L: Lattice, a, b):
    return L.join(L.check(a), L.check(b))


def meet(L: Lattice, a, b):
    return L.meet(L.check(a), L.check(b))
