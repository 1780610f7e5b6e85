import itertools
import random

import pytest
from hypothesis import given, strategies as st

from dyowa.lattice import Interval, IntervalLattice, UnitLattice, diamond, m3
from dyowa.owa import (
    WeightError,
    WeightFamily,
    arith_weights,
    builtin_family,
    check_weight_family,
    check_weight_vector,
    dyowa,
    lmowa,
    median_weights,
    min_weights,
    max_weights,
    weight_vector,
    yager_owa,
)
from dyowa.regime import Regime
from dyowa.triangular import lattice_pair, lift_componentwise, unit_pair

GRID = [i / 20 for i in range(21)]


@pytest.fixture
def prodluk():
    return unit_pair("prod", "luk")


@pytest.fixture
def cw_intervals():
    return lift_componentwise(unit_pair("prod", "luk"), IntervalLattice())


# --- Yager OWA --------------------------------------------------------------

def test_yager_min_max():
    x = (0.3, 0.9, 0.1, 0.5)
    assert yager_owa(min_weights(4), x) == 0.1
    assert yager_owa(max_weights(4), x) == 0.9


def test_yager_mean_and_median():
    assert yager_owa(arith_weights(3), (0.3, 0.6, 0.9)) == pytest.approx(0.6, abs=1e-12)
    assert median_weights(4) == (0.0, 0.5, 0.5, 0.0)
    assert yager_owa(median_weights(4), (0.1, 0.9, 0.4, 0.8)) == pytest.approx(0.6, abs=1e-12)
    assert yager_owa(median_weights(3), (0.1, 0.9, 0.4)) == 0.4


def test_yager_errors():
    with pytest.raises(ValueError, match="arity"):
        yager_owa((0.5, 0.5), (0.1, 0.2, 0.3))
    with pytest.raises(WeightError):
        yager_owa((0.5, 0.6), (0.1, 0.2))
    with pytest.raises(WeightError):
        yager_owa((1.5, -0.5), (0.1, 0.2))


# --- weight vectors ---------------------------------------------------------

def test_weight_vector_prodluk(prodluk):
    v = check_weight_vector(weight_vector((0.3, 0.7), prodluk))
    assert v.ok and v.regime.startswith("grid")
    assert v.checked == 21


def test_weight_vector_lattice_pair(M3):
    v = check_weight_vector(weight_vector(("top", "bot", "bot"), lattice_pair(M3)))
    assert v.ok and v.regime == "exhaustive" and v.checked == 5


def test_weight_vector_probsum_fails_sum():
    v = check_weight_vector(weight_vector((0.5, 0.5), unit_pair("prod", "probsum")))
    assert not v.ok and v.failed == "sum"


def test_weight_vector_not_distributive():
    # (max, prod) on the unit interval: x*max(w1,w2) == max(x*w1, x*w2) holds,
    # but (luk, max): luk(a, 1) = a vs max(luk(a,.5), luk(a,.5)) fails
    v = check_weight_vector(weight_vector((0.5, 1.0), unit_pair("luk", "max")))
    assert v.ok
    v = check_weight_vector(weight_vector((0.5, 0.5), unit_pair("luk", "luk")))
    assert not v.ok and v.failed == "distributive"
    a = v.witness["a"]
    assert a > 0


# --- LMOWA ------------------------------------------------------------------

@given(st.lists(st.floats(0, 1), min_size=2, max_size=6), st.randoms(use_true_random=False))
def test_lmowa_equals_yager(x, rnd):
    raw = [rnd.random() + 1e-3 for _ in x]
    w = tuple(r / sum(raw) for r in raw)
    P = unit_pair("prod", "luk")
    r = lmowa(weight_vector(w, P), x)
    assert abs(r.value - yager_owa(w, x)) <= 1e-9


@pytest.mark.parametrize("make", [m3, diamond])
def test_lmowa_first_weight_gives_join(make):
    L = make()
    P = lattice_pair(L)
    w = weight_vector((L.top, L.bottom, L.bottom), P)
    for a in itertools.product(L.elements, repeat=3):
        assert lmowa(w, a).value == L.join_all(a)


def test_lmowa_constant_input(prodluk, M3):
    w = weight_vector((0.2, 0.3, 0.5), prodluk)
    for x in GRID:
        assert abs(lmowa(w, (x, x, x)).value - x) <= 1e-9
    wm = weight_vector(("bot", "top"), lattice_pair(M3))
    for x in M3.elements:
        assert lmowa(wm, (x, x)).value == x


def test_lmowa_errors(prodluk):
    with pytest.raises(ValueError, match="arity"):
        lmowa(weight_vector((0.5, 0.5), prodluk), (0.1, 0.2, 0.3))
    with pytest.raises(WeightError):
        lmowa(weight_vector((0.5, 0.3), prodluk), (0.1, 0.2))


# --- families ---------------------------------------------------------------

def test_gamma_weights(M3):
    P = lattice_pair(M3)
    assert builtin_family("gamma1", 3, P)(("a", "b", "c")).weights == ("top", "bot", "bot")
    assert builtin_family("gamma2", 3, P)(("a", "b", "c")).weights == ("bot", "bot", "top")


def test_proportional_weights(prodluk):
    w = builtin_family("proportional", 3, prodluk)((0.5, 0.2, 0.1)).weights
    assert w == pytest.approx((0.625, 0.25, 0.125), abs=1e-12)
    assert builtin_family("proportional", 3, prodluk)((0.0, 0.0, 0.0)).weights == (1 / 3,) * 3
    assert builtin_family("proportional", 2, prodluk)((0.4, 0.4)).weights == (0.5, 0.5)


def test_constant_interval_family(cw_intervals):
    F = builtin_family("constant", 2, cw_intervals)
    half = Interval(0.5, 0.5)
    rng = random.Random(1)
    for _ in range(20):
        a = (cw_intervals.lattice.random_element(rng), cw_intervals.lattice.random_element(rng))
        assert F(a).weights == (half, half)


def test_family_incompatibilities(prodluk, M3, cw_intervals):
    with pytest.raises(ValueError):
        builtin_family("gamma1", 3, prodluk)
    with pytest.raises(ValueError):
        builtin_family("proportional", 3, lattice_pair(M3))
    with pytest.raises(ValueError):
        builtin_family("proportional", 3, unit_pair("prod", "probsum"))
    with pytest.raises(ValueError):
        builtin_family("constant", 2, prodluk)
    with pytest.raises(WeightError):
        builtin_family("constant", 2, prodluk, weights=(0.5, 0.4))
    with pytest.raises(ValueError):
        builtin_family("constant", 2, prodluk, weights=(1.0,))
    with pytest.raises(ValueError):
        builtin_family("owa", 2, prodluk)
    with pytest.raises(ValueError):
        builtin_family("gamma1", 0, lattice_pair(M3))


def test_check_family_proportional(prodluk):
    v = check_weight_family(builtin_family("proportional", 3, prodluk), Regime("sampled", samples=1000, seed=0))
    assert v.ok and v.checked == 1000


def test_check_family_gamma1_m3(M3):
    v = check_weight_family(builtin_family("gamma1", 2, lattice_pair(M3)))
    assert v.ok and v.regime == "exhaustive" and v.checked == 25


def test_check_family_probsum_fails():
    P = unit_pair("prod", "probsum")
    F = WeightFamily("halves", 2, P, lambda a: (0.5, 0.5))
    v = check_weight_family(F, Regime("sampled", samples=10, seed=0))
    assert not v.ok and v.failed == "sum" and "a" in v.witness


def test_check_family_false_symmetry_claim(prodluk):
    F = WeightFamily("first", 2, prodluk, lambda a: (a[0], 1 - a[0]), symmetric=True)
    v = check_weight_family(F)
    assert not v.ok and v.failed == "symmetry"
    a, p = v.witness["a"], v.witness["perm"]
    assert F.evaluator(a) != F.evaluator(tuple(a[i] for i in p))


# --- DYOWA ------------------------------------------------------------------

@pytest.mark.parametrize("make", [m3, diamond])
def test_gamma_dyowa_join_meet(make):
    L = make()
    P = lattice_pair(L)
    g1, g2 = builtin_family("gamma1", 3, P), builtin_family("gamma2", 3, P)
    for a in itertools.product(L.elements, repeat=3):
        assert dyowa(g1, a).value == L.join_all(a)
        assert dyowa(g2, a).value == L.meet_all(a)


def test_proportional_not_monotone(prodluk):
    F = builtin_family("proportional", 3, prodluk)
    r1 = dyowa(F, (0.5, 0.2, 0.1))
    r2 = dyowa(F, (0.5, 0.22, 0.2))
    assert abs(r1.value - 0.375) <= 1e-9
    assert abs(r2.value - 0.3678260869565218) <= 1e-9
    assert abs(r2.value - 0.368) <= 1e-3
    # inputs increase coordinatewise, output decreases
    assert r1.value > r2.value
    assert r1.chain == (0.5, 0.2, 0.1)
    assert r1.weights_used == pytest.approx((0.625, 0.25, 0.125))


def test_interval_constant_family(cw_intervals):
    F = builtin_family("constant", 2, cw_intervals)
    r = dyowa(F, (Interval(0.2, 0.6), Interval(0.4, 0.5)))
    assert IntervalLattice().eq(r.value, Interval(0.3, 0.55))
    assert r.chain == (Interval(0.4, 0.6), Interval(0.2, 0.5))


def test_dyowa_errors(prodluk):
    F = builtin_family("proportional", 3, prodluk)
    with pytest.raises(ValueError, match="arity"):
        dyowa(F, (0.1, 0.2))
    bad = WeightFamily("bad", 2, prodluk, lambda a: (0.5, 0.1) if a[0] > 0.5 else (0.5, 0.5))
    assert dyowa(bad, (0.1, 0.2)).value == pytest.approx(0.15)
    with pytest.raises(WeightError) as exc:
        dyowa(bad, (0.9, 0.2))
    assert exc.value.input == (0.9, 0.2)


def _compatible_families():
    P = unit_pair("prod", "luk")
    yield "proportional", P, builtin_family("proportional", 3, P), GRID
    yield "constant-unit", P, builtin_family("constant", 3, P, weights=(0.2, 0.3, 0.5)), GRID
    for make in (m3, diamond):
        L = make()
        Q = lattice_pair(L)
        for name in ("gamma1", "gamma2"):
            yield "%s-%s" % (name, L.name), Q, builtin_family(name, 3, Q), L.elements
        yield "constant-%s" % L.name, Q, builtin_family("constant", 3, Q, weights=(L.bottom, L.top, L.bottom)), L.elements
    U = UnitLattice()
    Q = lattice_pair(U)
    for name in ("gamma1", "gamma2"):
        yield name + "-unit", Q, builtin_family(name, 3, Q), GRID


FAMILIES = list(_compatible_families())


@pytest.mark.parametrize("name, pair, F, elems", FAMILIES, ids=[f[0] for f in FAMILIES])
def test_boundary_idempotency_bounds(name, pair, F, elems):
    L = pair.lattice
    assert dyowa(F, (L.bottom,) * 3).value == L.bottom
    assert L.eq(dyowa(F, (L.top,) * 3).value, L.top)
    for a in elems:
        assert L.eq(dyowa(F, (a, a, a)).value, a)
    tuples = itertools.product(elems, repeat=3) if len(elems) < 10 else itertools.product(elems[::2], repeat=3)
    for a in tuples:
        v = dyowa(F, a).value
        assert L.leq(L.meet_all(a), v) or L.eq(L.meet_all(a), v)
        assert L.leq(v, L.join_all(a)) or L.eq(v, L.join_all(a))


def test_symmetry_inheritance(prodluk):
    F = builtin_family("proportional", 3, prodluk)
    assert check_weight_family(F).ok
    for a in itertools.product(GRID[::4], repeat=3):
        v = dyowa(F, a).value
        for p in itertools.permutations(a):
            assert dyowa(F, p).value == v


def test_constant_dyowa_equals_lmowa(M3):
    P = lattice_pair(M3)
    w = ("top", "bot")
    F = builtin_family("constant", 2, P, weights=w)
    for a in itertools.product(M3.elements, repeat=2):
        assert dyowa(F, a).value == lmowa(weight_vector(w, P), a).value
