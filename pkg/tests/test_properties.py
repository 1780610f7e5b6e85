import dataclasses

import pytest

from dyowa.lattice import IntervalLattice, UnitLattice, chain, diamond, m3
from dyowa.owa import builtin_family, weight_vector
from dyowa.properties import (
    PropertyMismatch,
    PropertyVerdict,
    check_boundary_isotone,
    check_property,
    classify_aggregation,
    dyowa_operator,
    fold_operator,
    lmowa_operator,
    recheck,
    table_function,
    yager_operator,
)
from dyowa.regime import Regime
from dyowa.triangular import lattice_pair, lift_componentwise, unit_pair

GRID = Regime("grid", step=0.05)

CLASSIFICATION = {
    "min": ("averaging", "conjunctive"),
    "max": ("averaging", "disjunctive"),
    "arith": ("averaging",),
    "prod": ("conjunctive",),
    "probsum": ("disjunctive",),
    "mixed": ("mixed",),
}

PROPERTY_MARKS = {
    "min": ("IP", "SP", "NP", "AP", "HP", "ASP"),
    "max": ("IP", "SP", "NP", "AP", "HP", "ASP"),
    "arith": ("IP", "SP", "HP", "ASP"),
    "prod": ("SP", "NP", "AP", "ASP"),
    "probsum": ("SP", "NP", "AP", "ASP"),
    "mixed": ("SP", "AP"),
}


@pytest.mark.parametrize("name", sorted(CLASSIFICATION))
@pytest.mark.parametrize("n", [2, 3])
def test_reference_classification(name, n):
    v = classify_aggregation(table_function(name, n), GRID)
    assert v.classes == CLASSIFICATION[name]
    assert v.regime == "grid(0.05)"


def test_mixed_witnesses():
    f = table_function("mixed", 2)
    assert f((0.9, 0.9)) == pytest.approx(0.98780487804878, abs=1e-12)
    assert f((0.1, 0.1)) == pytest.approx(0.0121951219512195, abs=1e-12)
    v = classify_aggregation(f, GRID)
    assert set(v.witness) == {"averaging", "conjunctive", "disjunctive"}
    assert not f.defined((0.0, 1.0))


@pytest.mark.parametrize(
    "name, prop",
    [(name, prop) for name, props in sorted(PROPERTY_MARKS.items()) for prop in props if (name, prop) != ("arith", "ASP")],
)
def test_reference_property_marks(name, prop):
    op = table_function(name, 2)
    v = check_property(op, prop, GRID)
    assert v.holds, v.line(op.lattice)
    assert recheck(op, v)


def test_arith_asp_counterexample():
    op = table_function("arith", 2)
    v = check_property(op, "ASP", GRID)
    assert not v.holds
    assert recheck(op, v)
    w = v.witness
    x, y, z = w["x"], w["y"], w["z"]
    assert abs(op((x, op((y, z)))) - op((op((x, y)), z))) > 1e-9
    # the hand-evaluated triple is a counterexample as well
    hand = PropertyVerdict("ASP", "grid(0.05)", False, {"x": 1.0, "y": 0.0, "z": 0.0})
    assert recheck(op, hand)
    assert op((1.0, op((0.0, 0.0)))) == 0.5 and op((op((1.0, 0.0)), 0.0)) == 0.25


def test_neutral_and_absorbing_elements_reported():
    assert check_property(table_function("min", 2), "NP", GRID).witness == {"e": 1.0}
    assert check_property(table_function("max", 2), "AP", GRID).witness == {"a": 1.0}
    assert check_property(table_function("mixed", 2), "AP", GRID).witness == {"a": 0.0}
    # f has neutral element 1/2 although PROPERTY_MARKS leaves it out
    assert check_property(table_function("mixed", 2), "NP", GRID).witness == {"e": 0.5}


def test_np_failure_carries_refutations():
    op = table_function("arith", 2)
    v = check_property(op, "NP", GRID)
    assert not v.holds
    assert len(v.witness["refutations"]) == 21
    assert recheck(op, v)


def test_arith_ip_holds_on_grid():
    v = check_property(table_function("arith", 3), "IP", GRID)
    assert v.holds and v.checked == 21


def test_lukasiewicz_zero_divisor():
    op = fold_operator(unit_pair("luk", "luk"), 2)
    v = check_property(op, "ZD", GRID)
    assert v.holds
    x = v.witness["x"]
    assert all(c > 0 for c in x) and op(x) == 0
    assert recheck(op, PropertyVerdict("ZD", "grid(0.05)", True, {"x": (0.5, 0.5)}))
    assert not check_property(fold_operator(unit_pair("prod", "probsum"), 2), "ZD", GRID).holds


def test_lukasiewicz_one_divisor():
    op = fold_operator(unit_pair("luk", "luk"), 2, "tconorm")
    v = check_property(op, "OD", GRID)
    assert v.holds and all(c < 1 for c in v.witness["x"])


def test_boundary_isotone_proportional():
    F = builtin_family("proportional", 3, unit_pair("prod", "luk"))
    op = dyowa_operator(F)
    probe = ((0.5, 0.2, 0.1), (0.5, 0.22, 0.2))
    boundary, iso = check_boundary_isotone(op, GRID, probes=[probe])
    assert boundary.holds
    assert not iso.holds
    assert (iso.witness["x"], iso.witness["y"]) == probe
    assert recheck(op, iso)


def test_proportional_not_isotone_without_probe():
    F = builtin_family("proportional", 2, unit_pair("prod", "luk"))
    _, iso = check_boundary_isotone(dyowa_operator(F), GRID)
    assert not iso.holds
    x, y = iso.witness["x"], iso.witness["y"]
    assert all(a <= b for a, b in zip(x, y))


@pytest.mark.parametrize("make", [m3, diamond])
def test_boundary_isotone_gamma1(make):
    L = make()
    op = dyowa_operator(builtin_family("gamma1", 2, lattice_pair(L)))
    boundary, iso = check_boundary_isotone(op)
    assert boundary.holds and iso.holds
    assert boundary.regime == iso.regime == "exhaustive"


def test_yager_isotone_and_homogeneous():
    op = yager_operator((0.2, 0.8))
    boundary, iso = check_boundary_isotone(op, GRID)
    assert boundary.holds and iso.holds
    assert check_property(op, "HP", GRID).holds


def test_sp_ip_for_dyowa_families():
    F = builtin_family("proportional", 3, unit_pair("prod", "luk"))
    op = dyowa_operator(F)
    for prop in ("IP", "SP"):
        assert check_property(op, prop, GRID).holds


def test_sp_failure():
    P = unit_pair("prod", "luk")
    op = lmowa_operator(weight_vector((0.3, 0.7), P))
    assert check_property(op, "SP", GRID).holds
    from dyowa.properties import Operator

    first = Operator("first", UnitLattice(), 2, lambda xs: xs[0])
    v = check_property(first, "SP", GRID)
    assert not v.holds and recheck(first, v)


def test_interval_regime_is_sampled():
    P = lift_componentwise(unit_pair("prod", "luk"), IntervalLattice())
    op = dyowa_operator(builtin_family("constant", 2, P))
    v = check_property(op, "IP")
    assert v.holds and v.regime.startswith("sampled(1000")


def test_mismatches(M3):
    with pytest.raises(PropertyMismatch):
        check_property(dyowa_operator(builtin_family("gamma1", 2, lattice_pair(M3))), "HP")
    with pytest.raises(PropertyMismatch):
        check_property(table_function("min", 3), "ASP", GRID)
    with pytest.raises(PropertyMismatch):
        check_property(table_function("min", 2), "XYZ", GRID)
    with pytest.raises(ValueError):
        table_function("median")


def test_corrupted_witness_does_not_recheck():
    op = table_function("arith", 2)
    v = check_property(op, "ASP", GRID)
    bad = dataclasses.replace(v, witness={"x": 0.5, "y": 0.5, "z": 0.5})
    assert not recheck(op, bad)
    iso = PropertyVerdict("ISO", "grid(0.05)", False, {"x": (0.1, 0.1), "y": (0.2, 0.2)})
    assert not recheck(op, iso)


def test_verdict_lines():
    op = table_function("arith", 2)
    assert check_property(op, "IP", GRID).line(op.lattice) == "PROP IP grid(0.05) HOLDS"
    line = check_property(op, "ASP", GRID).line(op.lattice)
    assert line.startswith("PROP ASP grid(0.05) FAIL x=")
    assert classify_aggregation(table_function("min", 2), GRID).line() == "PROP class grid(0.05) HOLDS averaging,conjunctive"


def test_finite_folds_exhaustive(M3):
    op = fold_operator(lattice_pair(M3), 2)
    for prop in ("IP", "SP", "ASP", "NP", "AP"):
        v = check_property(op, prop)
        assert v.holds and v.regime == "exhaustive"
    assert check_property(op, "ZD").holds  # a meet b = bot for distinct atoms


def test_chain_meet_has_no_zero_divisor():
    assert not check_property(fold_operator(lattice_pair(chain(4)), 2), "ZD").holds
