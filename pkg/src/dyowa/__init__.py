"""Ordered weighted averaging on complete lattices."""
from .lattice import (
    TAU,
    Interval,
    IntervalLattice,
    Lattice,
    LatticeError,
    ProductLattice,
    UnitLattice,
    build_finite_lattice,
    chain,
    diamond,
    interval,
    m3,
    product_lattice,
    unit_value,
)
from .lm import lm_naive, lm_transform
from .owa import (
    AggregationResult,
    WeightFamily,
    WeightVector,
    builtin_family,
    check_weight_family,
    check_weight_vector,
    dyowa,
    lmowa,
    weight_vector,
    yager_owa,
)
from .regime import Regime
from .triangular import TriangularPair, lattice_pair, lift_componentwise, unit_pair

__version__ = "0.1.0"
