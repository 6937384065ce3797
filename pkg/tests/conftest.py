from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import hypothesis.strategies as st
import pytest
from hypothesis import HealthCheck, settings

from homtrunc import (
    QQ,
    ChainComplex,
    Comodule,
    Comonoid,
    Coring,
    CoringComodule,
    GF,
    GradedMap,
    GradedModule,
    LeftModule,
    Matrix,
    Monoid,
    RightModule,
    tensor_modules,
)

settings.register_profile(
    "suite", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

ONE = Fraction(1)

fields_strategy = st.sampled_from([QQ, GF(5), GF(7)])


@st.composite
def matrices(draw, field=None, max_rows=4, max_cols=4):
    fld = field if field is not None else draw(fields_strategy)
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(0, max_cols))
    ints = st.integers(-4, 4)
    data = tuple(
        tuple(fld.from_int(draw(ints)) for _ in range(cols)) for _ in range(rows)
    )
    return Matrix(fld, rows, cols, data)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def make_cx() -> Comonoid:
    """Two-term comonoid x -> a with delta(x) = x⊗x, delta(a) = a⊗x + x⊗a."""
    mod = GradedModule(QQ, {0: ("x",), -1: ("a",)})
    d = GradedMap(mod, mod, -1, {0: Matrix.from_rows(QQ, [[ONE]])})
    carrier = ChainComplex(mod, d)
    square = tensor_modules(mod, mod)
    delta = GradedMap(
        mod, square, 0,
        {0: Matrix.from_rows(QQ, [[ONE]]), -1: Matrix.from_rows(QQ, [[ONE], [ONE]])},
    )
    return Comonoid(carrier, delta)


def make_k2() -> Comonoid:
    """delta(c) = b⊗b on b in degree -2, c in degree -4, zero differential."""
    mod = GradedModule(QQ, {-2: ("b",), -4: ("c",)})
    carrier = ChainComplex(mod, GradedMap.zero_map(mod, mod, -1))
    delta = GradedMap(
        mod, tensor_modules(mod, mod), 0, {-4: Matrix.from_rows(QQ, [[ONE]])}
    )
    return Comonoid(carrier, delta)


def make_m1() -> Comodule:
    """Comodule m0 |-> m1⊗b over the one-line comonoid in degree -1."""
    bmod = GradedModule(QQ, {-1: ("b",)})
    bcomplex = ChainComplex(bmod, GradedMap.zero_map(bmod, bmod, -1))
    b = Comonoid(bcomplex, GradedMap.zero_map(bmod, tensor_modules(bmod, bmod)))
    mmod = GradedModule(QQ, {1: ("m1",), 0: ("m0",)})
    mcomplex = ChainComplex(mmod, GradedMap.zero_map(mmod, mmod, -1))
    coaction = GradedMap(
        mmod, tensor_modules(mmod, bmod), 0, {0: Matrix.from_rows(QQ, [[ONE]])}
    )
    return Comodule(b, mcomplex, coaction)


def make_a1() -> Monoid:
    """a1·a1 = a2 with a1 in degree 1 and a2 in degree 2."""
    mod = GradedModule(QQ, {1: ("a1",), 2: ("a2",)})
    carrier = ChainComplex(mod, GradedMap.zero_map(mod, mod, -1))
    mu = GradedMap(
        tensor_modules(mod, mod), mod, 0, {2: Matrix.from_rows(QQ, [[ONE]])}
    )
    return Monoid(carrier, mu)


def make_ma(a1: Monoid | None = None) -> RightModule:
    """m·a1 = m', everything else zero by degrees."""
    algebra = a1 or make_a1()
    mod = GradedModule(QQ, {0: ("m",), 1: ("m'",)})
    carrier = ChainComplex(mod, GradedMap.zero_map(mod, mod, -1))
    action = GradedMap(
        tensor_modules(mod, algebra.carrier.module), mod, 0,
        {1: Matrix.from_rows(QQ, [[ONE]])},
    )
    return RightModule(algebra, carrier, action)


def make_cr_left(a1: Monoid | None = None) -> LeftModule:
    """The degree -1 line b with zero left action."""
    algebra = a1 or make_a1()
    mod = GradedModule(QQ, {-1: ("b",)})
    carrier = ChainComplex(mod, GradedMap.zero_map(mod, mod, -1))
    action = GradedMap.zero_map(tensor_modules(algebra.carrier.module, mod), mod)
    return LeftModule(algebra, carrier, action)


def make_crb(a1: Monoid | None = None) -> Coring:
    """Coring on the b line with zero actions; delta forced zero by degrees."""
    algebra = a1 or make_a1()
    amod = algebra.carrier.module
    mod = GradedModule(QQ, {-1: ("b",)})
    carrier = ChainComplex(mod, GradedMap.zero_map(mod, mod, -1))
    return Coring(
        algebra,
        carrier,
        GradedMap.zero_map(tensor_modules(amod, mod), mod),
        GradedMap.zero_map(tensor_modules(mod, amod), mod),
        GradedMap.zero_map(mod, tensor_modules(mod, mod)),
    )


def make_crm() -> CoringComodule:
    """MA over CRB; the coaction class of m'⊗b is zero in M⊗_A B."""
    from homtrunc.structures import relative_tensor_data

    algebra = make_a1()
    coring = make_crb(algebra)
    module = make_ma(algebra)
    rel = relative_tensor_data(
        module.carrier, module.action, algebra.carrier, coring.carrier, coring.left_action
    )
    coaction = GradedMap.zero_map(module.carrier.module, rel.module)
    return CoringComodule(coring, module, coaction)


@pytest.fixture
def cx():
    return make_cx()


@pytest.fixture
def k2():
    return make_k2()


@pytest.fixture
def m1():
    return make_m1()
