import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cspace_einstein.core import (
    KILLING,
    METRIC_ADAPTED,
    InvariantMetric,
    StructureTable,
    auxiliary_constants,
    b_structure_constants,
    c_from_x,
    make_params,
    metric_structure_constants,
    norm_constants,
    reduced_fiber_constants,
)
from matrix_oracle import Space, fiber_basis, killing

sizes = st.integers(min_value=1, max_value=10)


@pytest.mark.parametrize("bad", [0, -1, 1.0, True, "2"])
def test_make_params_rejects(bad):
    with pytest.raises((TypeError, ValueError)):
        make_params(bad, 2, 3)


def test_dimensions():
    p = make_params(1, 2, 3)
    assert (p.N, p.dims, p.dim_m) == (6, (4, 6, 12), 24)
    assert make_params(100000, 99999, 99998).dim_m == 59998800006


@pytest.mark.parametrize("lmn,flag", [((1, 1, 2), True), ((2, 1, 1), True),
                                      ((1, 2, 1), True), ((1, 2, 3), False), ((2, 2, 2), False)])
def test_degenerate_flag(lmn, flag):
    assert make_params(*lmn).degenerate_flag is flag


def test_metric_positivity():
    with pytest.raises(ValueError):
        InvariantMetric(1, 1, 1, 0.0, 1)
    g = InvariantMetric(1, 2, 3, 4, 5, 0.5)
    assert g.fiber_gram() == ((4 + 0.25 * 5, 2.5), (2.5, 5))
    assert g.scaled(2).x == (2, 4, 6) and g.scaled(2).c == 0.5


def test_table_symmetries():
    T = StructureTable({(3, 1, 2): 7.0}, KILLING)
    assert all(T[k] == 7.0 for k in [(1, 2, 3), (2, 3, 1), (3, 2, 1), (2, 1, 3)])
    assert T[(1, 1, 1)] == 0
    A = StructureTable({(5, 2, 2): 1.5, (4, 1, 2): 2.0}, METRIC_ADAPTED)
    assert A[(4, 2, 1)] == 2.0
    assert A[(1, 4, 2)] == 0  # upper index is not interchangeable
    with pytest.raises(ValueError):
        StructureTable({}, "other")


@settings(max_examples=200, deadline=None)
@given(sizes, sizes, sizes)
def test_dimension_identities(l, m, n):
    """sum_{j,k in m} [k; i, j] + 2 * (brackets with h) = d_i for every
    module, including the two fiber lines."""
    p = make_params(l, m, n)
    T = b_structure_constants(p)
    a = auxiliary_constants(p)
    dims = {1: p.d1, 2: p.d2, 3: p.d3, 4: 1, 5: 1}
    h_part = {1: a["alpha11"] + a["beta11"], 2: a["alpha22"] + a["gamma22"],
              3: a["beta33"] + a["gamma33"], 4: 0, 5: 0}
    for i in range(1, 6):
        total = sum(T[k, i, j] for j in range(1, 6) for k in range(1, 6)) + 2 * h_part[i]
        assert math.isclose(total, dims[i], rel_tol=1e-12)


@settings(max_examples=100, deadline=None)
@given(sizes, sizes, sizes, st.floats(-3, 3))
def test_shear_only_moves_fiber_constants(l, m, n, c):
    """Only {5;2,2} and {5;3,3} depend on c, and c = 0 gives the B table."""
    p = make_params(l, m, n)
    g = InvariantMetric(1, 1, 1, 1, 1, c)
    T = metric_structure_constants(p, g)
    B = b_structure_constants(p)
    if c == 0:
        assert T.stored() == B.stored()
    for key in [(3, 1, 2), (4, 2, 2), (4, 3, 3), (5, 1, 1)]:
        assert T[key] == B[key]


@pytest.mark.parametrize("lmn", [(1, 2, 3), (2, 2, 3), (1, 1, 1), (3, 1, 2)])
def test_structure_constants_match_matrices(lmn):
    p = make_params(*lmn)
    S = Space(*lmn)
    T = b_structure_constants(p)
    for k in range(1, 6):
        for i in range(1, 6):
            for j in range(1, 6):
                assert abs(S.structure_constant(k, i, j) - T[k, i, j]) < 1e-10, (k, i, j)


@pytest.mark.parametrize("lmn", [(1, 2, 3), (2, 3, 1), (4, 1, 2)])
def test_norm_constants(lmn):
    l, m, n = lmn
    N = l + m + n
    c = norm_constants(make_params(*lmn))
    Z4 = 1j * np.diag([1 / (l + m)] * (l + m) + [-1 / n] * n)
    Z5 = 1j * np.diag([1 / l] * l + [-1 / m] * m + [0.0] * n)
    assert math.isclose(killing(N, c.c4 * Z4, c.c4 * Z4), 1, rel_tol=1e-12)
    assert math.isclose(killing(N, c.c5 * Z5, c.c5 * Z5), 1, rel_tol=1e-12)
    A, B = fiber_basis(l, m, n)
    assert abs(killing(N, A, B)) < 1e-14


@settings(max_examples=100, deadline=None)
@given(sizes, sizes, sizes, st.floats(0.1, 10), st.floats(0.1, 10))
def test_reduced_fiber_constants(l, m, n, x2, x3):
    p = make_params(l, m, n)
    c = c_from_x(p, x2, x3)
    T = metric_structure_constants(p, InvariantMetric(1, x2, x3, 1, 1, c))
    a, b = reduced_fiber_constants(p, x2, x3)
    assert math.isclose(T[5, 2, 2], a, rel_tol=1e-9, abs_tol=1e-14)
    assert math.isclose(T[5, 3, 3], b, rel_tol=1e-9, abs_tol=1e-14)


def test_extended_precision_type():
    p = make_params(1, 2, 3)
    with mpmath.workdps(50):
        c = c_from_x(p, mpmath.mpf(2), mpmath.mpf(1))
        assert isinstance(c, mpmath.mpf)
        T = b_structure_constants(p, like=mpmath.mpf(1))
        assert isinstance(T[3, 1, 2], mpmath.mpf)
        assert abs(T[3, 1, 2] - mpmath.mpf(1)) < mpmath.mpf(10) ** -45
