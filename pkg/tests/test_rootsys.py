import cmath
import math
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import string_roots, weyl_order
from tempered.rootsys import (
    RootSystemError,
    TorusPoint,
    build_root_datum,
    exp_eval,
    varpi,
    weyl_denominator,
    weyl_group,
)

A1 = [[2]]
A1A1 = [[2, 0], [0, 2]]
A2 = [[2, -1], [-1, 2]]
B2 = [[2, -2], [-1, 2]]
G2 = [[2, -1], [-3, 2]]
TYPES = [A1, A1A1, A2, B2, G2]


@pytest.mark.parametrize("cartan", TYPES)
def test_roots_match_string_algorithm(cartan):
    datum = build_root_datum(cartan)
    expected = {tuple(Q(x) for x in r) for r in string_roots(cartan)}
    assert set(datum.positive_roots) == expected
    assert len(datum.roots) == 2 * len(expected)


@pytest.mark.parametrize("cartan", TYPES)
def test_weyl_order_matches_orbit_oracle(cartan):
    assert weyl_group(build_root_datum(cartan)).order == weyl_order(cartan)


def test_rho_values():
    assert build_root_datum(A1).rho == (Q(1, 2),)
    assert build_root_datum(A2).rho == (Q(1), Q(1))


def test_long_roots_have_length_two():
    datum = build_root_datum(B2)
    lengths = {datum.pair(r, r) for r in datum.roots}
    assert lengths == {Q(1), Q(2)}


@pytest.mark.parametrize("bad", [[[2, 1], [-1, 2]], [[3]], [[2, -1], [0, 2]], [[2, -1]]])
def test_invalid_cartan_matrix(bad):
    with pytest.raises(RootSystemError, match="invalid Cartan matrix"):
        build_root_datum(bad)


@pytest.mark.parametrize("cartan", [[[2, -2], [-2, 2]], [[2, -3], [-3, 2]]])
def test_infinite_type_rejected(cartan):
    with pytest.raises(RootSystemError, match="not finite type"):
        build_root_datum(cartan)


def test_weyl_guard_env(monkeypatch):
    monkeypatch.setenv("TEMPERED_GUARD", "4")
    with pytest.raises(RootSystemError, match="too large"):
        weyl_group(build_root_datum(A2))


@pytest.mark.parametrize("cartan", TYPES)
def test_reflection_closure_and_det_homomorphism(cartan):
    datum = build_root_datum(cartan)
    wg = weyl_group(datum)
    roots = set(datum.roots)
    for k in range(wg.order):
        assert {wg.act(k, r) for r in roots} == roots
    for i in range(wg.order):
        for j in range(wg.order):
            assert wg.det[wg.compose(i, j)] == wg.det[i] * wg.det[j]


@pytest.mark.parametrize("cartan", TYPES)
def test_rho_dominant(cartan):
    datum = build_root_datum(cartan)
    assert all(datum.pair(datum.rho, r) > 0 for r in datum.positive_roots)


def test_varpi_examples():
    a1, a2 = build_root_datum(A1), build_root_datum(A2)
    assert varpi(a1, a1.rho) == 1
    assert varpi(a1, (0,)) == 0
    assert varpi(a2, a2.rho) == 2


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(TYPES), st.lists(rationals, min_size=2, max_size=2))
def test_varpi_alternates(cartan, coords):
    datum = build_root_datum(cartan)
    wg = weyl_group(datum)
    lam = tuple(coords[: datum.rank])
    for k in range(wg.order):
        assert varpi(datum, wg.act(k, lam)) == wg.det[k] * varpi(datum, lam)


def test_exp_eval_examples():
    a1 = build_root_datum(A1)
    x = TorusPoint((math.pi,))
    assert abs(exp_eval(a1, [(1, (Q(1, 2),)), (-1, (Q(-1, 2),))], x) - 2j) < 1e-12
    assert exp_eval(a1, [(1, (0,))], TorusPoint((0.37,))) == 1
    delta = weyl_denominator(a1, TorusPoint((math.pi / 2,)))
    assert abs(delta - 2j * math.sin(math.pi / 4)) < 1e-12


def test_aperiodic_exponential():
    a1 = build_root_datum(A1)
    with pytest.raises(RootSystemError, match="aperiodic"):
        exp_eval(a1, [(1, (Q(1, 4),))], TorusPoint((1.0,)))
    with pytest.raises(RootSystemError, match="aperiodic"):
        exp_eval(a1, [(1, (Q(1, 2),))], TorusPoint((1.0,), period=2 * math.pi))


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.tuples(st.integers(-3, 3), st.integers(-4, 4), st.integers(-4, 4)), max_size=4),
    st.lists(st.tuples(st.integers(-3, 3), st.integers(-4, 4), st.integers(-4, 4)), max_size=4),
    st.floats(0, 4 * math.pi),
    st.floats(0, 4 * math.pi),
)
def test_exp_eval_linear(t1, t2, x1, x2):
    datum = build_root_datum(A2)
    x = TorusPoint((x1, x2))
    conv = lambda ts: [(c, (Q(a, 2), Q(b, 2))) for c, a, b in ts]  # noqa: E731
    total = exp_eval(datum, conv(t1) + conv(t2), x)
    assert abs(total - exp_eval(datum, conv(t1), x) - exp_eval(datum, conv(t2), x)) <= 1e-12
    direct = sum(c * cmath.exp(1j * (a * x1 + b * x2) / 2) for c, a, b in t1)
    assert abs(exp_eval(datum, conv(t1), x) - direct) <= 1e-12
