import cmath

import pytest
from hypothesis import given, settings, strategies as st
from sympy import factorint

from rankdual.cyclotomic import (CycInt, canonical_degree, cyc_as_integer, cyc_conj, cyc_mul,
                                 cyc_neg, cyc_root, cyc_scale, cyc_sum, prime_power)

ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]
PRIME_POWERS_TO_27 = [n for n in range(2, 28) if len(factorint(n)) == 1]


def evaluate(x):
    """Numerical value, used only as an independent oracle in tests."""
    z = cmath.exp(2j * cmath.pi / x.order)
    return sum(c * z ** k for k, c in enumerate(x.coeffs))


def cycints(n):
    return st.lists(st.integers(-50, 50), min_size=n, max_size=n).map(lambda c: CycInt(n, c))


@st.composite
def triples(draw):
    n = draw(st.sampled_from(ORDERS))
    return draw(cycints(n)), draw(cycints(n)), draw(cycints(n))


def test_root_examples():
    assert cyc_root(4, 0) == CycInt.from_int(4, 1)
    assert cyc_root(4, 2) == CycInt.from_int(4, -1)
    assert cyc_root(8, 9) == cyc_root(8, 1)
    assert cyc_root(8, -1) == cyc_root(8, 7)


def test_sum_examples():
    assert cyc_sum([cyc_root(4, k) for k in range(4)]).is_zero()
    for k in range(8):
        assert cyc_sum([cyc_root(8, k + 4 * j) for j in range(2)]).is_zero()
    three_zeta = cyc_scale(cyc_root(4, 1), 3)
    assert three_zeta.coeffs[:2] == (0, 3)
    assert three_zeta == cyc_sum([cyc_root(4, 1)] * 3)


def test_conj_examples():
    assert cyc_conj(CycInt.from_int(4, 1)) == CycInt.from_int(4, 1)
    assert cyc_conj(cyc_root(4, 1)) == cyc_root(4, 3) == cyc_neg(cyc_root(4, 1))


def test_as_integer_examples():
    assert cyc_as_integer(CycInt.from_int(4, 0)) == 0
    assert cyc_as_integer(cyc_root(4, 1) + cyc_root(4, 3)) == 0
    assert cyc_as_integer(cyc_root(4, 1)) is None
    assert cyc_as_integer(CycInt.from_int(9, -7)) == -7


def test_canonical_support():
    for n in ORDERS:
        d = canonical_degree(n)
        for k in range(n):
            x = cyc_root(n, k)
            assert all(c == 0 for c in x.coeffs[d:])


@pytest.mark.parametrize("n", PRIME_POWERS_TO_27)
def test_vanishing_sums(n):
    p, _ = prime_power(n)
    for k in range(n):
        assert cyc_sum([cyc_root(n, k + j * n // p) for j in range(p)]).is_zero()


def test_bad_orders():
    for n in (1, 6, 12, 0):
        with pytest.raises(ValueError):
            cyc_root(n, 0)


def test_mixed_orders():
    with pytest.raises(ValueError):
        cyc_root(4, 1) + cyc_root(8, 1)
    with pytest.raises(ValueError):
        cyc_sum([cyc_root(4, 1), cyc_root(8, 1)])
    with pytest.raises(ValueError):
        cyc_mul(cyc_root(3, 1), cyc_root(9, 1))


def test_json_round_trip():
    x = cyc_root(9, 4).scale(-3) + 5
    obj = x.to_json()
    assert set(obj) == {"order", "coeffs"}
    assert CycInt.from_json(obj) == x


@settings(max_examples=60, deadline=None)
@given(triples())
def test_ring_laws(t):
    a, b, c = t
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == CycInt.from_int(a.order, 0)
    assert a.scale(3) == a + a + a


@settings(max_examples=60, deadline=None)
@given(triples())
def test_product_matches_numeric_value(t):
    a, b, _ = t
    assert abs(evaluate(a * b) - evaluate(a) * evaluate(b)) < 1e-6 * (1 + abs(evaluate(a) * evaluate(b)))
    assert abs(evaluate(a) - evaluate(CycInt(a.order, a.coeffs))) < 1e-9


@settings(max_examples=60, deadline=None)
@given(triples())
def test_reduction_idempotent_and_conj(t):
    a, b, _ = t
    assert CycInt(a.order, a.coeffs) == a
    assert a.conj().conj() == a
    assert (a + b).conj() == a.conj() + b.conj()
    assert abs(evaluate(a.conj()) - evaluate(a).conjugate()) < 1e-6 * (1 + abs(evaluate(a)))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ORDERS), st.lists(st.integers(-9, 9), min_size=1, max_size=60))
def test_zero_test_matches_numeric_value(n, raw):
    c = (raw * n)[:n]
    x = CycInt(n, c)
    y = CycInt(n, [0] * n)
    assert (x == y) == (abs(evaluate(CycInt(n, c))) < 1e-9)
