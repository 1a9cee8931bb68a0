import pytest

from rankdual.chainring import RingSpec, default_modulus, is_irreducible, parse_ring
from rankdual.cyclotomic import CycInt, cyc_root, cyc_sum

RINGS = ["Z4", "Z8", "Z9", "F2", "F3", "F4", "F2u2", "F3u2", "F:p=2,r=2,s=2", "Z:p=5,s=1"]


@pytest.fixture(params=RINGS)
def ring(request):
    return parse_ring(request.param)


def test_examples():
    z4 = parse_ring("Z4")
    assert z4.mul(2, 2) == 0
    assert z4.enumerate() == [0, 1, 2, 3]
    f = parse_ring("F2u2")
    u = f.pi()
    assert u != 0 and f.mul(u, u) == 0
    assert z4.valuation(2) == 1
    assert z4.valuation(3) == 0
    f3 = parse_ring("F3u2")
    two_u = f3.mul(2, f3.pi())
    assert f3.valuation(two_u) == 1


def test_character_examples():
    z4 = parse_ring("Z4")
    assert z4.chi(0) == CycInt.from_int(4, 1)
    assert z4.chi(2) == CycInt.from_int(4, -1)


def test_parameters(ring):
    assert ring.size == ring.q ** ring.s
    assert len(ring.enumerate()) == ring.size
    assert ring.enumerate()[0] == ring.zero()


def test_additive_character(ring):
    for a in range(ring.size):
        for b in range(ring.size):
            assert ring.chi(ring.add(a, b)) == ring.chi(a) * ring.chi(b)
    assert cyc_sum([ring.chi(a) for a in range(ring.size)]).is_zero()


def test_generating_property(ring):
    bottom = [a for a in range(ring.size) if ring.valuation(a) == ring.s - 1]
    one = CycInt.from_int(ring.char_order, 1)
    for alt in (False, True):
        assert any(ring.chi(a, alt) != one for a in bottom)


def test_alternate_character_is_a_twist(ring):
    u = ring.alt_unit
    assert ring.is_unit(u)
    for a in range(ring.size):
        assert ring.chi(a, alt=True) == ring.chi(ring.mul(u, a))


def test_ideal_chain(ring):
    vals = [ring.valuation(a) for a in range(ring.size)]
    for i in range(ring.s + 1):
        assert sum(v >= i for v in vals) == ring.q ** (ring.s - i)
    units = [a for a in range(ring.size) if vals[a] == 0]
    assert len(units) == ring.q ** ring.s - ring.q ** (ring.s - 1)
    for a in units:
        assert ring.mul(a, ring.inv(a)) == 1
    for a in range(ring.size):
        if vals[a] > 0:
            assert all(ring.mul(a, b) != 1 for b in range(ring.size))


def test_valuation_multiplicative(ring):
    for a in range(ring.size):
        for b in range(ring.size):
            v = min(ring.valuation(a) + ring.valuation(b), ring.s)
            assert ring.valuation(ring.mul(a, b)) == v


def test_ring_axioms(ring):
    n = ring.size
    for a in range(n):
        assert ring.add(a, ring.neg(a)) == 0
        assert ring.mul(1, a) == a
        for b in range(n):
            assert ring.mul(a, b) == ring.mul(b, a)
            for c in range(0, n, max(1, n // 5)):
                assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
                assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))


def test_pi_powers(ring):
    assert ring.pi_power(ring.s) == 0
    assert ring.pi_power(ring.s - 1) != 0
    for a in range(ring.size):
        e = ring.valuation(a)
        unit, rem = ring.divmod_pi(a, e)
        assert rem == 0
        assert ring.times_pi_power(unit, e) == a


def test_elem_operators():
    z4 = parse_ring("Z4")
    a, b = z4(3), z4(2)
    assert (a + b).code == 1 and (a * b).code == 2 and (-a).code == 1
    assert (a ** 2).code == 1
    assert b.valuation() == 1
    assert a.chi() == cyc_root(4, 3)
    with pytest.raises(ValueError):
        a + parse_ring("Z8")(1)


def test_irreducible_modulus():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert is_irreducible((1, 1, 1), 2)
    assert not is_irreducible((1, 0, 1), 2)
    assert is_irreducible((1, 1, 0, 1), 2)
    with pytest.raises(ValueError):
        RingSpec.truncated(2, 2, 1, modulus=(1, 0, 1))


def test_field_has_inverses():
    f4 = parse_ring("F4")
    assert f4.is_field and f4.char_order == 2
    for a in range(1, 4):
        assert f4.mul(a, f4.inv(a)) == 1


def test_names_and_parsing():
    assert parse_ring("Z:p=2,s=2") == parse_ring("Z4")
    assert parse_ring("F:p=2,r=1,s=2") == parse_ring("F2u2")
    assert parse_ring("F:p=2,r=2,s=1") == parse_ring("F4")
    assert parse_ring("Z9").name == "Z9"
    assert parse_ring("F2u2").name == "F2u2"
    # r and s default to 1 in the general field form; Z/p^s needs s
    assert parse_ring("F:p=2") == parse_ring("F2")
    for bad in ["Q4", "Z6", "F6", "Z:p=4,s=1", "Z:p=2", "F:p=2,r=x", "", "Z"]:
        with pytest.raises(ValueError):
            parse_ring(bad)


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        parse_ring("Z4").inv(2)
