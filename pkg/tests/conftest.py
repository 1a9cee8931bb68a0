from functools import lru_cache
from itertools import product

import pytest

from rankdual.chainring import parse_ring
from rankdual.duality import Pairing
from rankdual.rankspace import TupleSpace


@lru_cache(maxsize=None)
def space(ring, m=2, n=2):
    return TupleSpace(parse_ring(ring), m, n)


@lru_cache(maxsize=None)
def pairing(ring, m=2, n=2, alt=False):
    return Pairing(space(ring, m, n), alt)


def gl2(ring):
    """All invertible 2x2 matrices, found by brute force on the determinant."""
    out = []
    for a, b, c, d in product(range(ring.size), repeat=4):
        det = ring.sub(ring.mul(a, d), ring.mul(b, c))
        if ring.is_unit(det):
            out.append(((a, b), (c, d)))
    return out


def mat2(ring, x, y):
    return tuple(tuple(ring.add(ring.mul(x[i][0], y[0][j]), ring.mul(x[i][1], y[1][j]))
                       for j in range(2)) for i in range(2))


def equivalence_orbit(ring, a):
    """{P a Q : P, Q invertible}, by exhaustive search."""
    G = gl2(ring)
    left = {mat2(ring, P, a) for P in G}
    return {mat2(ring, x, Q) for x in left for Q in G}


@pytest.fixture(scope="session")
def z4():
    return parse_ring("Z4")


@pytest.fixture(scope="session")
def f2():
    return parse_ring("F2")
