import random
from itertools import product

import pytest

from rankdual.chainring import parse_ring
from rankdual.errors import GuardExceeded
from rankdual.linalg import (MoebiusTable, Submodule, annihilator, count_rank1_submodules,
                             howell_form, iso_profile, kernel, lattice, submodule_count_report,
                             matmul, module_rank, moebius_table, rank, smith_form,
                             smith_invariants, transpose)

from conftest import equivalence_orbit, gl2


def span_set(ring, rows, m):
    """Row span by closure from 0, independent of any normal form."""
    seen = {(0,) * m}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in rows:
                for c in range(ring.size):
                    w = tuple(ring.add(x, ring.mul(c, y)) for x, y in zip(v, g))
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
        frontier = nxt
    return seen


def all_vectors(ring, m):
    return list(product(range(ring.size), repeat=m))


def subset_closure_count(ring, m):
    """Number of submodules of R^m, by testing every subset containing 0."""
    vecs = all_vectors(ring, m)
    idx = {v: i for i, v in enumerate(vecs)}
    N = len(vecs)
    add = [[idx[tuple(ring.add(a, b) for a, b in zip(u, v))] for v in vecs] for u in vecs]
    scale = [[idx[tuple(ring.mul(r, a) for a in u)] for u in vecs] for r in range(ring.size)]
    count = 0
    for mask in range(1, 1 << N, 2):
        mem = [i for i in range(N) if mask >> i & 1]
        ok = all(mask >> add[i][j] & 1 for i in mem for j in mem)
        if ok and all(mask >> scale[r][i] & 1 for r in range(ring.size) for i in mem):
            count += 1
    return count


def random_matrix(ring, rows, cols, rng):
    return [[rng.randrange(ring.size) for _ in range(cols)] for _ in range(rows)]


def test_howell_examples(z4):
    eye = ((1, 0), (0, 1))
    assert howell_form(z4, eye) == eye
    h = howell_form(z4, [(2, 2), (0, 2)])
    assert [r[i] for i, r in enumerate(h)] == [2, 2]
    assert span_set(z4, h, 2) == span_set(z4, [(2, 2), (0, 2)], 2)
    assert len(span_set(z4, h, 2)) == 4
    assert howell_form(z4, [(0, 0), (0, 0)]) == ()


@pytest.mark.parametrize("name", ["Z4", "Z8", "F2u2", "F3", "F4", "Z9"])
def test_howell_random(name):
    ring = parse_ring(name)
    rng = random.Random(7)
    for _ in range(40):
        m = rng.randint(1, 3)
        rows = random_matrix(ring, rng.randint(1, 3), m, rng)
        h = howell_form(ring, rows, m)
        assert span_set(ring, h, m) == span_set(ring, rows, m)
        assert howell_form(ring, h, m) == h
        # a shuffled, padded generating set of the same span gives the same form
        extra = rows + [tuple(ring.add(a, b) for a, b in zip(rows[0], rows[-1]))]
        rng.shuffle(extra)
        assert howell_form(ring, extra, m) == h
        assert Submodule(ring, m, h).size == len(span_set(ring, rows, m))


def test_smith_examples(z4):
    assert smith_invariants(z4, [[0, 0], [0, 0]]) == (2, 2)
    assert smith_invariants(z4, [[1, 0], [0, 2]]) == (0, 1)
    assert smith_invariants(z4, [[1, 1], [1, 3]]) == (0, 1)


def test_gl2_size(z4):
    assert len(gl2(z4)) == 96


def test_smith_example_by_group_search(z4):
    assert ((1, 1), (1, 3)) in equivalence_orbit(z4, ((1, 0), (0, 2)))


def test_smith_classifies_equivalence(z4):
    # exhaustive: two 2x2 matrices share Smith exponents iff they are equivalent
    mats = [((a, b), (c, d)) for a, b, c, d in product(range(4), repeat=4)]
    orbit_of = {}
    for x in mats:
        if x not in orbit_of:
            orb = frozenset(equivalence_orbit(z4, x))
            for y in orb:
                orbit_of[y] = orb
    assert len(set(orbit_of.values())) == 6
    for x in mats:
        for y in mats[::17]:
            same = smith_invariants(z4, x) == smith_invariants(z4, y)
            assert same == (y in orbit_of[x])


@pytest.mark.parametrize("name", ["Z4", "Z8", "F2u2", "Z9", "F4"])
def test_smith_transforms(name):
    ring = parse_ring(name)
    rng = random.Random(3)
    for _ in range(30):
        r, c = rng.randint(1, 3), rng.randint(1, 3)
        a = random_matrix(ring, r, c, rng)
        exps, L, Rt = smith_form(ring, a)
        d = matmul(ring, matmul(ring, L, a), Rt)
        for i in range(r):
            for j in range(c):
                want = ring.pi_power(exps[i]) if i == j else 0
                assert d[i][j] == want
        assert list(exps) == sorted(exps) and len(exps) == min(r, c)
        assert smith_invariants(ring, L) == (0,) * r
        assert smith_invariants(ring, Rt) == (0,) * c


def test_smith_invariance(z4):
    rng = random.Random(11)
    G = gl2(z4)
    for _ in range(50):
        a = random_matrix(z4, 2, 2, rng)
        b = matmul(z4, matmul(z4, rng.choice(G), a), rng.choice(G))
        assert smith_invariants(z4, a) == smith_invariants(z4, b)


def test_rank_examples(z4):
    assert rank(z4, [[0, 0], [0, 0]]) == 0
    assert rank(z4, [[1, 0], [0, 1]]) == 2
    assert rank(z4, [[2, 0], [0, 0]]) == 1


def test_rank_is_row_and_column_rank(z4):
    for a, b, c, d in product(range(4), repeat=4):
        mat = [[a, b], [c, d]]
        cols = Submodule.span(z4, 2, transpose(mat))
        rows = Submodule.span(z4, 2, mat)
        assert rank(z4, mat) == cols.module_rank == rows.module_rank


def test_kernel_examples(z4):
    assert kernel(z4, [[1, 0], [0, 1]], 2) == Submodule.zero(z4, 2)
    assert kernel(z4, [[0, 0], [0, 0]], 2) == Submodule.full(z4, 2)
    K = kernel(z4, [[2, 0]], 2)
    assert K.size == 8
    assert K.elements == Submodule.span(z4, 2, [(2, 0), (0, 1)]).elements


@pytest.mark.parametrize("name", ["Z4", "F2u2", "Z9", "F3"])
def test_kernel_by_enumeration(name):
    ring = parse_ring(name)
    rng = random.Random(5)
    for _ in range(25):
        cols = rng.randint(1, 3)
        g = random_matrix(ring, rng.randint(1, 3), cols, rng)
        K = kernel(ring, g, cols)
        direct = {v for v in all_vectors(ring, cols) if all(_dot(ring, r, v) == 0 for r in g)}
        assert set(map(tuple, K.vectors.tolist())) == direct


def _dot(ring, u, v):
    acc = 0
    for x, y in zip(u, v):
        acc = ring.add(acc, ring.mul(x, y))
    return acc


def test_annihilator_examples(z4):
    assert annihilator(Submodule.zero(z4, 2)) == Submodule.full(z4, 2)
    assert annihilator(Submodule.full(z4, 2)) == Submodule.zero(z4, 2)
    A = Submodule.span(z4, 2, [(2, 0)])
    assert annihilator(A) == Submodule.span(z4, 2, [(2, 0), (0, 1)])
    assert annihilator(A).size == 8


@pytest.mark.parametrize("name", ["Z4", "F2u2", "F2", "Z8"])
def test_annihilator_duality(name):
    ring = parse_ring(name)
    lat = lattice(ring, 2)
    total = ring.size ** 2
    for A in lat:
        P = A.annihilator()
        assert A.size * P.size == total
        assert P.annihilator() == A
        direct = {v for v in all_vectors(ring, 2) if all(_dot(ring, a, v) == 0 for a in A.gens)}
        assert set(map(tuple, P.vectors.tolist())) == direct
        for C in lat:
            if A <= C:
                assert C.annihilator() <= P
            if A.iso_profile == C.iso_profile:
                assert P.iso_profile == C.annihilator().iso_profile


def test_iso_profile_examples(z4):
    zero = Submodule.zero(z4, 2)
    assert iso_profile(zero) == (0, 0, 0) and module_rank(zero) == 0
    full = Submodule.full(z4, 2)
    assert iso_profile(full) == (0, 2, 4) and module_rank(full) == 2
    A = Submodule.span(z4, 2, [(2, 0)])
    assert iso_profile(A) == (0, 1, 1) and module_rank(A) == 1
    assert [A.torsion_size(t) for t in range(3)] == [1, 2, 2]


@pytest.mark.parametrize("name", ["Z4", "Z8", "F2u2", "Z9", "F4"])
def test_iso_profile_by_enumeration(name):
    ring = parse_ring(name)
    for A in lattice(ring, 2):
        c = A.iso_profile
        assert c[0] == 0
        inc = [c[t] - c[t - 1] for t in range(1, ring.s + 1)]
        assert all(x >= 0 for x in inc) and inc == sorted(inc, reverse=True)
        for t in range(ring.s + 1):
            assert A.torsion_size(t) == ring.q ** c[t]


@pytest.mark.parametrize("name,m,count", [("Z4", 1, 3), ("Z4", 2, 15), ("F2", 2, 5),
                                          ("F2u2", 2, 15), ("F3", 2, 6), ("Z8", 1, 4)])
def test_lattice_counts(name, m, count):
    ring = parse_ring(name)
    lat = lattice(ring, m)
    assert len(lat) == count
    assert len(set(lat)) == count
    assert len({A.elements for A in lat}) == count


@pytest.mark.parametrize("name,m", [("Z4", 1), ("Z4", 2), ("F2", 2), ("F2u2", 2), ("F3", 1),
                                    ("F2", 3)])
def test_lattice_matches_subset_closure(name, m):
    ring = parse_ring(name)
    assert len(lattice(ring, m)) == subset_closure_count(ring, m)


def test_lattice_order_and_guard(z4):
    lat = lattice(z4, 2)
    assert lat[0] == Submodule.zero(z4, 2) and lat[-1] == Submodule.full(z4, 2)
    assert [A.size for A in lat] == sorted(A.size for A in lat)
    with pytest.raises(GuardExceeded):
        lattice(z4, 2, guard=10)


def test_moebius_examples(z4, f2):
    mob = moebius_table(lattice(z4, 1))
    chain = mob.lattice
    assert [mob(chain[0], V) for V in chain] == [1, -1, 0]
    mob2 = moebius_table(lattice(f2, 2))
    assert mob2(Submodule.zero(f2, 2), Submodule.full(f2, 2)) == 2
    for V in mob2.lattice:
        assert mob2(V, V) == 1
    with pytest.raises(ValueError):
        mob2(Submodule.full(f2, 2), Submodule.zero(f2, 2))


@pytest.mark.parametrize("name", ["Z4", "F2u2", "F3", "Z8"])
def test_moebius_sums_vanish(name):
    ring = parse_ring(name)
    mob = MoebiusTable(lattice(ring, 2))
    k = len(mob.lattice)
    for b in range(k):
        for v in range(k):
            if mob.leq[b, v] and b != v:
                s = sum(mob.mu[b, w] for w in range(k) if mob.leq[b, w] and mob.leq[w, v])
                assert s == 0


def test_count_rank1_examples(z4, f2):
    assert count_rank1_submodules(z4, 2, 1) == 3
    assert count_rank1_submodules(z4, 2, 2) == 6
    assert count_rank1_submodules(f2, 2, 1) == 3
    lat = lattice(z4, 2)
    small = [A for A in lat if A.module_rank == 1 and A.size == 2]
    assert {A.gens for A in small} == {((2, 0),), ((0, 2),), ((2, 2),)}
    assert sum(1 for A in lat if A.module_rank == 1 and A.size == 4) == 6
    with pytest.raises(ValueError):
        count_rank1_submodules(z4, 2, 0)


@pytest.mark.parametrize("name", ["Z4", "F2u2", "F2", "Z8"])
def test_submodule_count_report(name):
    rep = submodule_count_report(parse_ring(name), 2)
    assert rep["holds"], rep


def test_preimage_counts(z4):
    # |{z in B : pi^t z = 0}| = |{y in A : pi^(t-1) y = 0}| * q^m with B = pi^-1 A
    for A in lattice(z4, 2):
        B = A.pi_preimage()
        direct = {v for v in all_vectors(z4, 2) if tuple(z4.mul(2, x) for x in v) in A}
        assert set(map(tuple, B.vectors.tolist())) == direct
        for t in (1, 2):
            assert B.torsion_size(t) == A.torsion_size(t - 1) * 4


def test_submodule_ops(z4):
    A = Submodule.span(z4, 2, [(2, 0)])
    B = Submodule.span(z4, 2, [(0, 2)])
    assert (A + B).size == 4
    assert (A & B) == Submodule.zero(z4, 2)
    assert A < A + B and not (A + B) <= A
    assert (2, 0) in A and (1, 0) not in A
    assert Submodule.span(z4, 2, [(1, 0)]).times_pi() == A
    assert A.to_json() == {"generators": [[2, 0]], "size": 2, "iso_profile": [0, 1, 1], "rank": 1}
