"""Matrices and submodules over a finite chain ring.

Matrices are lists of rows of element codes.  A submodule of R^m is stored by
the Howell form of any generating set, which is unique per row span, so
``Submodule`` equality and hashing reduce to comparing generator tuples.
"""

from functools import cached_property

import numpy as np

from .errors import DEFAULT_GUARD, check_guard


def _row_axpy(ring, row, c, other):
    """row - c * other."""
    return [ring.sub(x, ring.mul(c, y)) for x, y in zip(row, other)]


def _row_scale(ring, c, row):
    return [ring.mul(c, x) for x in row]


def howell_form(ring, rows, ncols=None):
    """Canonical generator matrix of the row span of ``rows``.

    Pivot columns strictly increase, each pivot is pi^e, entries above a pivot
    pi^e are residues mod pi^e, and zero rows are dropped.  After fixing a
    pivot with exponent e > 0 we also feed pi^{s-e} * (pivot row) back into
    the work list; that row is zero in the pivot column and keeps the result
    closed under taking annihilator multiples (the Howell property).
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("ncols needed for an empty matrix")
        ncols = len(rows[0])
    s = ring.s
    work = [r for r in rows if any(r)]
    pivots = []  # (col, exponent, row)
    for j in range(ncols):
        best = None
        for idx, r in enumerate(work):
            if r[j]:
                v = ring.valuation(r[j])
                if best is None or v < best[0]:
                    best = (v, idx)
        if best is None:
            continue
        e, idx = best
        prow = work.pop(idx)
        unit, _ = ring.divmod_pi(prow[j], e)
        prow = _row_scale(ring, ring.inv(unit), prow)
        nxt = []
        for r in work:
            if r[j]:
                c, rem = ring.divmod_pi(r[j], e)
                assert rem == 0
                r = _row_axpy(ring, r, c, prow)
            if any(r):
                nxt.append(r)
        if e > 0:
            ann = [ring.times_pi_power(x, s - e) for x in prow]
            if any(ann):
                nxt.append(ann)
        work = nxt
        pivots.append((j, e, prow))
    out = [p[2] for p in pivots]
    for k, (j, e, prow) in enumerate(pivots):
        for i in range(k):
            c, _ = ring.divmod_pi(out[i][j], e)
            if c:
                out[i] = _row_axpy(ring, out[i], c, prow)
    return tuple(tuple(r) for r in out)


def pivot_exponents(ring, gens):
    """Exponents e with pivot entry pi^e for a Howell-form matrix."""
    out = []
    for r in gens:
        for x in r:
            if x:
                out.append(ring.valuation(x))
                break
    return out


def smith_form(ring, a):
    """Return (exponents, left, right) with left * a * right = diag(pi^e_i).

    Exponents are sorted ascending, padded to min(rows, cols) with s for the
    zero diagonal entries.  The pivot at each step is the entry of least
    valuation in the remaining block, ties going to the smallest (row, col).
    """
    A = [list(r) for r in a]
    m = len(A)
    n = len(A[0]) if m else 0
    L = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Rt = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    s = ring.s
    exps = []
    for k in range(min(m, n)):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if A[i][j]:
                    v = ring.valuation(A[i][j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        e, i, j = best
        A[k], A[i] = A[i], A[k]
        L[k], L[i] = L[i], L[k]
        for row in A:
            row[k], row[j] = row[j], row[k]
        for row in Rt:
            row[k], row[j] = row[j], row[k]
        unit, _ = ring.divmod_pi(A[k][k], e)
        w = ring.inv(unit)
        A[k] = _row_scale(ring, w, A[k])
        L[k] = _row_scale(ring, w, L[k])
        for i2 in range(k + 1, m):
            if A[i2][k]:
                c, _ = ring.divmod_pi(A[i2][k], e)
                A[i2] = _row_axpy(ring, A[i2], c, A[k])
                L[i2] = _row_axpy(ring, L[i2], c, L[k])
        for j2 in range(k + 1, n):
            if A[k][j2]:
                c, _ = ring.divmod_pi(A[k][j2], e)
                for row in A:
                    row[j2] = ring.sub(row[j2], ring.mul(c, row[k]))
                for row in Rt:
                    row[j2] = ring.sub(row[j2], ring.mul(c, row[k]))
        exps.append(e)
    exps += [s] * (min(m, n) - len(exps))
    return tuple(exps), L, Rt


def smith_invariants(ring, a):
    return smith_form(ring, a)[0]


def matmul(ring, a, b):
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        r = []
        for j in range(n):
            acc = 0
            for x, brow in zip(row, b):
                acc = ring.add(acc, ring.mul(x, brow[j]))
            r.append(acc)
        out.append(r)
    return out


def transpose(a):
    return [list(r) for r in zip(*a)]


def rank(ring, a):
    """Number of Smith exponents below s."""
    return sum(1 for e in smith_invariants(ring, a) if e < ring.s)


# ---------------------------------------------------------------------------
# Submodules of R^m
# ---------------------------------------------------------------------------

def vector_index(ring, v):
    """Lexicographic position of v in R^m (first entry most significant)."""
    idx = 0
    for x in v:
        idx = idx * ring.size + x
    return idx


def index_vector(ring, idx, m):
    out = [0] * m
    for i in range(m - 1, -1, -1):
        idx, out[i] = divmod(idx, ring.size)
    return tuple(out)


class Submodule:
    """A submodule of the free module R^m, held as a Howell-form generator matrix."""

    def __init__(self, ring, m, gens):
        self.ring = ring
        self.m = m
        self.gens = tuple(tuple(int(x) for x in g) for g in gens)

    @classmethod
    def span(cls, ring, m, vectors):
        return cls(ring, m, howell_form(ring, list(vectors), m))

    @classmethod
    def zero(cls, ring, m):
        return cls(ring, m, ())

    @classmethod
    def full(cls, ring, m):
        return cls.span(ring, m, [[1 if i == j else 0 for j in range(m)] for i in range(m)])

    def __eq__(self, other):
        return (isinstance(other, Submodule) and self.m == other.m
                and self.ring == other.ring and self.gens == other.gens)

    def __hash__(self):
        return hash((self.m, self.gens))

    def __repr__(self):
        f = self.ring.format
        g = ", ".join("(" + ",".join(f(x) for x in r) + ")" for r in self.gens)
        return f"Submodule({self.ring.name}^{self.m}: <{g}>)"

    def sort_key(self):
        return (self.size, self.gens)

    @cached_property
    def size(self):
        ring = self.ring
        return ring.q ** sum(ring.s - e for e in pivot_exponents(ring, self.gens))

    @cached_property
    def vectors(self):
        """All members as an (size, m) array, each listed once."""
        ring = self.ring
        acc = np.zeros((1, self.m), dtype=np.int64)
        for g, e in zip(self.gens, pivot_exponents(ring, self.gens)):
            coeffs = np.arange(ring.q ** (ring.s - e))
            multiples = ring.mul_table[coeffs[:, None], np.array(g)[None, :]]
            acc = ring.add_table[acc[:, None, :], multiples[None, :, :]].reshape(-1, self.m)
        return acc

    @cached_property
    def elements(self):
        """Frozen set of member vector indices."""
        w = self.ring.size ** np.arange(self.m - 1, -1, -1)
        return frozenset((self.vectors * w).sum(axis=1).tolist())

    def __contains__(self, v):
        return vector_index(self.ring, v) in self.elements

    def __le__(self, other):
        return all(g in other for g in self.gens)

    def __lt__(self, other):
        return self <= other and self != other

    def __add__(self, other):
        return Submodule.span(self.ring, self.m, self.gens + other.gens)

    def __and__(self, other):
        return (self.annihilator() + other.annihilator()).annihilator()

    def times_pi(self, e=1):
        """pi^e * self."""
        ring = self.ring
        return Submodule.span(ring, self.m,
                              [[ring.times_pi_power(x, e) for x in g] for g in self.gens])

    def pi_preimage(self):
        """{y : pi*y in self}, computed as (pi * self^perp)^perp."""
        return self.annihilator().times_pi().annihilator()

    def annihilator(self):
        if not self.gens:
            return Submodule.full(self.ring, self.m)
        return kernel(self.ring, self.gens, self.m)

    @cached_property
    def smith_exponents(self):
        if not self.gens:
            return ()
        return smith_invariants(self.ring, self.gens)

    @cached_property
    def iso_profile(self):
        """(c_0, ..., c_s) with q^{c_t} = |{y in self : pi^t y = 0}|."""
        s = self.ring.s
        lam = [s - d for d in self.smith_exponents]
        return tuple(sum(min(l, t) for l in lam) for t in range(s + 1))

    @property
    def module_rank(self):
        return self.iso_profile[1] if self.ring.s >= 1 else 0

    def torsion_size(self, t):
        """|{y in self : pi^t y = 0}| by enumeration."""
        ring = self.ring
        if t >= ring.s:
            return self.size
        scaled = ring.mul_table[ring.pi_power(t), self.vectors]
        return int(np.count_nonzero(~scaled.any(axis=1)))

    def to_json(self):
        return {"generators": [list(g) for g in self.gens], "size": self.size,
                "iso_profile": list(self.iso_profile), "rank": self.module_rank}


def kernel(ring, g, ncols):
    """{x in R^ncols : g x = 0} for a matrix g given as rows."""
    g = [list(r) for r in g]
    if not g:
        return Submodule.full(ring, ncols)
    exps, _, Rt = smith_form(ring, g)
    gens = []
    for i in range(ncols):
        col = [Rt[r][i] for r in range(ncols)]
        if i < len(exps):
            k = ring.s - exps[i]
            if k >= ring.s:
                continue
            col = [ring.times_pi_power(x, k) for x in col]
        gens.append(col)
    return Submodule.span(ring, ncols, gens)


def annihilator(A):
    return A.annihilator()


def iso_profile(A):
    return A.iso_profile


def module_rank(A):
    return A.module_rank


def iso_profile_from_partition(s, lam):
    """Profile of prod_i R/R pi^{lam_i}: c_t = sum_i min(lam_i, t)."""
    return tuple(sum(min(l, t) for l in lam) for t in range(s + 1))


def lattice(ring, m, guard=DEFAULT_GUARD):
    """Every submodule of R^m, sorted by (size, generators).

    Built by m rounds of adjoining one more vector to each module found so
    far, since every submodule of R^m has a generating set of size <= m.
    """
    total = ring.size ** m
    check_guard(total, guard, f"R^{m} over {ring.name}")
    vecs = [index_vector(ring, i, m) for i in range(1, total)]
    zero = Submodule.zero(ring, m)
    found = {zero}
    frontier = [zero]
    for _ in range(m):
        nxt = []
        for S in frontier:
            for v in vecs:
                if v in S:
                    continue
                T = Submodule.span(ring, m, S.gens + (v,))
                if T not in found:
                    found.add(T)
                    nxt.append(T)
        frontier = nxt
    return sorted(found, key=Submodule.sort_key)


class MoebiusTable:
    """Moebius function of the inclusion order on a complete submodule lattice."""

    def __init__(self, lat):
        self.lattice = list(lat)
        self.index = {S: i for i, S in enumerate(self.lattice)}
        k = len(self.lattice)
        elems = [S.elements for S in self.lattice]
        self.leq = np.zeros((k, k), dtype=bool)
        for i in range(k):
            for j in range(k):
                if self.lattice[i].size <= self.lattice[j].size:
                    self.leq[i, j] = elems[i] <= elems[j]
        self.mu = {}
        for b in range(k):
            for v in range(k):
                if not self.leq[b, v]:
                    continue
                if b == v:
                    self.mu[b, v] = 1
                else:
                    self.mu[b, v] = -sum(self.mu[b, w] for w in range(k)
                                         if w != v and self.leq[b, w] and self.leq[w, v])

    def __call__(self, B, V):
        b, v = self.index[B], self.index[V]
        if not self.leq[b, v]:
            raise ValueError(f"{B} is not contained in {V}")
        return self.mu[b, v]

    def below(self, V):
        """Lattice members contained in V."""
        v = self.index[V]
        return [S for i, S in enumerate(self.lattice) if self.leq[i, v]]

    def triples(self):
        return [(b, v, val) for (b, v), val in sorted(self.mu.items())]


def moebius_table(lat):
    return MoebiusTable(lat)


def count_rank1_submodules(ring, m, t, within=None):
    """Number of cyclic submodules of size q^t inside M (default M = R^m).

    Counts elements of exact annihilator order q^t and divides by the number
    of generators of each such cyclic module, q^t - q^{t-1}.
    """
    if not 1 <= t <= ring.s:
        raise ValueError("need 1 <= t <= s")
    M = within if within is not None else Submodule.full(ring, m)
    c = M.iso_profile
    num = ring.q ** c[t] - ring.q ** c[t - 1]
    den = ring.q ** t - ring.q ** (t - 1)
    if num % den:
        raise ArithmeticError(f"{num} not divisible by {den}")
    return num // den


def _log_q(q, x):
    k = 0
    while q ** k < x:
        k += 1
    if q ** k != x:
        raise ArithmeticError(f"{x} is not a power of {q}")
    return k


def submodule_count_report(ring, m, guard=DEFAULT_GUARD):
    """Check the four counting statements on every submodule of R^m.

    Each statement is compared against a direct enumeration:
    (1) |A[pi^t]| equals q^{c_t} from the profile;
    (2) equal enumerated torsion counts iff equal nonzero Smith exponents;
    (3) B = {y : pi y in A} has |B[pi^t]| = |A[pi^{t-1}]| q^m;
    (4) cyclic submodules of size q^t inside M, counted in the lattice,
        match the quotient formula.
    """
    lat = lattice(ring, m, guard)
    q, s = ring.q, ring.s
    allvec = np.array([index_vector(ring, i, m) for i in range(ring.size ** m)], dtype=np.int64)
    w = ring.size ** np.arange(m - 1, -1, -1)
    pi_all = ring.mul_table[ring.pi(), allvec]
    out = {"submodules": len(lat), "part1": 0, "part2": 0, "part3": 0, "part4": 0, "cases": 0}

    torsion = {A: tuple(A.torsion_size(t) for t in range(s + 1)) for A in lat}
    for A in lat:
        out["cases"] += 1
        if any(torsion[A][t] != q ** A.iso_profile[t] for t in range(s + 1)):
            out["part1"] += 1

    def shape(A):
        return tuple(sorted(e for e in A.smith_exponents if e < s))

    for A in lat:
        for C in lat:
            if (torsion[A] == torsion[C]) != (shape(A) == shape(C)):
                out["part2"] += 1

    for A in lat:
        members = np.zeros(ring.size ** m, dtype=bool)
        members[list(A.elements)] = True
        B_enum = frozenset(np.flatnonzero(members[pi_all @ w]).tolist())
        B = A.pi_preimage()
        if B.elements != B_enum:
            out["part3"] += 1
            continue
        for t in range(1, s + 1):
            if B.torsion_size(t) != A.torsion_size(t - 1) * q ** m:
                out["part3"] += 1

    cyclic = []
    for C in lat:
        if C.size > 1 and any(Submodule.span(ring, m, [tuple(v)]) == C for v in C.vectors.tolist()):
            cyclic.append(C)
    for M in lat:
        for t in range(1, s + 1):
            direct = sum(1 for C in cyclic if C.size == q ** t and C.elements <= M.elements)
            if direct != count_rank1_submodules(ring, m, t, within=M):
                out["part4"] += 1
    out["holds"] = not any(out[k] for k in ("part1", "part2", "part3", "part4"))
    return out
