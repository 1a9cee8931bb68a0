"""Character pairings, dual partitions and generalized Krawtchouk matrices.

The pairing on (R^m)^n is f(alpha, beta) = chi(sum_i <alpha_i, beta_i>) with
the standard inner product on R^m and a generating character chi of R.  Since
chi(a) = zeta^k(a) for an integer table k, every sum of f-values over a set is
a histogram of exponents mod the character order; reducing that histogram by
the cyclotomic polynomial gives an exact canonical value, which is what the
dual partitions group on.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .cyclotomic import CycInt, canonical_degree, reduce_counts
from .errors import InconsistencyError
from .linalg import MoebiusTable, lattice
from .rankspace import Partition, partition_by_iso, partition_by_rank

_CHUNK_CELLS = 2_000_000


class Pairing:
    """f(alpha, beta) = chi(<alpha, beta>) on a TupleSpace (alt selects chi(u * .))."""

    def __init__(self, space, alt=False):
        self.space = space
        self.alt = alt
        self.order = space.ring.char_order
        self.table = space.ring.pair_table[alt]

    def __repr__(self):
        return f"Pairing({self.space}, alt={self.alt})"

    def exponents(self, rows, cols):
        """Exponent matrix of f over index arrays rows x cols."""
        X = self.space.entries
        rows = np.asarray(rows)
        cols = np.asarray(cols)
        E = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for k in range(X.shape[1]):
            E += self.table[X[rows, k][:, None], X[cols, k][None, :]]
        return E % self.order

    def __call__(self, a, b):
        e = int(self.exponents([a], [b])[0, 0])
        c = [0] * self.order
        c[e] = 1
        return CycInt(self.order, c)


def pair(f, alpha, beta):
    return f(alpha, beta)


def signature_counts(f, P, rows=None, side="left"):
    """Canonical coefficient arrays of the class sums, shape (len(rows), |P|, deg).

    side="left": entry [i, B] is sum_{b in B} f(rows[i], b).
    side="right": entry [i, A] is sum_{a in A} f(a, rows[i]).
    """
    space = f.space
    N = space.size
    if P.space != space:
        raise ValueError("partition lives on a different space")
    rows = np.arange(N) if rows is None else np.asarray(rows)
    n = f.order
    K = len(P)
    allidx = np.arange(N)
    out = np.empty((len(rows), K, n), dtype=np.int64)
    chunk = max(1, _CHUNK_CELLS // N)
    cls = P.class_of[None, :] * n
    for start in range(0, len(rows), chunk):
        r = rows[start:start + chunk]
        if side == "left":
            E = f.exponents(r, allidx)
        elif side == "right":
            E = f.exponents(allidx, r).T
        else:
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        offs = (np.arange(len(r)) * (K * n))[:, None]
        key = (cls + E + offs).ravel()
        out[start:start + len(r)] = np.bincount(key, minlength=len(r) * K * n).reshape(len(r), K, n)
    reduce_counts(out, n)
    return out[..., :canonical_degree(n)]


def _to_cycints(row, n):
    deg = row.shape[-1]
    return tuple(CycInt(n, tuple(int(x) for x in r) + (0,) * (n - deg)) for r in row)


def _group(f, sig, side):
    flat = sig.reshape(sig.shape[0], -1)
    uniq, first, inverse = np.unique(flat, axis=0, return_index=True, return_inverse=True)
    labels = [_to_cycints(sig[i], f.order) for i in first]
    return Partition.from_inverse(f.space, inverse, labels, "signature", side)


def left_dual_partition(f, gamma, sig=None):
    """l(Gamma): group alpha by the values sum_{b in B} f(alpha, b), B in Gamma."""
    if sig is None:
        sig = signature_counts(f, gamma, side="left")
    return _group(f, sig, "left")


def right_dual_partition(f, lam, sig=None):
    """r(Lambda): group beta by the values sum_{a in A} f(a, beta), A in Lambda."""
    if sig is None:
        sig = signature_counts(f, lam, side="right")
    return _group(f, sig, "right")


def class_sums(f, alpha, gamma):
    """[sum_{b in B} f(alpha, b) for B in gamma] as CycInts."""
    return list(_to_cycints(signature_counts(f, gamma, [alpha])[0], f.order))


# ---------------------------------------------------------------------------
# Krawtchouk matrices
# ---------------------------------------------------------------------------

@dataclass
class KrawtchoukMatrix:
    rows: Partition
    cols: Partition
    entries: list
    side: str

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def is_integral(self):
        return all(x.as_integer() is not None for r in self.entries for x in r)

    def as_integers(self):
        out = [[x.as_integer() for x in r] for r in self.entries]
        if any(v is None for r in out for v in r):
            raise ValueError("matrix has non-integral entries")
        return out

    def to_json(self):
        if self.is_integral():
            ent = self.as_integers()
        else:
            ent = [[x.to_json() for x in r] for r in self.entries]
        return {"side": self.side, "row_kind": self.rows.kind, "col_kind": self.cols.kind,
                "shape": list(self.shape), "integral": self.is_integral(), "entries": ent}

    def to_csv(self):
        def cell(x):
            v = x.as_integer()
            return str(v) if v is not None else " ".join(map(str, x.coeffs))
        return "\n".join(",".join(cell(x) for x in r) for r in self.entries) + "\n"


def krawtchouk(f, lam, gamma, side="left"):
    """rho (side="left") or epsilon (side="right") for the pair (lam, gamma).

    rho(A, B) = sum_{b in B} f(a, b) for any a in A; needs lam finer than l(gamma).
    epsilon(A, B) = sum_{c in A} f(c, d) for any d in B; needs gamma finer than r(lam).
    """
    n = f.order
    if side == "left":
        sig = signature_counts(f, gamma, side="left")
        dual = left_dual_partition(f, gamma, sig)
        if not lam.refines(dual):
            raise ValueError("row partition is not finer than the left dual of the column partition")
        outer = lam
    elif side == "right":
        sig = signature_counts(f, lam, side="right")
        dual = right_dual_partition(f, lam, sig)
        if not gamma.refines(dual):
            raise ValueError("column partition is not finer than the right dual of the row partition")
        outer = gamma
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    table = []
    for c in range(len(outer)):
        mem = outer.members(c)
        first = sig[mem[0]]
        if len(mem) > 1 and not np.array_equal(first, sig[mem[1]]):
            raise InconsistencyError(f"Krawtchouk entry depends on the representative of class {c}")
        table.append(_to_cycints(first, n))
    if side == "left":
        entries = [list(r) for r in table]
    else:
        entries = [[table[b][a] for b in range(len(gamma))] for a in range(len(lam))]
    return KrawtchoukMatrix(lam, gamma, entries, side)


def orthogonality_check(rho, eps, group_size):
    """Both orthogonality relations between rho and epsilon, exactly."""
    K = len(rho.entries)
    L = len(rho.entries[0]) if K else 0
    n = rho.entries[0][0].order
    zero = CycInt.from_int(n, 0)
    for u in range(L):
        for v in range(L):
            acc = zero
            for a in range(K):
                acc = acc + eps.entries[a][u] * rho.entries[a][v].conj()
            if acc != CycInt.from_int(n, group_size if u == v else 0):
                return False
    for i in range(K):
        for j in range(K):
            acc = zero
            for b in range(L):
                acc = acc + rho.entries[i][b].conj() * eps.entries[j][b]
            if acc != CycInt.from_int(n, group_size if i == j else 0):
                return False
    return True


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def closed_form_support(A, V, n, mobius):
    """sum over B <= V cap A^perp of |B|^n mu(B, V)."""
    W = V & A.annihilator()
    return sum(B.size ** n * mobius(B, V) for B in mobius.below(W))


def closed_form_rank1(A, V, n):
    """Value of sum_{tau(beta) = V} f(alpha, beta) for a cyclic V, sigma(alpha) = A."""
    if V.module_rank != 1:
        raise ValueError(f"{V} does not have rank 1")
    q = V.ring.q
    t = 0
    while q ** t < V.size:
        t += 1
    perp = A.annihilator()
    if not V.times_pi() <= perp:
        return 0
    if not V <= perp:
        return -q ** ((t - 1) * n)
    return q ** (t * n) - q ** ((t - 1) * n)


def closed_form_rank1_total(A, m, n):
    """sum over beta of rank weight 1 of f(alpha, beta), from the profile of A^perp."""
    ring = A.ring
    q, s = ring.q, ring.s
    c = A.annihilator().iso_profile
    h = (sum(q ** (c[t] + t * (n - 1) + 1) for t in range(1, s + 1))
         + sum(q ** (c[t - 1] + t * (n - 1) + m) for t in range(1, s))
         - sum(q ** (c[t - 1] + t * (n - 1) + 1) for t in range(1, s + 1))
         - sum(q ** (c[t] + t * (n - 1) + m) for t in range(1, s))
         - (q ** m - 1))
    if h % (q - 1):
        raise InconsistencyError(f"{h} is not divisible by q - 1 = {q - 1}")
    return h // (q - 1)


def hamming_support_closed_form(q, D, I):
    """sum over beta with support I of f(alpha, beta), supp(alpha) = D."""
    D, I = set(D), set(I)
    return (-1) ** len(I & D) * (q - 1) ** len(I - D)


def hamming_weight_closed_form(q, n, w, k):
    """sum over beta of weight k of f(alpha, beta), wt(alpha) = w."""
    return sum((-1) ** t * (q - 1) ** (k - t) * comb(w, t) * comb(n - w, k - t)
               for t in range(k + 1))


def gaussian_binomial(b, a, q):
    """Number of a-dimensional subspaces of F_q^b."""
    if a < 0 or a > b:
        return 0
    num = den = 1
    for i in range(a):
        num *= q ** (b - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def field_moebius(a, b, q):
    """Moebius value between subspaces of dimensions a <= b."""
    return (-1) ** (b - a) * q ** comb(b - a, 2)


def field_support_closed_form(A, V, n):
    """Field case of the support sum: dimension formula with Gaussian binomials."""
    ring = A.ring
    if not ring.is_field:
        raise ValueError("field formula needs s = 1")
    q = ring.q
    v = V.module_rank
    d = (V & A.annihilator()).module_rank
    return sum((-1) ** (v - t) * q ** (t * n + comb(v - t, 2)) * gaussian_binomial(d, t, q)
               for t in range(v + 1))


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

@dataclass
class ReflexivityVerdict:
    reflexive: bool
    num_classes: int
    num_dual_classes: int
    dual: Partition
    double_dual: Partition

    def to_json(self):
        return {"reflexive": self.reflexive, "classes": self.num_classes,
                "dual_classes": self.num_dual_classes,
                "double_dual_classes": len(self.double_dual)}


def is_reflexive(f, gamma):
    """Reflexivity of gamma, decided by r(l(gamma)) == gamma and by class counts."""
    dual = left_dual_partition(f, gamma)
    back = right_dual_partition(f, dual)
    by_equality = back == gamma
    by_count = len(gamma) == len(dual)
    if by_equality != by_count:
        raise InconsistencyError(
            f"reflexivity criteria disagree: r(l(G)) == G is {by_equality}, "
            f"|G| == |l(G)| is {by_count}")
    if not back.refines(gamma):
        raise InconsistencyError("r(l(G)) is not finer than G")
    return ReflexivityVerdict(by_equality, len(gamma), len(dual), dual, back)


def mutually_dual(f, lam, gamma):
    left = left_dual_partition(f, gamma)
    right = right_dual_partition(f, lam)
    ok = lam.refines(left) and gamma.refines(right)
    if ok and not (len(lam) == len(gamma) and lam == left and gamma == right):
        raise InconsistencyError("mutually dual pair violates |L| = |G|, L = l(G), G = r(L)")
    return ok


def rank_test_keys(f, psi3=None):
    """Per-element keys for the three equivalent conditions.

    Returns integer arrays (profile_id, all_rank_sums_id, rank1_sum_id) such
    that two elements satisfy a condition iff their ids agree.
    """
    space = f.space
    if space.m < 2 or space.n < 2:
        raise ValueError("needs m >= 2 and n >= 2")
    if psi3 is None:
        psi3 = partition_by_rank(space, side="right")
    lam2 = partition_by_iso(space)
    sig = signature_counts(f, psi3, side="left")
    r1 = psi3.class_with_label(1)
    _, full_id = np.unique(sig.reshape(len(sig), -1), axis=0, return_inverse=True)
    _, r1_id = np.unique(sig[:, r1, :], axis=0, return_inverse=True)
    return lam2.class_of, full_id.ravel(), r1_id.ravel()


def theorem_4_2_equivalence(f, alpha, gamma, keys=None):
    """Evaluate the three conditions for one pair; they must agree."""
    if keys is None:
        keys = rank_test_keys(f)
    iso, full, r1 = keys
    report = {"isomorphic_supports": bool(iso[alpha] == iso[gamma]),
              "all_rank_sums_equal": bool(full[alpha] == full[gamma]),
              "rank1_sums_equal": bool(r1[alpha] == r1[gamma])}
    if len(set(report.values())) != 1:
        raise InconsistencyError(f"conditions disagree for ({alpha}, {gamma}): {report}")
    return report


def rank_test_scan(f, keys=None):
    """Exhaustive pairwise comparison; returns the number of disagreeing pairs."""
    if keys is None:
        keys = rank_test_keys(f)
    iso, full, r1 = keys
    e1 = iso[:, None] == iso[None, :]
    e2 = full[:, None] == full[None, :]
    e3 = r1[:, None] == r1[None, :]
    return {"pairs": int(e1.size),
            "mismatch_1_3": int(np.count_nonzero(e1 != e3)),
            "mismatch_1_2": int(np.count_nonzero(e1 != e2))}


def support_lattice(space):
    """Complete submodule lattice of R^m with its Moebius table."""
    return MoebiusTable(lattice(space.ring, space.m))

