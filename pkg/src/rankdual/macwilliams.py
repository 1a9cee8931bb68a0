"""Submodule codes in Mat_{m,n}(R), dual codes and MacWilliams identities."""

import json
from dataclasses import dataclass

import numpy as np

from .cyclotomic import CycInt
from .errors import InconsistencyError
from .linalg import howell_form, kernel, pivot_exponents
from .rankspace import TupleSpace


class Code:
    """An R-submodule of a TupleSpace, given by generator elements.

    Generators are element indices of the space; the trace inner product on
    matrices is the standard inner product on their column-major entry
    vectors, so the code lives in R^{mn} for all linear algebra.
    """

    def __init__(self, space, generators=()):
        self.space = space
        ring = space.ring
        gens = [space.entries[int(g)].tolist() for g in generators]
        self.howell = howell_form(ring, gens, space.length)
        self.generators = [int(space.index_of_entries(np.array(g))) for g in self.howell]
        self.elements = self._enumerate()
        self._verify_closed()

    @classmethod
    def from_vectors(cls, space, vectors):
        """Build from column-major entry vectors of length m*n."""
        return cls(space, [int(space.index_of_entries(np.array(v))) for v in vectors])

    def _enumerate(self):
        ring = self.space.ring
        L = self.space.length
        acc = np.zeros((1, L), dtype=np.int64)
        for g, e in zip(self.howell, pivot_exponents(ring, self.howell)):
            coeffs = np.arange(ring.q ** (ring.s - e))
            mult = ring.mul_table[coeffs[:, None], np.array(g)[None, :]]
            acc = ring.add_table[acc[:, None, :], mult[None, :, :]].reshape(-1, L)
        return np.sort(self.space.index_of_entries(acc))

    def _verify_closed(self):
        els = self.elements
        if els[0] != 0:
            raise InconsistencyError("code does not contain 0")
        if len(np.unique(els)) != len(els):
            raise InconsistencyError("code enumeration produced repeats")
        if self.space.size % len(els):
            raise InconsistencyError("code size does not divide the space size")
        member = np.zeros(self.space.size, dtype=bool)
        member[els] = True
        # els is finite, holds 0 and lies in the span, so closure under adding
        # each generator already forces closure under addition
        gens = np.array(self.generators, dtype=np.int64)
        sums = self.space.elementwise(self.space.ring.add_table, els[:, None], gens[None, :])
        if not member[sums].all():
            raise InconsistencyError("code is not closed under addition")
        ring = self.space.ring
        for r in range(ring.size):
            scaled = self.space.index_of_entries(ring.mul_table[r, self.space.entries[els]])
            if not member[scaled].all():
                raise InconsistencyError("code is not closed under scaling")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, idx):
        i = np.searchsorted(self.elements, idx)
        return i < len(self.elements) and self.elements[i] == idx

    def __eq__(self, other):
        return (isinstance(other, Code) and self.space == other.space
                and np.array_equal(self.elements, other.elements))

    __hash__ = None

    def __repr__(self):
        return f"Code(|C|={len(self)} in {self.space})"

    def to_json(self):
        sp = self.space
        gens = []
        for g in self.generators:
            mat = sp.matrix(g)
            gens.append([x for row in mat for x in row])
        return {"ring": sp.ring.name, "m": sp.m, "n": sp.n, "generators": gens}


def dual_code(C):
    """Annihilator of C under the trace inner product, solved as a linear system."""
    space = C.space
    K = kernel(space.ring, [list(g) for g in C.howell], space.length)
    D = Code.from_vectors(space, K.gens)
    if len(C) * len(D) != space.size:
        raise InconsistencyError("|C| * |dual| differs from the space size")
    return D


def character_dual(f, C):
    """{beta : f(alpha, beta) = 1 for all alpha in C}, by direct character search."""
    E = f.exponents(C.elements, np.arange(f.space.size))
    return np.flatnonzero(~E.any(axis=0))


@dataclass
class Distribution:
    partition: object
    counts: list

    def to_json(self):
        return list(self.counts)


def distribution(C, P):
    if P.space != C.space:
        raise ValueError("code and partition live on different spaces")
    return Distribution(P, np.bincount(P.class_of[C.elements], minlength=len(P)).tolist())


def _predict(weights, matrix, size, by_rows):
    """(1/size) * sum_i weights[i] * matrix-line i, asserting integrality."""
    K = len(matrix.entries)
    L = len(matrix.entries[0])
    n = matrix.entries[0][0].order
    out = []
    rng = range(L) if by_rows else range(K)
    for j in rng:
        acc = CycInt.from_int(n, 0)
        for i, w in enumerate(weights):
            if w:
                x = matrix.entries[i][j] if by_rows else matrix.entries[j][i]
                acc = acc + x.scale(w)
        v = acc.as_integer()
        if v is None or v % size:
            raise InconsistencyError(f"prediction {acc} / {size} is not an integer")
        out.append(v // size)
    return out


def macwilliams_predict(dist, kraw, code_size=None):
    """Predicted distribution of the dual code.

    With rho (left), ``dist`` is the Lambda-distribution of C and the result
    is the Gamma-distribution of the dual.  With epsilon (right), ``dist`` is
    the Gamma-distribution of D and the result the Lambda-distribution of its
    dual.
    """
    size = code_size if code_size is not None else sum(dist.counts)
    if kraw.side == "left":
        return Distribution(kraw.cols, _predict(dist.counts, kraw, size, by_rows=True))
    return Distribution(kraw.rows, _predict(dist.counts, kraw, size, by_rows=False))


def macwilliams_verify(C, kraw):
    """Compare the identity's prediction for the dual of C with the actual counts."""
    D = dual_code(C)
    if kraw.side == "left":
        given, target = kraw.rows, kraw.cols
    else:
        given, target = kraw.cols, kraw.rows
    dist = distribution(C, given)
    predicted = macwilliams_predict(dist, kraw)
    actual = distribution(D, target)
    return {"code_size": len(C), "dual_size": len(D), "side": kraw.side,
            "distribution": dist.counts, "predicted": predicted.counts,
            "actual": actual.counts, "verdict": predicted.counts == actual.counts}


def random_code(space, rng, max_gens=3):
    k = int(rng.integers(1, max_gens + 1))
    return Code(space, rng.integers(0, space.size, size=k).tolist())


def load_code(path_or_obj, guard=None):
    """Read the code file format {ring, m, n, generators: [[row-major entries]]}."""
    from .chainring import parse_ring

    obj = path_or_obj
    if not isinstance(obj, dict):
        with open(path_or_obj) as fh:
            obj = json.load(fh)
    try:
        ring = parse_ring(obj["ring"])
        m, n = int(obj["m"]), int(obj["n"])
        space = TupleSpace(ring, m, n) if guard is None else TupleSpace(ring, m, n, guard)
        gens = []
        for g in obj["generators"]:
            if g and isinstance(g[0], list):
                mat = [[int(x) for x in row] for row in g]
            else:
                flat = [int(x) for x in g]
                if len(flat) != m * n:
                    raise ValueError(f"generator has {len(flat)} entries, expected {m * n}")
                mat = [flat[i * n:(i + 1) * n] for i in range(m)]
            if len(mat) != m or any(len(r) != n for r in mat):
                raise ValueError("generator has the wrong shape")
            if any(not 0 <= x < ring.size for row in mat for x in row):
                raise ValueError("generator entry out of range")
            gens.append(space.index(mat))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed code file: {exc}") from exc
    return Code(space, gens)
