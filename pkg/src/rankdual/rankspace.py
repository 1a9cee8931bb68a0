"""The tuple space (R^m)^n = Mat_{m,n}(R) and partitions of it.

A tuple alpha = (alpha_1, ..., alpha_n) of vectors in R^m is identified with
the m x n matrix whose j-th column is alpha_j.  Elements are numbered
lexicographically over the column-major entry sequence, so index 0 is the
zero matrix.
"""

from functools import cached_property

import numpy as np

from .errors import DEFAULT_GUARD, check_guard
from .linalg import Submodule, howell_form, smith_invariants


class TupleSpace:

    def __init__(self, ring, m, n, guard=DEFAULT_GUARD):
        if m < 1 or n < 1:
            raise ValueError("need m >= 1 and n >= 1")
        self.ring = ring
        self.m, self.n = m, n
        self.length = m * n
        self.size = ring.size ** self.length
        check_guard(self.size, guard, f"Mat_{m},{n}({ring.name})")
        self.weights = ring.size ** np.arange(self.length - 1, -1, -1, dtype=np.int64)

    def __eq__(self, other):
        return (isinstance(other, TupleSpace) and self.ring == other.ring
                and (self.m, self.n) == (other.m, other.n))

    def __hash__(self):
        return hash((self.ring, self.m, self.n))

    def __repr__(self):
        return f"TupleSpace({self.ring.name}, m={self.m}, n={self.n})"

    def __len__(self):
        return self.size

    @cached_property
    def entries(self):
        """(size, m*n) array of entry codes in column-major order."""
        idx = np.arange(self.size, dtype=np.int64)
        out = (idx[:, None] // self.weights[None, :]) % self.ring.size
        out.setflags(write=False)
        return out

    def matrix(self, idx):
        e = self.entries[idx]
        return [[int(e[j * self.m + i]) for j in range(self.n)] for i in range(self.m)]

    def columns(self, idx):
        e = self.entries[idx]
        return [tuple(int(x) for x in e[j * self.m:(j + 1) * self.m]) for j in range(self.n)]

    def index(self, matrix):
        flat = [matrix[i][j] for j in range(self.n) for i in range(self.m)]
        return int(np.dot(flat, self.weights))

    def index_of_entries(self, e):
        """Vectorized: entry rows (..., m*n) -> element indices."""
        return e @ self.weights

    def from_columns(self, cols):
        return self.index([[cols[j][i] for j in range(self.n)] for i in range(self.m)])

    def elementwise(self, table, a, b):
        """Indices of table[a_k, b_k] entrywise, for index arrays a and b (broadcast)."""
        ea = self.entries[np.asarray(a)]
        eb = self.entries[np.asarray(b)]
        return self.index_of_entries(table[ea, eb])

    def difference(self, a, b):
        """Index of a - b (vectorized over broadcastable index arrays)."""
        ring = self.ring
        ea = self.entries[np.asarray(a)]
        eb = ring.neg_table[self.entries[np.asarray(b)]]
        return self.index_of_entries(ring.add_table[ea, eb])

    def negation(self):
        """Index array of -alpha for every alpha."""
        return self.index_of_entries(self.ring.neg_table[self.entries])

    @cached_property
    def supports(self):
        """Rank support of every element, as a list of Submodules."""
        cache = {}
        out = []
        m = self.m
        for e in self.entries.tolist():
            key = frozenset(tuple(e[j * m:(j + 1) * m]) for j in range(self.n))
            S = cache.get(key)
            if S is None:
                S = Submodule(self.ring, m, howell_form(self.ring, [list(c) for c in key], m))
                cache[key] = S
            out.append(S)
        return out

    @cached_property
    def smith_classes(self):
        """Smith exponents of every element viewed as an m x n matrix."""
        cache = {}
        out = []
        for idx in range(self.size):
            key = tuple(self.entries[idx].tolist())
            inv = cache.get(key)
            if inv is None:
                inv = smith_invariants(self.ring, self.matrix(idx))
                cache[key] = inv
            out.append(inv)
        return out


def rank_support(space, idx):
    """Submodule of R^m spanned by the columns of element idx."""
    return space.supports[idx]


def rank_weight(space, idx):
    return space.supports[idx].module_rank


class Partition:
    """A labeled partition of a TupleSpace.

    Class ids are dense and ordered by first member, so two partitions of
    one space are equal exactly when their ``class_of`` arrays agree.
    """

    def __init__(self, space, class_of, labels, kind, side="left"):
        self.space = space
        self.class_of = np.asarray(class_of, dtype=np.int64)
        self.class_of.setflags(write=False)
        self.labels = list(labels)
        self.kind = kind
        self.side = side
        if len(self.class_of) != space.size:
            raise ValueError("class_of must cover the whole space")
        if len(self.labels) != int(self.class_of.max()) + 1:
            raise ValueError("one label per class required")

    @classmethod
    def from_keys(cls, space, keys, kind, side="left"):
        ids = {}
        labels = []
        class_of = np.empty(len(keys), dtype=np.int64)
        for i, k in enumerate(keys):
            c = ids.get(k)
            if c is None:
                c = ids[k] = len(labels)
                labels.append(k)
            class_of[i] = c
        return cls(space, class_of, labels, kind, side)

    @classmethod
    def from_inverse(cls, space, inverse, labels, kind, side="left"):
        """Relabel arbitrary group ids (e.g. from np.unique) by first occurrence."""
        inverse = np.asarray(inverse).ravel()
        _, first = np.unique(inverse, return_index=True)
        order = np.argsort(first)
        remap = np.empty(len(order), dtype=np.int64)
        remap[order] = np.arange(len(order))
        return cls(space, remap[inverse], [labels[g] for g in order], kind, side)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"Partition({self.kind}, {self.side}, {len(self)} classes on {self.space})"

    @cached_property
    def sizes(self):
        return np.bincount(self.class_of, minlength=len(self)).tolist()

    @cached_property
    def _members(self):
        order = np.argsort(self.class_of, kind="stable")
        bounds = np.cumsum([0] + self.sizes)
        return [order[bounds[c]:bounds[c + 1]] for c in range(len(self))]

    def members(self, c):
        return self._members[c]

    def representative(self, c):
        return int(self._members[c][0])

    def class_with_label(self, label):
        return self.labels.index(label)

    def refines(self, other):
        _check_space(self, other)
        pairs = np.unique(np.stack([self.class_of, other.class_of]), axis=1)
        return pairs.shape[1] == len(self)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.class_of, other.class_of)

    __hash__ = None

    def to_json(self, members=False, label_fn=None):
        label_fn = label_fn or _label_json
        classes = []
        for c, lab in enumerate(self.labels):
            entry = {"label": label_fn(lab), "size": self.sizes[c]}
            if members:
                entry["members"] = [int(x) for x in self._members[c]]
            classes.append(entry)
        sp = self.space
        return {"space": {"ring": sp.ring.name, "m": sp.m, "n": sp.n},
                "kind": self.kind, "side": self.side, "classes": classes}


def _label_json(label):
    if isinstance(label, Submodule):
        return label.to_json()
    if isinstance(label, frozenset):
        return sorted(label)
    if isinstance(label, tuple):
        return [_label_json(x) for x in label]
    if hasattr(label, "to_json"):
        return label.to_json()
    if isinstance(label, (np.integer,)):
        return int(label)
    return label


def _check_space(P, Q):
    if P.space != Q.space:
        raise ValueError(f"partitions live on different spaces: {P.space} vs {Q.space}")


def refines(P, Q):
    return P.refines(Q)


def partitions_equal(P, Q):
    _check_space(P, Q)
    return P == Q


def partition_by_support(space, side="left"):
    """Lambda_1 (or Psi_1 with side="right"): equal rank supports."""
    return Partition.from_keys(space, space.supports, "support", side)


def partition_by_iso(space, side="left"):
    """Lambda_2 / Psi_2: isomorphic rank supports."""
    return Partition.from_keys(space, [S.iso_profile for S in space.supports], "iso", side)


def partition_by_rank(space, side="left"):
    """Lambda_3 / Psi_3: equal rank weight."""
    return Partition.from_keys(space, [S.module_rank for S in space.supports], "rank", side)


def hamming_partitions(ring, n, guard=DEFAULT_GUARD, m=1):
    """Hamming support and weight partitions of B^n with B = R^m (an m x n space).

    A coordinate is in the support when its column is nonzero.
    """
    space = TupleSpace(ring, m, n, guard)
    nz = (space.entries != 0).reshape(space.size, n, m).any(axis=2)
    supp = [frozenset(np.flatnonzero(row).tolist()) for row in nz]
    by_support = Partition.from_keys(space, supp, "hamming_support")
    by_weight = Partition.from_keys(space, [len(x) for x in supp], "hamming_weight")
    return by_support, by_weight
