"""Exact integers of the cyclotomic field Q(zeta_n) for prime powers n = p^s.

Values are integer coefficient vectors in the powers of zeta_n, kept in the
canonical form obtained by dividing by the cyclotomic polynomial

    Phi_{p^s}(x) = 1 + x^d + x^{2d} + ... + x^{(p-1)d},   d = p^{s-1},

so two values are equal exactly when their coefficient vectors are equal.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy.ntheory import factorint


@lru_cache(maxsize=None)
def prime_power(n):
    """Return (p, s) with n = p**s, or raise ValueError."""
    if n < 2:
        raise ValueError(f"{n} is not a prime power")
    f = factorint(n)
    if len(f) != 1:
        raise ValueError(f"{n} is not a prime power")
    (p, s), = f.items()
    return p, s


def _degree(n):
    p, _ = prime_power(n)
    return n - n // p


def reduce_counts(counts, n):
    """Canonicalize coefficient arrays along the last axis (length n), in place.

    Works on any integer numpy array; every top coefficient x^k with
    k >= n - n/p is rewritten as -(x^{k-d} + ... + x^{k-(p-1)d}), whose
    exponents all land below the threshold, so one pass suffices.
    """
    p, _ = prime_power(n)
    d = n // p
    deg = n - d
    for k in range(deg, n):
        top = counts[..., k].copy()
        for j in range(1, p):
            counts[..., k - j * d] -= top
        counts[..., k] = 0
    return counts


def _canonical(coeffs, n):
    c = list(coeffs)
    if len(c) != n:
        raise ValueError(f"expected {n} coefficients, got {len(c)}")
    p, _ = prime_power(n)
    d = n // p
    for k in range(n - d, n):
        t = c[k]
        if t:
            for j in range(1, p):
                c[k - j * d] -= t
            c[k] = 0
    return tuple(int(x) for x in c)


@dataclass(frozen=True)
class CycInt:
    order: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _canonical(self.coeffs, self.order))

    @classmethod
    def from_int(cls, n, value):
        return cls(n, (value,) + (0,) * (n - 1))

    @classmethod
    def from_counts(cls, n, counts):
        """Sum of counts[k] * zeta^k."""
        return cls(n, tuple(int(x) for x in counts))

    def _check(self, other):
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.order != self.order:
            raise ValueError(f"mixed orders {self.order} and {other.order}")
        return other

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(self.order, other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        return CycInt(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        n = self.order
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % n] += a * b
        return CycInt(n, out)

    __rmul__ = __mul__

    def scale(self, k):
        return CycInt(self.order, tuple(k * a for a in self.coeffs))

    def conj(self):
        n = self.order
        out = [0] * n
        for k, a in enumerate(self.coeffs):
            out[(-k) % n] += a
        return CycInt(n, out)

    def as_integer(self):
        """The value as a Python int, or None when it is not rational."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_zero(self):
        return not any(self.coeffs)

    def to_json(self):
        return {"order": self.order, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["order"]), tuple(obj["coeffs"]))

    def __repr__(self):
        v = self.as_integer()
        if v is not None:
            return f"CycInt({v})"
        terms = [f"{a}*z{self.order}^{k}" for k, a in enumerate(self.coeffs) if a]
        return "CycInt(" + " + ".join(terms) + ")"


def cyc_root(n, k):
    """zeta_n ** k in canonical form."""
    prime_power(n)
    c = [0] * n
    c[k % n] = 1
    return CycInt(n, c)


def cyc_sum(terms):
    terms = list(terms)
    if not terms:
        raise ValueError("cyc_sum needs at least one term to fix the order")
    n = terms[0].order
    acc = [0] * n
    for t in terms:
        if t.order != n:
            raise ValueError(f"mixed orders {n} and {t.order}")
        for k, a in enumerate(t.coeffs):
            acc[k] += a
    return CycInt(n, acc)


def cyc_neg(x):
    return -x


def cyc_scale(x, k):
    return x.scale(k)


def cyc_mul(x, y):
    return x * y


def cyc_conj(x):
    return x.conj()


def cyc_as_integer(x):
    return x.as_integer()


def canonical_degree(n):
    """Number of coefficients that can be nonzero in canonical form."""
    return _degree(n)


def counts_to_cycints(rows, n):
    """Turn an (..., n) integer count array into CycInt values (reduced first)."""
    arr = reduce_counts(np.array(rows, dtype=np.int64, copy=True), n)
    flat = arr.reshape(-1, n)
    out = [CycInt(n, tuple(int(x) for x in r)) for r in flat]
    return out
