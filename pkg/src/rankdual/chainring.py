"""Finite commutative chain rings Z/p^s and F_q[u]/(u^s).

Elements are encoded as integer codes in [0, q^s).  For Z/p^s the code is the
residue itself.  For F_q[u]/(u^s) the code is sum_i c_i q^i where c_i is the
F_q coefficient of u^i, and an F_q element is itself sum_j a_j p^j over the
coefficients of x^j modulo the defining polynomial g.

Both families share the same shape on codes: multiplying by pi^e is
``code * q**e mod q**s``, the residues mod pi^e are the codes below q^e, and
the valuation is the largest e with q^e dividing the code.  Only addition and
multiplication differ; those go through precomputed tables.
"""

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cyclotomic import CycInt, cyc_root, prime_power


# ---------------------------------------------------------------------------
# Polynomials over F_p as coefficient lists, lowest degree first
# ---------------------------------------------------------------------------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    a = _poly_trim(a)
    b = _poly_trim(b)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _poly_trim(a)
    return a


def _monic_polys(p, deg):
    for low in itertools.product(range(p), repeat=deg):
        yield list(low) + [1]


def is_irreducible(g, p):
    """Trial division by every monic polynomial of degree 1..deg(g)//2."""
    g = _poly_trim([c % p for c in g])
    r = len(g) - 1
    if r < 1:
        return False
    for d in range(1, r // 2 + 1):
        for h in _monic_polys(p, d):
            if not _poly_mod(g, h, p):
                return False
    return True


def default_modulus(p, r):
    """Least monic irreducible of degree r, ordered by its integer code."""
    for code in range(p ** r):
        low = [(code // p ** j) % p for j in range(r)]
        g = low + [1]
        if is_irreducible(g, p):
            return tuple(g)
    raise ValueError(f"no irreducible polynomial of degree {r} over F_{p}")


def _field_tables(p, r, g):
    q = p ** r
    digits = [[(a // p ** j) % p for j in range(r)] for a in range(q)]
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    weights = [p ** j for j in range(r)]
    for a in range(q):
        for b in range(q):
            add[a, b] = sum(((x + y) % p) * w for x, y, w in zip(digits[a], digits[b], weights))
            prod = [0] * (2 * r - 1)
            for i, x in enumerate(digits[a]):
                for j, y in enumerate(digits[b]):
                    prod[i + j] += x * y
            rem = _poly_mod([c % p for c in prod], g, p) if r > 1 else [prod[0] % p]
            rem = rem + [0] * (r - len(rem))
            mul[a, b] = sum(c * w for c, w in zip(rem, weights))
    return add, mul


# ---------------------------------------------------------------------------
# Rings
# ---------------------------------------------------------------------------

class RingSpec:
    """A finite commutative chain ring with uniformizer pi.

    ``RingSpec.zmod(p, s)`` is Z/p^s with pi = p.  ``RingSpec.truncated(p, r, s)``
    is F_q[u]/(u^s), q = p^r, with pi = u; s = 1 gives the field F_q.
    """

    def __init__(self, kind, p, r, s, modulus=None):
        if kind not in ("zmod", "trunc"):
            raise ValueError(f"unknown ring family {kind!r}")
        if prime_power(p) != (p, 1):
            raise ValueError(f"{p} is not prime")
        if s < 1 or r < 1:
            raise ValueError("need r >= 1 and s >= 1")
        if kind == "zmod" and r != 1:
            raise ValueError("Z/p^s has residue degree 1")
        self.kind = kind
        self.p, self.r, self.s = p, r, s
        self.q = p ** r
        self.size = self.q ** s
        if kind == "trunc":
            if modulus is None:
                modulus = default_modulus(p, r)
            modulus = tuple(int(c) % p for c in modulus)
            if len(_poly_trim(modulus)) != r + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {r}")
            if not is_irreducible(modulus, p):
                raise ValueError(f"{modulus} is not irreducible over F_{p}")
        self.modulus = modulus
        # additive character order
        self.char_order = p ** s if kind == "zmod" else p
        self._build_tables()
        if not self._is_generating(self.chi_exp):
            raise AssertionError("character is not generating")
        if not self._is_generating(self.alt_chi_exp):
            raise AssertionError("alternate character is not generating")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zmod(cls, p, s):
        return cls("zmod", p, 1, s)

    @classmethod
    def truncated(cls, p, r, s, modulus=None):
        return cls("trunc", p, r, s, modulus)

    @classmethod
    def field(cls, q):
        p, r = prime_power(q)
        return cls("trunc", p, r, 1)

    @property
    def name(self):
        if self.kind == "zmod":
            return f"Z{self.size}"
        if self.s == 1:
            return f"F{self.q}"
        return f"F{self.q}u{self.s}"

    @property
    def is_field(self):
        return self.s == 1

    def __repr__(self):
        return f"RingSpec({self.name})"

    def __eq__(self, other):
        return (isinstance(other, RingSpec)
                and (self.kind, self.p, self.r, self.s, self.modulus)
                == (other.kind, other.p, other.r, other.s, other.modulus))

    def __hash__(self):
        return hash((self.kind, self.p, self.r, self.s, self.modulus))

    # -- tables ---------------------------------------------------------------

    def _build_tables(self):
        N, q, s = self.size, self.q, self.s
        codes = np.arange(N)
        if self.kind == "zmod":
            self.add_table = (codes[:, None] + codes[None, :]) % N
            self.mul_table = (codes[:, None] * codes[None, :]) % N
            self.neg_table = (-codes) % N
            self.chi_exp = codes.copy()
        else:
            fadd, fmul = _field_tables(self.p, self.r, self.modulus)
            digits = np.stack([(codes // q ** i) % q for i in range(s)], axis=1)
            weights = q ** np.arange(s)
            add = fadd[digits[:, None, :], digits[None, :, :]]
            self.add_table = (add * weights).sum(axis=2)
            mul = np.zeros((N, N, s), dtype=np.int64)
            for i in range(s):
                for j in range(s - i):
                    term = fmul[digits[:, None, i], digits[None, :, j]]
                    mul[:, :, i + j] = fadd[mul[:, :, i + j], term]
            self.mul_table = (mul * weights).sum(axis=2)
            fneg = np.array([int(np.where(fadd[a] == 0)[0][0]) for a in range(q)])
            self.neg_table = (fneg[digits] * weights).sum(axis=1)
            # absolute trace F_q -> F_p: a + a^p + ... + a^{p^{r-1}}
            trace = np.zeros(q, dtype=np.int64)
            for a in range(q):
                t, x = 0, a
                for _ in range(self.r):
                    t = fadd[t, x]
                    y = 1
                    for _ in range(self.p):
                        y = fmul[y, x]
                    x = y
                if t >= self.p:
                    raise AssertionError("trace left the prime field")
                trace[a] = t
            self.field_trace = trace
            self.chi_exp = trace[digits[:, s - 1]]
        units = [a for a in range(N) if a % self.q != 0]
        self.units = units
        inv = np.full(N, -1, dtype=np.int64)
        for a in units:
            inv[a] = int(np.where(self.mul_table[a] == 1)[0][0])
        self.inv_table = inv
        self.alt_unit = units[-1]
        self.alt_chi_exp = self.chi_exp[self.mul_table[self.alt_unit]]
        for t in (self.add_table, self.mul_table, self.neg_table, self.chi_exp,
                  self.alt_chi_exp, self.inv_table):
            t.setflags(write=False)
        # plain-list copies: scalar indexing into numpy is slow
        self._add = self.add_table.tolist()
        self._mul = self.mul_table.tolist()
        self._neg = self.neg_table.tolist()

    def _is_generating(self, chi):
        # some a in R pi^{s-1} has chi(a) != 1
        step = self.q ** (self.s - 1)
        return any(chi[a * step % self.size] % self.char_order != 0 for a in range(self.q))

    def character_table(self, alt=False):
        """Exponent table: chi(a) = zeta_n ** table[a]."""
        return self.alt_chi_exp if alt else self.chi_exp

    @cached_property
    def pair_table(self):
        """pair_table[alt][a, b] = exponent of chi(a*b)."""
        return {alt: self.character_table(alt)[self.mul_table] for alt in (False, True)}

    # -- arithmetic on codes ----------------------------------------------------

    def zero(self):
        return 0

    def one(self):
        return 1

    def pi(self):
        return self.q % self.size

    def enumerate(self):
        return list(range(self.size))

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        v = int(self.inv_table[a])
        if v < 0:
            raise ZeroDivisionError(f"{self.format(a)} is not a unit")
        return v

    def valuation(self, a):
        a = int(a)
        if a == 0:
            return self.s
        e = 0
        while a % self.q == 0:
            a //= self.q
            e += 1
        return e

    def is_unit(self, a):
        return a % self.q != 0

    def pi_power(self, e):
        return self.q ** e % self.size if e < self.s else 0

    def times_pi_power(self, a, e):
        """pi^e * a."""
        if e >= self.s:
            return 0
        return a * self.q ** e % self.size

    def divmod_pi(self, a, e):
        """Split a = c * pi^e + r with r a canonical residue mod pi^e."""
        m = self.q ** e
        return a // m, a % m

    def chi(self, a, alt=False):
        return cyc_root(self.char_order, int(self.character_table(alt)[a]))

    def coefficients(self, a):
        """Canonical residue encoding: int for Z/p^s, else nested F_p digits."""
        if self.kind == "zmod":
            return int(a)
        q, p = self.q, self.p
        return [[(a // q ** i) // p ** j % p for j in range(self.r)] for i in range(self.s)]

    def from_coefficients(self, c):
        if self.kind == "zmod":
            return int(c) % self.size
        q, p = self.q, self.p
        return sum(sum(int(d) % p * p ** j for j, d in enumerate(ci)) * q ** i
                   for i, ci in enumerate(c))

    def format(self, a):
        if self.kind == "zmod":
            return str(int(a))
        terms = []
        for i, ci in enumerate(self.coefficients(a)):
            fq = "+".join(
                (f"{d}" if j == 0 else (f"{d}x^{j}" if d != 1 else f"x^{j}")).replace("x^1", "x")
                for j, d in enumerate(ci) if d)
            if not fq:
                continue
            if self.r > 1 and i > 0 and "+" in fq:
                fq = f"({fq})"
            u = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
            terms.append(fq if not u else (u if fq == "1" else f"{fq}{u}"))
        return "+".join(terms) or "0"

    def __call__(self, value):
        return RingElem(self, int(value) % self.size if self.kind == "zmod" else int(value))

    def to_json(self):
        d = {"name": self.name, "kind": self.kind, "p": self.p, "r": self.r, "s": self.s}
        if self.modulus is not None:
            d["modulus"] = list(self.modulus)
        return d


@dataclass(frozen=True)
class RingElem:
    """A ring element bound to its ring; arithmetic refuses mixed rings."""

    ring: RingSpec
    code: int

    def __post_init__(self):
        if not 0 <= self.code < self.ring.size:
            raise ValueError(f"code {self.code} out of range for {self.ring.name}")

    def _other(self, other):
        if isinstance(other, int):
            return self.ring(other).code
        if not isinstance(other, RingElem):
            raise TypeError(f"cannot combine RingElem with {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError(f"mixed rings {self.ring.name} and {other.ring.name}")
        return other.code

    def __add__(self, other):
        return RingElem(self.ring, self.ring.add(self.code, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElem(self.ring, self.ring.sub(self.code, self._other(other)))

    def __mul__(self, other):
        return RingElem(self.ring, self.ring.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ring, self.ring.neg(self.code))

    def __pow__(self, k):
        out = RingElem(self.ring, 1)
        for _ in range(k):
            out = out * self
        return out

    def valuation(self):
        return self.ring.valuation(self.code)

    def chi(self, alt=False) -> CycInt:
        return self.ring.chi(self.code, alt)

    def __repr__(self):
        return f"{self.ring.name}({self.ring.format(self.code)})"


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def neg(a):
    return -a


def valuation(a):
    return a.valuation()


def generating_character(a, alt=False):
    return a.chi(alt)


# ---------------------------------------------------------------------------
# Parsing ring names
# ---------------------------------------------------------------------------

_cache = {}


def parse_ring(text):
    """Parse "Z4", "F4", "F2u2", "Z:p=3,s=2", "F:p=2,r=2,s=1" and friends."""
    t = text.strip()
    if t in _cache:
        return _cache[t]
    try:
        m = re.fullmatch(r"([ZF]):(.*)", t)
        if m:
            params = dict(kv.split("=") for kv in m.group(2).split(","))
            params = {k.strip(): int(v) for k, v in params.items()}
            if m.group(1) == "Z":
                ring = RingSpec.zmod(params["p"], params["s"])
            else:
                ring = RingSpec.truncated(params["p"], params.get("r", 1), params.get("s", 1))
        elif re.fullmatch(r"Z\d+", t):
            p, s = prime_power(int(t[1:]))
            ring = RingSpec.zmod(p, s)
        elif m := re.fullmatch(r"F(\d+)(?:u(\d+))?", t):
            p, r = prime_power(int(m.group(1)))
            ring = RingSpec.truncated(p, r, int(m.group(2) or 1))
        else:
            raise ValueError(f"unrecognized ring {text!r}")
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad ring spec {text!r}: {exc}") from exc
    _cache[t] = ring
    return ring
