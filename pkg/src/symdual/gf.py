"""Arithmetic in GF(p) for odd primes 3 <= p < 2**16.

Field elements are plain Python ints (or numpy integer arrays) holding the
canonical residue in ``0..p-1``.  A :class:`FieldCtx` carries the modulus and
lookup tables for inversion and the quadratic character.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ZeroInverse

MAX_MODULUS = 1 << 16
# below this size square roots are found by table lookup
_SQRT_TABLE_LIMIT = 1 << 10


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FieldCtx:
    """Prime field context.

    Immutable after construction; share freely between workers.
    """

    __slots__ = ("p", "inv_table", "qc_table", "_roots")

    def __init__(self, p: int):
        p = int(p)
        if p < 3 or p >= MAX_MODULUS or not is_prime(p):
            raise ValueError(f"modulus must be an odd prime below 2**16, got {p}")
        self.p = p
        inv = np.zeros(p, dtype=np.int64)
        for a in range(1, p):
            inv[a] = pow(a, p - 2, p)
        qc = np.full(p, -1, dtype=np.int64)
        qc[0] = 0
        squares = (np.arange(1, p, dtype=np.int64) ** 2) % p
        qc[squares] = 1
        inv.flags.writeable = False
        qc.flags.writeable = False
        self.inv_table = inv
        self.qc_table = qc
        self._roots = None
        if p < _SQRT_TABLE_LIMIT:
            roots = {}
            for r in range(p):
                roots.setdefault(r * r % p, r)
            self._roots = roots

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("FieldCtx", self.p))

    def __reduce__(self):
        return (get_field, (self.p,))

    def canon(self, a):
        """Reduce an int or integer array to canonical residues."""
        if isinstance(a, np.ndarray):
            return np.mod(a, self.p).astype(np.int64, copy=False)
        return int(a) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in GF({self.p})")
        return int(self.inv_table[a])

    def legendre(self, a: int) -> int:
        return int(self.qc_table[int(a) % self.p])

    def is_square(self, a: int) -> bool:
        return self.legendre(a) >= 0

    def sqrt(self, a: int) -> tuple[int, ...]:
        """Both square roots of ``a``, smaller first; ``()`` for non-residues."""
        p = self.p
        a = int(a) % p
        if a == 0:
            return (0,)
        if self.qc_table[a] < 0:
            return ()
        if self._roots is not None:
            r = self._roots[a]
        else:
            r = _tonelli_shanks(a, p)
        return tuple(sorted((r, p - r)))

    def squares(self) -> list[int]:
        """Nonzero quadratic residues in increasing order."""
        return [a for a in range(1, self.p) if self.qc_table[a] == 1]


def _tonelli_shanks(a: int, p: int) -> int:
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@lru_cache(maxsize=None)
def get_field(p: int) -> FieldCtx:
    """Shared context for modulus ``p``."""
    return FieldCtx(p)


def inv(a: int, ctx: FieldCtx) -> int:
    return ctx.inv(a)


def legendre(a: int, ctx: FieldCtx) -> int:
    return ctx.legendre(a)


def sqrt(a: int, ctx: FieldCtx) -> tuple[int, ...]:
    return ctx.sqrt(a)


def dot(x, y, ctx: FieldCtx) -> int:
    """Standard inner product of two vectors over GF(p)."""
    return int(np.dot(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)) % ctx.p)
