"""Dense matrices over GF(p).

:class:`Mat` is a value type: the backing numpy array is read-only and every
operation returns a fresh matrix.  Entries are canonical residues stored as
int64 so that products of two residues (< 2**32) can be summed over a row of
up to 2**31 terms without overflow.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, Singular
from .gf import FieldCtx, get_field


class Mat:
    __slots__ = ("data", "ctx")

    def __init__(self, data, ctx: FieldCtx | int):
        if isinstance(ctx, int):
            ctx = get_field(ctx)
        arr = np.array(data, dtype=np.int64, copy=True, order="C")
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        if arr.ndim != 2:
            raise DimensionMismatch(f"matrix data must be 2-D, got shape {arr.shape}")
        arr %= ctx.p
        arr.flags.writeable = False
        self.data = arr
        self.ctx = ctx

    @classmethod
    def _wrap(cls, arr: np.ndarray, ctx: FieldCtx) -> "Mat":
        # arr must already be canonical and owned by the caller
        m = object.__new__(cls)
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        m.data = arr
        m.ctx = ctx
        return m

    @classmethod
    def identity(cls, n: int, ctx: FieldCtx | int) -> "Mat":
        return cls(np.eye(n, dtype=np.int64), ctx)

    @classmethod
    def zeros(cls, rows: int, cols: int, ctx: FieldCtx | int) -> "Mat":
        return cls(np.zeros((rows, cols), dtype=np.int64), ctx)

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "Mat":
        return transpose(self)

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __getitem__(self, key):
        out = self.data[key]
        if isinstance(out, np.ndarray) and out.ndim == 2:
            return Mat._wrap(out.copy(), self.ctx)
        if isinstance(out, np.ndarray):
            return out.copy()
        return int(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.ctx == other.ctx and self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.p, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in row) for row in self.data)
        return f"Mat(p={self.p}, {self.rows}x{self.cols}: [{body}])"

    def _check_same(self, other: "Mat") -> None:
        if self.ctx != other.ctx:
            raise DimensionMismatch(f"field mismatch: GF({self.p}) vs GF({other.p})")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Mat._wrap((self.data + other.data) % self.p, self.ctx)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Mat._wrap((self.data - other.data) % self.p, self.ctx)

    def __neg__(self) -> "Mat":
        return Mat._wrap((-self.data) % self.p, self.ctx)

    def __matmul__(self, other: "Mat") -> "Mat":
        return mat_mul(self, other)

    def scale(self, c: int) -> "Mat":
        return Mat._wrap((self.data * (int(c) % self.p)) % self.p, self.ctx)

    def __rmul__(self, c: int) -> "Mat":
        return self.scale(c)

    def is_square(self) -> bool:
        return self.rows == self.cols


def mat_mul(a: Mat, b: Mat) -> Mat:
    a._check_same(b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return Mat._wrap((a.data @ b.data) % a.p, a.ctx)


def transpose(a: Mat) -> Mat:
    return Mat._wrap(a.data.T.copy(), a.ctx)


def hstack(blocks: Sequence[Mat]) -> Mat:
    ctx = blocks[0].ctx
    return Mat._wrap(np.hstack([b.data for b in blocks]), ctx)


def vstack(blocks: Sequence[Mat]) -> Mat:
    ctx = blocks[0].ctx
    return Mat._wrap(np.vstack([b.data for b in blocks]), ctx)


def block(rows: Sequence[Sequence[Mat]]) -> Mat:
    """Assemble a block matrix from a nested list of blocks."""
    return vstack([hstack(list(r)) for r in rows])


def rref_array(arr: np.ndarray, p: int, order: Iterable[int] | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an integer array over GF(p).

    Pivot columns are taken in ``order`` (default left to right), choosing the
    first row with a nonzero entry.  Returns the reduced array (zero rows at
    the bottom) and the pivot columns, where row ``i`` has its leading 1 in
    ``pivots[i]``.
    """
    g = np.array(arr, dtype=np.int64) % p
    rows, cols = g.shape
    if order is None:
        order = range(cols)
    pivots: list[int] = []
    r = 0
    for c in order:
        if r == rows:
            break
        nz = np.flatnonzero(g[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            g[[r, piv]] = g[[piv, r]]
        g[r] = (g[r] * pow(int(g[r, c]), p - 2, p)) % p
        col = g[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            g[hit] = (g[hit] - np.outer(col[hit], g[r])) % p
        pivots.append(c)
        r += 1
    return g, pivots


def rref(a: Mat) -> tuple[Mat, list[int]]:
    g, pivots = rref_array(a.data, a.p)
    return Mat._wrap(g, a.ctx), pivots


def rank(a: Mat) -> int:
    return len(rref(a)[1])


def inverse(a: Mat) -> Mat:
    if not a.is_square():
        raise DimensionMismatch(f"inverse needs a square matrix, got {a.shape}")
    n = a.rows
    aug = np.hstack([a.data, np.eye(n, dtype=np.int64)])
    g, pivots = rref_array(aug, a.p, order=range(n))
    if len(pivots) < n:
        raise Singular(f"matrix of rank {len(pivots)} < {n} is singular")
    return Mat._wrap(g[:, n:].copy(), a.ctx)


def det2(a: Mat) -> int:
    """Determinant of a 2x2 matrix."""
    if a.shape != (2, 2):
        raise DimensionMismatch(f"det2 needs a 2x2 matrix, got {a.shape}")
    d = a.data
    return int((d[0, 0] * d[1, 1] - d[0, 1] * d[1, 0]) % a.p)


def is_symmetric(a: Mat) -> bool:
    return a.is_square() and bool(np.array_equal(a.data, a.data.T))


def is_antiorthogonal(a: Mat) -> bool:
    """True iff ``a @ a.T == -I``."""
    if not a.is_square():
        return False
    prod = (a.data @ a.data.T) % a.p
    target = (-np.eye(a.rows, dtype=np.int64)) % a.p
    return bool(np.array_equal(prod, target))


def is_circulant(a: Mat) -> bool:
    if not a.is_square():
        return False
    first = a.data[0]
    return all(np.array_equal(a.data[i], np.roll(first, i)) for i in range(1, a.rows))


def circulant(first_row: Sequence[int], ctx: FieldCtx | int) -> Mat:
    """Circulant matrix whose row ``i`` is ``first_row`` shifted right by ``i``."""
    first = np.asarray(first_row, dtype=np.int64)
    return Mat(np.array([np.roll(first, i) for i in range(first.size)]), ctx)
