"""Linear codes over GF(p), duality predicates and equivalence transforms."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DimensionMismatch, NotCirculant
from .gf import FieldCtx
from .matrix import Mat, hstack, is_antiorthogonal, is_circulant, is_symmetric


class LinearCode:
    """A k x n generator matrix of full row rank, with cached systematic forms.

    Systematic forms are keyed by the column order in which pivots were
    sought; the cache makes repeated distance work on the same code cheap.
    Instances are treated as immutable.
    """

    def __init__(self, gen: Mat | Sequence[Sequence[int]] | np.ndarray, p: int | FieldCtx | None = None,
                 *, name: str | None = None):
        if not isinstance(gen, Mat):
            if p is None:
                raise ValueError("field modulus required when gen is not a Mat")
            gen = Mat(gen, p)
        self.gen = gen
        self.name = name
        self._systematic: dict[tuple[int, ...], tuple[np.ndarray, tuple[int, ...]]] = {}
        if gen.rows == 0 or gen.rows > gen.cols:
            raise DimensionMismatch(f"generator must satisfy 0 < k <= n, got shape {gen.shape}")
        _, pivots = self.systematic()
        if len(pivots) != gen.rows:
            raise DimensionMismatch(f"generator has rank {len(pivots)} < {gen.rows} rows")

    @property
    def ctx(self) -> FieldCtx:
        return self.gen.ctx

    @property
    def p(self) -> int:
        return self.gen.p

    @property
    def n(self) -> int:
        return self.gen.cols

    @property
    def k(self) -> int:
        return self.gen.rows

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<LinearCode{label} [{self.n},{self.k}] over GF({self.p})>"

    def __eq__(self, other) -> bool:
        """Same generator matrix (use :meth:`same_code` for subspace equality)."""
        return isinstance(other, LinearCode) and self.gen == other.gen

    def __hash__(self) -> int:
        return hash(self.gen)

    def systematic(self, order: Sequence[int] | None = None) -> tuple[np.ndarray, tuple[int, ...]]:
        """Row-reduced generator with pivots sought in ``order``.

        Returns a read-only array and the pivot columns (row ``i`` is the unit
        vector on ``pivots[i]``).
        """
        key = tuple(range(self.n)) if order is None else tuple(int(c) for c in order)
        hit = self._systematic.get(key)
        if hit is not None:
            return hit
        g = np.array(self.gen.data, dtype=np.int64, copy=True, order="C")
        piv = np.zeros(self.gen.rows, dtype=np.int64)
        r = kernels.rref_inplace(g, np.asarray(key, dtype=np.int64), self.p, self.ctx.inv_table, piv)
        g.flags.writeable = False
        out = (g, tuple(int(c) for c in piv[:r]))
        self._systematic[key] = out
        return out

    def encode(self, msg: Sequence[int]) -> np.ndarray:
        m = np.asarray(msg, dtype=np.int64)
        return (m @ self.gen.data) % self.p

    def contains(self, word: Sequence[int]) -> bool:
        g, pivots = self.systematic()
        w = np.asarray(word, dtype=np.int64) % self.p
        if w.shape != (self.n,):
            return False
        msg = w[list(pivots)]
        return bool(np.array_equal((msg @ g) % self.p, w))

    def same_code(self, other: "LinearCode") -> bool:
        return (self.p == other.p and self.n == other.n and self.k == other.k
                and bool(np.array_equal(self.systematic()[0], other.systematic()[0])))

    def left_block(self) -> Mat:
        return self.gen[:, : self.k]

    def right_block(self) -> Mat:
        return self.gen[:, self.k:]

    def is_standard(self) -> bool:
        """Generator is literally ``(I_k | A)``."""
        return bool(np.array_equal(self.gen.data[:, : self.k], np.eye(self.k, dtype=np.int64)))


def from_right_half(A: Mat, name: str | None = None) -> LinearCode:
    """The code generated by ``(I | A)``."""
    return LinearCode(hstack([Mat.identity(A.rows, A.ctx), A]), name=name)


def is_self_dual(c: LinearCode) -> bool:
    if c.n != 2 * c.k:
        return False
    g = c.gen.data
    return not np.any((g @ g.T) % c.p)


def is_symmetric_self_dual(c: LinearCode) -> bool:
    """Standard-form generator ``(I | A)`` with ``A`` symmetric and self-dual."""
    return c.is_standard() and is_self_dual(c) and is_symmetric(c.right_block())


def singleton_bound(c: LinearCode) -> int:
    return c.n - c.k + 1


def standard_form(c: LinearCode) -> tuple[LinearCode, list[int]]:
    """Equivalent code with generator ``(I_k | A)``.

    The returned permutation lists, for each new column, the original column
    placed there: pivot columns first, then the rest in increasing order.
    """
    g, pivots = c.systematic()
    rest = [j for j in range(c.n) if j not in set(pivots)]
    perm = list(pivots) + rest
    out = LinearCode(Mat(g[:, perm], c.ctx), name=c.name)
    return out, perm


@dataclass(frozen=True)
class MonomialTransform:
    """Column permutation followed by a +-1 column scaling.

    Applied to a word ``c`` it yields ``c'`` with ``c'[j] = gamma[j] * c[sigma[j]]``.
    """

    sigma: tuple[int, ...]
    gamma: tuple[int, ...]
    p: int

    def __post_init__(self):
        n = len(self.sigma)
        if sorted(self.sigma) != list(range(n)):
            raise ValueError("sigma is not a permutation")
        if len(self.gamma) != n:
            raise DimensionMismatch("sigma and gamma lengths differ")
        if any(g not in (1, self.p - 1) for g in self.gamma):
            raise ValueError("gamma entries must square to 1")

    @classmethod
    def identity(cls, n: int, p: int) -> "MonomialTransform":
        return cls(tuple(range(n)), (1,) * n, p)

    @classmethod
    def random(cls, n: int, p: int, rng: np.random.Generator) -> "MonomialTransform":
        sigma = tuple(int(v) for v in rng.permutation(n))
        gamma = tuple(int(v) for v in rng.choice([1, p - 1], size=n))
        return cls(sigma, gamma, p)

    def apply_word(self, word: Sequence[int]) -> np.ndarray:
        w = np.asarray(word, dtype=np.int64)
        return (w[..., list(self.sigma)] * np.asarray(self.gamma, dtype=np.int64)) % self.p

    def matrix(self) -> Mat:
        """The n x n monomial matrix ``T`` with ``c' = c T``."""
        n = len(self.sigma)
        t = np.zeros((n, n), dtype=np.int64)
        for j, (s, g) in enumerate(zip(self.sigma, self.gamma)):
            t[s, j] = g
        return Mat(t, self.p)


def apply_monomial(c: LinearCode, t: MonomialTransform) -> LinearCode:
    if len(t.sigma) != c.n:
        raise DimensionMismatch(f"transform length {len(t.sigma)} != code length {c.n}")
    if t.p != c.p:
        raise DimensionMismatch("transform and code live over different fields")
    return LinearCode(Mat(t.apply_word(c.gen.data), c.ctx), name=c.name)


def symmetrize_double_circulant(gen: Mat, bordered: bool = False,
                                border: tuple[int, int, int] | None = None) -> Mat:
    """Monomially equivalent generator ``(I | A')`` with ``A'`` symmetric.

    Pure double circulant: reversing the columns of a circulant gives a
    symmetric matrix.  Bordered: the right half is ``[[alpha, beta..beta],
    [gamma*beta, Q]]`` with ``Q`` circulant and ``gamma**2 == 1``; the core is
    column-reversed and, if ``gamma == -1``, the border column is negated.
    """
    k = gen.rows
    if gen.cols != 2 * k or not np.array_equal(gen.data[:, :k], np.eye(k, dtype=np.int64)):
        raise NotCirculant("generator must have the form (I | A)")
    p = gen.p
    A = gen.data[:, k:].copy()
    if not bordered:
        if not is_circulant(Mat(A, gen.ctx)):
            raise NotCirculant("right half is not circulant")
        return Mat(np.hstack([np.eye(k, dtype=np.int64), A[:, ::-1]]), gen.ctx)
    if k < 2:
        raise NotCirculant("bordered form needs at least a 2x2 right half")
    alpha, beta = int(A[0, 0]), int(A[0, 1])
    if not np.all(A[0, 1:] == beta):
        raise NotCirculant("border row is not constant")
    col = A[1:, 0]
    if not np.all(col == col[0]):
        raise NotCirculant("border column is not constant")
    if beta == 0:
        if col[0] != 0:
            raise NotCirculant("border column must vanish when beta is 0")
        gamma = 1
    elif col[0] == beta:
        gamma = 1
    elif col[0] == (-beta) % p:
        gamma = p - 1
    else:
        raise NotCirculant("border column is not +-beta")
    if border is not None:
        a0, b0, g0 = (int(v) % p for v in border)
        if (a0, b0) != (alpha, beta) or (beta != 0 and g0 != gamma):
            raise NotCirculant(f"border {border} does not match the matrix")
    core = A[1:, 1:]
    if not is_circulant(Mat(core, gen.ctx)):
        raise NotCirculant("core is not circulant")
    out = A.copy()
    out[1:, 1:] = core[:, ::-1]
    if gamma != 1:
        out[:, 0] = (-out[:, 0]) % p
    return Mat(np.hstack([np.eye(k, dtype=np.int64), out]), gen.ctx)


def check_standard_symmetric(c: LinearCode) -> dict[str, bool]:
    """Structural predicates used by ``verify`` and the construction guards."""
    std = c.is_standard()
    A = c.right_block() if std else standard_form(c)[0].right_block()
    return {
        "self_dual": is_self_dual(c),
        "standard_form": std,
        "symmetric": c.n == 2 * c.k and is_symmetric(A),
        "antiorthogonal": c.n == 2 * c.k and is_antiorthogonal(A),
    }
