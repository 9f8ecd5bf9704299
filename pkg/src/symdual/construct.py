"""Length-plus-four building-up constructions for symmetric self-dual codes.

Both constructions take a base code with generator ``(I_n | A)``, ``A``
symmetric and ``A A^T = -I``, and border ``A`` by two rows and columns.

* Construction A uses a codeword ``(x | y)`` with ``x.y = 0``,
  ``x.x = k != 0`` and ``-1 +- k`` squares, a pair ``alpha^2 + beta^2 = -1``
  and roots ``s^2 = -1 + k``, ``t^2 = -1 - k``.
* Construction B uses a vector ``x``, a symmetric ``P`` with ``P^2 = -I``
  and a symmetric ``H`` with ``(H + P)(H - P) = -M M^T``, ``H - P``
  invertible, where ``M`` stacks ``x`` over ``beta^-1 x (A - alpha I)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .code import LinearCode, from_right_half
from .errors import BetaZero, IneligibleParams
from .gf import FieldCtx, dot
from .matrix import Mat, block, det2, inverse, is_antiorthogonal, is_symmetric, vstack
from .solutionsets import PMatrix, SPair, enum_S_minus1, enum_S_minusI2


@dataclass(frozen=True)
class CodewordPair:
    """A codeword ``(x | y)`` of a length-2n code, with ``k = x.x``."""

    x: tuple[int, ...]
    y: tuple[int, ...]
    k: int

    @classmethod
    def split(cls, word: Sequence[int], p: int) -> "CodewordPair":
        w = [int(v) % p for v in word]
        if len(w) % 2:
            raise ValueError("codeword length must be even")
        h = len(w) // 2
        x, y = tuple(w[:h]), tuple(w[h:])
        return cls(x, y, sum(a * a for a in x) % p)

    def word(self) -> tuple[int, ...]:
        return self.x + self.y


@dataclass(frozen=True)
class ConstructionAParams:
    pair: CodewordPair
    alpha_beta: SPair
    s: int
    t: int


@dataclass(frozen=True)
class ConstructionBParams:
    x: tuple[int, ...]
    P: PMatrix
    H: Mat


@dataclass(frozen=True)
class ABlocks:
    B: Mat
    E: Mat
    D: Mat
    A: Mat
    A1: Mat

    @property
    def AE(self) -> Mat:
        return self.A + self.E


@dataclass(frozen=True)
class BBlocks:
    M: Mat
    H: Mat
    P: Mat
    A: Mat
    lower_right: Mat
    A2: Mat


def _base_half(c: LinearCode) -> Mat:
    if not c.is_standard() or c.n != 2 * c.k:
        raise IneligibleParams("base generator must have the form (I_n | A)")
    A = c.right_block()
    if not is_symmetric(A):
        raise IneligibleParams("base right half is not symmetric")
    if not is_antiorthogonal(A):
        raise IneligibleParams("base right half does not satisfy A A^T = -I")
    return A


def pair_is_eligible(pair: CodewordPair, ctx: FieldCtx) -> bool:
    """``x.y = 0``, ``k = x.x != 0`` and both ``-1 + k`` and ``-1 - k`` squares."""
    k = pair.k
    return (
        k != 0
        and dot(pair.x, pair.x, ctx) == k
        and dot(pair.x, pair.y, ctx) == 0
        and ctx.legendre(k - 1) >= 0
        and ctx.legendre(-1 - k) >= 0
    )


def eligible_codewords(c: LinearCode, samples: int, seed: int | None = 0) -> list[CodewordPair]:
    """Eligible pairs among ``samples`` random codewords, first occurrence order."""
    if samples <= 0:
        return []
    rng = np.random.default_rng(seed)
    msgs = rng.integers(0, c.p, size=(samples, c.k), dtype=np.int64)
    words = (msgs @ c.gen.data) % c.p
    seen: set[tuple[int, ...]] = set()
    out = []
    for w in words:
        pair = CodewordPair.split(w, c.p)
        key = pair.word()
        if key in seen:
            continue
        seen.add(key)
        if pair_is_eligible(pair, c.ctx):
            out.append(pair)
    return out


def construct_A_blocks(c: LinearCode, params: ConstructionAParams) -> ABlocks:
    A = _base_half(c)
    ctx = c.ctx
    p = ctx.p
    n = c.k
    pair = params.pair
    if len(pair.x) != n or len(pair.y) != n:
        raise IneligibleParams(f"codeword halves must have length {n}")
    x = Mat([pair.x], ctx)
    y = Mat([pair.y], ctx)
    if x @ A != y:
        raise IneligibleParams("(x | y) is not a codeword of the base code")
    k = dot(pair.x, pair.x, ctx)
    if k != pair.k % p:
        raise IneligibleParams("stored k does not equal x.x")
    if not pair_is_eligible(pair, ctx):
        raise IneligibleParams("pair violates x.y = 0, x.x != 0 or the square conditions")
    alpha, beta = params.alpha_beta.alpha % p, params.alpha_beta.beta % p
    if (alpha * alpha + beta * beta + 1) % p:
        raise IneligibleParams("alpha^2 + beta^2 != -1")
    s, t = params.s % p, params.t % p
    if (s * s - (k - 1)) % p or (t * t - (-1 - k)) % p:
        raise IneligibleParams("s^2 != -1 + k or t^2 != -1 - k")

    kinv = ctx.inv(k)
    B = vstack([x.scale(alpha) + y.scale(beta), x.scale(beta) - y.scale(alpha)])
    E = (x.T @ x).scale(s) + (y.T @ y).scale(t) - x.T @ y - y.T @ x
    E = E.scale(kinv)
    AE = A + E
    D = -(B @ AE @ B.T @ B @ B.T).scale(kinv * kinv % p)
    A1 = block([[D, B], [B.T, AE]])
    return ABlocks(B=B, E=E, D=D, A=A, A1=A1)


def construct_A(c: LinearCode, params: ConstructionAParams) -> LinearCode:
    return from_right_half(construct_A_blocks(c, params).A1)


def build_M(x: Sequence[int], A: Mat, P: PMatrix) -> Mat:
    """Stack ``x`` over ``beta^-1 x (A - alpha I)``; satisfies ``M A = P M``."""
    ctx = A.ctx
    if P.beta % ctx.p == 0:
        raise BetaZero("P has beta = 0, which has no inverse")
    xv = Mat([list(x)], ctx)
    if xv.cols != A.rows:
        raise IneligibleParams(f"x must have length {A.rows}")
    second = (xv @ (A - Mat.identity(A.rows, ctx).scale(P.alpha))).scale(ctx.inv(P.beta))
    return vstack([xv, second])


def solve_H(M: Mat, P: PMatrix) -> list[Mat]:
    """All symmetric 2x2 ``H`` with ``(H+P)(H-P) = -M M^T`` and ``H - P`` invertible.

    Exhaustive over the ``p^3`` symmetric candidates, lexicographic in
    ``(H[0,0], H[0,1], H[1,1])``.
    """
    p = M.p
    target = (-(M @ M.T)).data
    a, b, c = np.meshgrid(*(np.arange(p, dtype=np.int64),) * 3, indexing="ij")
    a, b, c = a.ravel(), b.ravel(), c.ravel()
    al, be = P.alpha % p, P.beta % p
    u00, u01, u11 = a + al, b + be, c - al  # H + P
    v00, v01, v11 = a - al, b - be, c + al  # H - P
    e00 = (u00 * v00 + u01 * v01) % p
    e01 = (u00 * v01 + u01 * v11) % p
    e10 = (u01 * v00 + u11 * v01) % p
    e11 = (u01 * v01 + u11 * v11) % p
    det = (v00 * v11 - v01 * v01) % p
    ok = ((e00 == target[0, 0]) & (e01 == target[0, 1]) & (e10 == target[1, 0])
          & (e11 == target[1, 1]) & (det != 0))
    idx = np.flatnonzero(ok)
    return [Mat([[a[i], b[i]], [b[i], c[i]]], M.ctx) for i in idx]


def construct_B_blocks(c: LinearCode, params: ConstructionBParams) -> BBlocks:
    A = _base_half(c)
    ctx = c.ctx
    p = ctx.p
    Pm = params.P.mat()
    if Pm.ctx != ctx:
        raise IneligibleParams("P lives over a different field")
    if (Pm @ Pm) != Mat.identity(2, ctx).scale(p - 1):
        raise IneligibleParams("P^2 != -I")
    H = params.H
    if H.shape != (2, 2) or H.ctx != ctx or not is_symmetric(H):
        raise IneligibleParams("H must be a symmetric 2x2 matrix over the base field")
    M = build_M(params.x, A, params.P)
    if (H + Pm) @ (H - Pm) != -(M @ M.T):
        raise IneligibleParams("(H + P)(H - P) != -M M^T")
    if det2(H - Pm) == 0:
        raise IneligibleParams("H - P is singular")
    lower_right = A + M.T @ inverse(H - Pm) @ M
    A2 = block([[H, M], [M.T, lower_right]])
    return BBlocks(M=M, H=H, P=Pm, A=A, lower_right=lower_right, A2=A2)


def construct_B(c: LinearCode, params: ConstructionBParams) -> LinearCode:
    return from_right_half(construct_B_blocks(c, params).A2)


def random_params_A(c: LinearCode, rng: np.random.Generator, samples: int = 64) -> ConstructionAParams | None:
    """Draw a random eligible parameter set, or None if sampling finds no pair."""
    ctx = c.ctx
    pairs = eligible_codewords(c, samples, int(rng.integers(0, 2**63)))
    if not pairs:
        return None
    pair = pairs[int(rng.integers(len(pairs)))]
    spairs = enum_S_minus1(ctx)
    ab = spairs[int(rng.integers(len(spairs)))]
    s_roots = ctx.sqrt(pair.k - 1)
    t_roots = ctx.sqrt(-1 - pair.k)
    s = s_roots[int(rng.integers(len(s_roots)))]
    t = t_roots[int(rng.integers(len(t_roots)))]
    return ConstructionAParams(pair, ab, s, t)


def random_params_B(c: LinearCode, rng: np.random.Generator) -> ConstructionBParams | None:
    """Random ``x`` and ``P``; a random valid ``H`` if one exists."""
    ctx = c.ctx
    A = c.right_block()
    Ps = [P for P in enum_S_minusI2(ctx) if P.beta % ctx.p]
    P = Ps[int(rng.integers(len(Ps)))]
    x = tuple(int(v) for v in rng.integers(0, ctx.p, size=c.k))
    Hs = solve_H(build_M(x, A, P), P)
    if not Hs:
        return None
    return ConstructionBParams(x, P, Hs[int(rng.integers(len(Hs)))])
