"""Solutions of x^2 + y^2 = -1 and symmetric 2x2 square roots of -I."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FieldCtx
from .matrix import Mat


@dataclass(frozen=True, order=True)
class SPair:
    alpha: int
    beta: int


@dataclass(frozen=True, order=True)
class PMatrix:
    """The symmetric matrix ``[[alpha, beta], [beta, -alpha]]`` over GF(p)."""

    alpha: int
    beta: int
    p: int

    def mat(self) -> Mat:
        return Mat([[self.alpha, self.beta], [self.beta, -self.alpha]], self.p)

    @classmethod
    def from_mat(cls, m: Mat) -> "PMatrix":
        d = m.data
        if m.shape != (2, 2) or d[0, 1] != d[1, 0] or (d[0, 0] + d[1, 1]) % m.p:
            raise ValueError("not of the form [[a, b], [b, -a]]")
        return cls(int(d[0, 0]), int(d[0, 1]), m.p)


def expected_size(p: int) -> int:
    """``p - (-1)**((p-1)/2)``: p+1 when p = 3 mod 4, p-1 when p = 1 mod 4."""
    return p + 1 if p % 4 == 3 else p - 1


def enum_S_minus1(ctx: FieldCtx) -> list[SPair]:
    p = ctx.p
    sq = (np.arange(p, dtype=np.int64) ** 2) % p
    hits = np.argwhere((sq[:, None] + sq[None, :] + 1) % p == 0)
    return [SPair(int(a), int(b)) for a, b in hits]


def enum_S_minusI2(ctx: FieldCtx) -> list[PMatrix]:
    return [PMatrix(s.alpha, s.beta, ctx.p) for s in enum_S_minus1(ctx)]
