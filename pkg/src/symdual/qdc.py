"""Quadratic double circulant generators ``S_l(a, b)``.

``S_l(a, b)`` is the code generated by ``(a I | S + b I)`` where ``S`` is the
bordered Jacobsthal matrix of the prime ``l``::

    S = [[0,     1 ... 1],
         [eps,          ],
         [ :   Q_l      ],
         [eps,          ]]

with ``Q_l`` the circulant carrying ``0`` on the diagonal, ``1`` at the
nonzero quadratic residues and ``-1`` at the non-residues, and
``eps = (-1 / l)``.  ``S S^T = l I`` makes the code self-dual exactly when
``a^2 + l = 0`` (``l = 1 mod 4``, ``b = 0``) or ``a^2 + b^2 + l = 0``
(``l = 3 mod 4``).

Rather than trusting that reading blindly, :func:`qdc_completions` fixes the
diagonal ``b/a`` and residue value ``1/a`` of the normalised core and
searches every non-residue value ``c`` and border ``(alpha, beta, gamma)``
for self-dual completions of ``(I | A)``.  :func:`qdc_generator` returns the
completion that matches the reading above when the search finds it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code import LinearCode, from_right_half, is_self_dual
from .errors import NoSelfDualCompletion
from .gf import get_field, is_prime
from .matrix import Mat, circulant


@dataclass(frozen=True)
class QdcSpec:
    p: int
    ell: int
    a: int
    b: int
    bordered: bool = True

    def __post_init__(self):
        if self.ell < 3 or not is_prime(self.ell):
            raise ValueError(f"circulant order must be an odd prime, got {self.ell}")
        get_field(self.p)

    @property
    def length(self) -> int:
        return 2 * (self.ell + 1) if self.bordered else 2 * self.ell


@dataclass(frozen=True)
class QdcCompletion:
    c: int
    border: tuple[int, int, int] | None  # (alpha, beta, gamma), gamma in {1, p-1}
    code: LinearCode
    canonical: bool = False


def residues(ell: int) -> frozenset[int]:
    return frozenset(i * i % ell for i in range(1, ell))


def core_first_row(ell: int, a: int, b: int, c: int) -> list[int]:
    """``a`` at offset 0, ``b`` at residues, ``c`` at non-residues."""
    res = residues(ell)
    return [a if j == 0 else (b if j in res else c) for j in range(ell)]


def jacobsthal(ell: int, p: int) -> Mat:
    return circulant(core_first_row(ell, 0, 1, p - 1), p)


def conference_matrix(ell: int, p: int) -> Mat:
    """The bordered Jacobsthal matrix ``S`` with ``S S^T = l I``."""
    eps = 1 if ell % 4 == 1 else p - 1
    S = np.zeros((ell + 1, ell + 1), dtype=np.int64)
    S[0, 1:] = 1
    S[1:, 0] = eps
    S[1:, 1:] = jacobsthal(ell, p).data
    return Mat(S, p)


def reference_generator(spec: QdcSpec) -> Mat:
    """``(a I | S + b I)`` (bordered) or ``(a I | Q_l + b I)`` (pure), unreduced."""
    ctx = get_field(spec.p)
    right = conference_matrix(spec.ell, ctx.p) if spec.bordered else jacobsthal(spec.ell, ctx.p)
    eye = Mat.identity(right.rows, ctx)
    return Mat(np.hstack([eye.scale(spec.a).data, (right + eye.scale(spec.b)).data]), ctx)


def core(spec: QdcSpec, c: int) -> Mat:
    ctx = get_field(spec.p)
    ainv = ctx.inv(spec.a)
    return circulant(core_first_row(spec.ell, spec.b * ainv % ctx.p, ainv, c), ctx.p)


def _canonical(spec: QdcSpec) -> tuple[int, tuple[int, int, int] | None]:
    ctx = get_field(spec.p)
    p = ctx.p
    ainv = ctx.inv(spec.a)
    border = None
    if spec.bordered:
        border = (spec.b * ainv % p, ainv, 1 if spec.ell % 4 == 1 else p - 1)
    return (p - ainv) % p, border


def qdc_completions(spec: QdcSpec) -> list[QdcCompletion]:
    """Every self-dual completion, ordered by ``(c, beta, alpha, gamma)``."""
    ctx = get_field(spec.p)
    p, ell = ctx.p, spec.ell
    if spec.a % p == 0:
        return []
    canon = _canonical(spec)
    out: list[QdcCompletion] = []
    for c in range(p):
        Q = core(spec, c)
        gram = (Q.data @ Q.data.T) % p
        if not spec.bordered:
            if np.array_equal(gram, (-np.eye(ell, dtype=np.int64)) % p):
                code = from_right_half(Q, name=_name(spec, c, None))
                out.append(QdcCompletion(c, None, code, (c, None) == canon))
            continue
        # the border column adds beta^2 J, so Q Q^T must equal -I - beta^2 J
        mu = int(gram[0, 1])
        target = (np.full((ell, ell), mu, dtype=np.int64) - np.eye(ell, dtype=np.int64)) % p
        if not np.array_equal(gram, target):
            continue
        rowsum = int(Q.data[0].sum() % p)
        for beta in ctx.sqrt(-mu):
            for alpha in ctx.sqrt(-1 - ell * beta * beta):
                for g in (1, p - 1):
                    if (alpha * g * beta + beta * rowsum) % p or (beta == 0 and g != 1):
                        continue
                    A = np.zeros((ell + 1, ell + 1), dtype=np.int64)
                    A[0, 0] = alpha
                    A[0, 1:] = beta
                    A[1:, 0] = g * beta % p
                    A[1:, 1:] = Q.data
                    border = (alpha, beta, g)
                    code = from_right_half(Mat(A, ctx), name=_name(spec, c, border))
                    if is_self_dual(code):
                        out.append(QdcCompletion(c, border, code, (c, border) == canon))
    return out


def _name(spec: QdcSpec, c: int, border) -> str:
    kind = "b" if spec.bordered else "p"
    tail = "" if border is None else "_" + "_".join(str(v) for v in border)
    return f"qdc{kind}_p{spec.p}_l{spec.ell}_{spec.a}_{spec.b}_c{c}{tail}"


def pick(completions: list[QdcCompletion]) -> QdcCompletion:
    """The canonical completion if present, else the first."""
    if not completions:
        raise NoSelfDualCompletion("no self-dual completion")
    for comp in completions:
        if comp.canonical:
            return comp
    return completions[0]


def qdc_generator(spec: QdcSpec) -> LinearCode:
    try:
        return pick(qdc_completions(spec)).code
    except NoSelfDualCompletion:
        raise NoSelfDualCompletion(f"no self-dual completion for {spec}") from None
