"""Minimum distance: brute force, Brouwer-Zimmermann, randomized upper bounds.

All enumeration runs through :mod:`symdual.kernels`.  Messages are
enumerated projectively (leading nonzero coefficient fixed to 1) because
scaling never changes a weight.
"""
from __future__ import annotations

import hashlib
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Any, Sequence

import numpy as np

from . import kernels
from .code import LinearCode, singleton_bound
from .errors import BudgetExceeded

log = logging.getLogger(__name__)

DEFAULT_BRUTE_BUDGET = 10**8


@dataclass(frozen=True)
class DistanceBound:
    """Bracket ``lower <= d <= upper`` with the work that produced it."""

    lower: int
    upper: int
    enumerated: int = 0
    completed: tuple[int, ...] = ()
    ranks: tuple[int, ...] = ()
    witness: tuple[int, ...] | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")

    @property
    def exact(self) -> bool:
        return self.lower >= self.upper

    def to_dict(self) -> dict[str, Any]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "effort": {
                "enumerated": self.enumerated,
                "completed_weight": list(self.completed),
                "ranks": list(self.ranks),
            },
            "witness": None if self.witness is None else list(self.witness),
            "seed": self.seed,
        }


def projective_size(p: int, k: int) -> int:
    return (p**k - 1) // (p - 1)


def min_distance_bruteforce(c: LinearCode, budget: int = DEFAULT_BRUTE_BUDGET) -> int:
    return bruteforce_witness(c, budget)[0]


def bruteforce_witness(c: LinearCode, budget: int = DEFAULT_BRUTE_BUDGET) -> tuple[int, np.ndarray]:
    """Exact minimum weight and a codeword attaining it, by full enumeration."""
    total = projective_size(c.p, c.k)
    if total > budget:
        raise BudgetExceeded(f"{total} projective messages exceed budget {budget}")
    msg = np.zeros(c.k, dtype=np.int64)
    best, count = kernels.gray_min_weight(c.gen.data, c.p, msg)
    assert count == total
    return int(best), c.encode(msg)


@dataclass
class InfoSet:
    """One systematic form used by Brouwer-Zimmermann.

    ``columns`` are the (disjoint) positions harvested for this set and
    ``rank`` their count; ``pivots`` completes them to a full information set.
    ``table`` holds the scaled non-pivot parts of the rows.
    """

    columns: tuple[int, ...]
    rank: int
    pivots: tuple[int, ...]
    gen: np.ndarray
    table: np.ndarray = field(repr=False)


def information_sets(c: LinearCode) -> list[InfoSet]:
    """Greedy left-to-right harvest of disjoint information sets."""
    available = list(range(c.n))
    sets: list[InfoSet] = []
    while available:
        _, piv = c.systematic(available)
        if not piv:
            break
        chosen = set(piv)
        order = list(piv) + [j for j in range(c.n) if j not in chosen]
        g, pivots = c.systematic(order)
        nonpiv = [j for j in range(c.n) if j not in set(pivots)]
        table = kernels.multiple_table(g[:, nonpiv], c.p)
        sets.append(InfoSet(tuple(piv), len(piv), pivots, g, table))
        available = [j for j in available if j not in chosen]
    return sets


def level_cost(k: int, w: int, p: int, lead_lo: int = 0, lead_hi: int | None = None) -> int:
    """Number of projective messages of weight exactly ``w`` with lead in range."""
    if lead_hi is None:
        lead_hi = k
    if w < 1:
        return 0
    return sum(comb(k - 1 - i, w - 1) for i in range(lead_lo, lead_hi)) * (p - 1) ** (w - 1)


def _lead_chunks(k: int, w: int, p: int, parts: int) -> list[tuple[int, int]]:
    """Split lead positions into ``parts`` ranges of roughly equal cost."""
    if parts <= 1:
        return [(0, k)]
    costs = [level_cost(k, w, p, i, i + 1) for i in range(k)]
    total = sum(costs)
    chunks, lo, acc = [], 0, 0
    for i, cst in enumerate(costs):
        acc += cst
        if acc >= total * (len(chunks) + 1) / parts and i + 1 < k:
            chunks.append((lo, i + 1))
            lo = i + 1
    chunks.append((lo, k))
    return [ch for ch in chunks if ch[0] < ch[1]]


def _run_level(info: InfoSet, k: int, w: int, p: int, best: int,
               pool: ThreadPoolExecutor | None, parts: int) -> tuple[int, np.ndarray | None, int]:
    chunks = _lead_chunks(k, w, p, parts if pool is not None else 1)

    def job(ch):
        msg = np.zeros(k, dtype=np.int64)
        b, cnt = kernels.enum_level(info.table, w, ch[0], ch[1], best, msg)
        return b, (msg if b < best else None), cnt

    results = list(pool.map(job, chunks)) if pool is not None and len(chunks) > 1 else [job(ch) for ch in chunks]
    count = sum(r[2] for r in results)
    top_best, top_msg = best, None
    # first chunk wins ties so the witness does not depend on the split
    for b, msg, _ in results:
        if msg is not None and b < top_best:
            top_best, top_msg = b, msg
    return top_best, top_msg, count


def _lower_bound(k: int, ranks: Sequence[int], done: Sequence[int]) -> int:
    return sum(max(0, d + 1 - (k - r)) for r, d in zip(ranks, done))


def min_distance_bz(c: LinearCode, target: int | None = None, budget: int | None = None,
                    threads: int = 1) -> DistanceBound:
    """Brouwer-Zimmermann minimum distance with a running lower/upper bracket.

    Enumeration proceeds by message weight ``w`` across all information sets.
    After set ``i`` completes weight ``done[i]``, every codeword not yet seen
    has weight at least ``sum(max(0, done[i] + 1 - (k - rank[i])))``.  Stops on
    ``lower >= upper``, ``lower >= target`` or when the next level would
    exceed ``budget`` enumerated words.
    """
    k, p = c.k, c.p
    sets = information_sets(c)
    ranks = [s.rank for s in sets]
    done = [0] * len(sets)
    singleton = singleton_bound(c)
    best = singleton + 1
    witness: np.ndarray | None = None
    lower = 1
    enumerated = 0
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        stop = False
        for w in range(1, k + 1):
            for i, info in enumerate(sets):
                cost = level_cost(k, w, p)
                if budget is not None and enumerated + cost > budget:
                    stop = True
                    break
                b, msg, cnt = _run_level(info, k, w, p, best, pool, threads)
                enumerated += cnt
                if msg is not None:
                    best = b
                    witness = (msg @ info.gen) % p
                done[i] = w
                lower = max(lower, _lower_bound(k, ranks, done))
                log.debug("set %d weight %d: lower=%d upper=%d", i, w, lower, min(best, singleton))
                upper = min(best, singleton)
                if lower >= upper or (target is not None and lower >= target):
                    stop = True
                    break
            if stop:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    upper = min(best, singleton)
    return DistanceBound(
        lower=min(lower, upper),
        upper=upper,
        enumerated=enumerated,
        completed=tuple(done),
        ranks=tuple(ranks),
        witness=None if witness is None else tuple(int(v) for v in witness),
    )


@dataclass(frozen=True)
class LowWeightWord:
    weight: int
    codeword: tuple[int, ...] | None
    iterations: int
    seed: int | None


def find_low_weight(c: LinearCode, iterations: int, seed: int | None = 0, depth: int = 2,
                    stop_at: int | None = None) -> LowWeightWord:
    """Randomized information-set search for a low-weight codeword.

    Each iteration draws a random column order, row reduces with pivots taken
    in that order, and enumerates all messages of weight ``<= depth`` in the
    resulting systematic form.  Deterministic for a given ``seed``.
    """
    k, n, p = c.k, c.n, c.p
    rng = np.random.default_rng(seed)
    best = singleton_bound(c) + 1
    word: np.ndarray | None = None
    g = np.empty(c.gen.shape, dtype=np.int64)
    piv = np.zeros(k, dtype=np.int64)
    msg = np.zeros(k, dtype=np.int64)
    done = 0
    for it in range(iterations):
        if stop_at is not None and best <= stop_at:
            break
        order = rng.permutation(n).astype(np.int64)
        g[:] = c.gen.data
        r = kernels.rref_inplace(g, order, p, c.ctx.inv_table, piv)
        mask = np.ones(n, dtype=bool)
        mask[piv[:r]] = False
        table = kernels.multiple_table(g[:, mask], p)
        for w in range(1, min(depth, k) + 1):
            b, _ = kernels.enum_level(table, w, 0, k, best, msg)
            if b < best:
                best = b
                word = (msg @ g) % p
        done = it + 1
    weight = min(best, singleton_bound(c))
    return LowWeightWord(
        weight=weight,
        codeword=None if word is None else tuple(int(v) for v in word),
        iterations=done,
        seed=seed,
    )


def min_weight_upper(c: LinearCode, iterations: int, seed: int | None = 0, depth: int = 2,
                     stop_at: int | None = None) -> int:
    return find_low_weight(c, iterations, seed, depth, stop_at).weight


def truncated_weight_enum(c: LinearCode, wmax: int, budget: int = DEFAULT_BRUTE_BUDGET) -> list[int]:
    """Exact codeword counts ``A_0..A_wmax``.

    A codeword of weight ``<= wmax`` has at most ``wmax`` nonzero
    coordinates on any information set, so enumerating messages of weight
    ``<= wmax`` in one systematic form finds each of them exactly once
    (projectively).
    """
    k, p = c.k, c.p
    top = min(wmax, k)
    cost = sum(level_cost(k, w, p) for w in range(1, top + 1))
    if cost > budget:
        raise BudgetExceeded(f"{cost} messages exceed budget {budget}")
    g, pivots = c.systematic()
    nonpiv = [j for j in range(c.n) if j not in set(pivots)]
    table = kernels.multiple_table(g[:, nonpiv], p)
    hist = np.zeros(wmax + 1, dtype=np.int64)
    msg = np.zeros(k, dtype=np.int64)
    for w in range(1, top + 1):
        kernels.enum_level(table, w, 0, k, 0, msg, hist)
    counts = [int(v) * (p - 1) for v in hist]
    counts[0] = 1
    return counts


def fingerprint(c: LinearCode, wmax: int, budget: int = DEFAULT_BRUTE_BUDGET) -> str:
    """Hex digest of ``(p, n, k)`` and the truncated weight enumerator."""
    counts = truncated_weight_enum(c, wmax, budget)
    payload = json.dumps({"p": c.p, "n": c.n, "k": c.k, "A": counts}, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()
