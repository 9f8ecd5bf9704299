"""Seeded, staged random search over the length-plus-four constructions.

Stages run breadth-first by length.  Each trial derives its own generator
from ``SeedSequence(seed, spawn_key=(stage, trial))``, so the outcome of a
trial never depends on which worker ran it or how many ran alongside.
Each stage keeps the ``keep`` best distinct codes as bases for the next.
"""
from __future__ import annotations

import hashlib
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from . import construct as cons
from .code import LinearCode, check_standard_symmetric
from .distance import DistanceBound, fingerprint, level_cost, min_distance_bz, min_weight_upper
from .errors import UnknownBase
from .gf import get_field
from .matfile import canonical_bytes
from .matrix import Mat
from .solutionsets import PMatrix, SPair

log = logging.getLogger(__name__)

METHODS = ("A", "B", "both")


@dataclass
class SearchConfig:
    p: int
    target_length: int
    target_distance: int | None = None
    seed: int = 0
    trials: int | list[int] = 200
    keep: int = 16
    score_iterations: int = 8
    score_depth: int = 2
    distance_budget: int = 10**8
    fingerprint_budget: int = 10**6
    method: str = "both"
    stop_at_target: bool = True
    threads: int = 1

    def __post_init__(self):
        get_field(self.p)
        if self.target_length <= 0 or self.target_length % 2:
            raise ValueError("target length must be a positive even integer")
        if self.p % 4 == 3 and self.target_length % 4:
            raise ValueError(f"no self-dual code of length {self.target_length} exists over GF({self.p})")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.keep < 1:
            raise ValueError("keep must be positive")

    def stage_trials(self, stage: int) -> int:
        if isinstance(self.trials, int):
            return self.trials
        return self.trials[stage] if stage < len(self.trials) else self.trials[-1]

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "SearchConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class SearchResult:
    code: LinearCode
    trace: dict[str, Any]
    bound: DistanceBound
    fingerprint: str | None
    id: str = field(init=False)

    def __post_init__(self):
        self.id = code_id(self.code)


def code_id(c: LinearCode) -> str:
    return hashlib.sha256(canonical_bytes(c)).hexdigest()[:16]


# -- trace (de)serialisation ------------------------------------------------

def step_from_params(params: cons.ConstructionAParams | cons.ConstructionBParams,
                     seed: Sequence[int] | None = None) -> dict[str, Any]:
    if isinstance(params, cons.ConstructionAParams):
        step = {
            "method": "A",
            "x": list(params.pair.x),
            "y": list(params.pair.y),
            "alpha": params.alpha_beta.alpha,
            "beta": params.alpha_beta.beta,
            "s": params.s,
            "t": params.t,
        }
    else:
        step = {
            "method": "B",
            "x": list(params.x),
            "P": [params.P.alpha, params.P.beta],
            "H": params.H.tolist(),
        }
    if seed is not None:
        step["seed"] = list(seed)
    return step


def apply_step(c: LinearCode, step: dict[str, Any]) -> LinearCode:
    p = c.p
    if step["method"] == "A":
        x = tuple(int(v) % p for v in step["x"])
        pair = cons.CodewordPair(x, tuple(int(v) % p for v in step["y"]), sum(v * v for v in x) % p)
        params = cons.ConstructionAParams(pair, SPair(int(step["alpha"]), int(step["beta"])),
                                          int(step["s"]), int(step["t"]))
        return cons.construct_A(c, params)
    if step["method"] == "B":
        a, b = step["P"]
        params = cons.ConstructionBParams(tuple(int(v) for v in step["x"]), PMatrix(int(a), int(b), p),
                                          Mat(step["H"], c.ctx))
        return cons.construct_B(c, params)
    raise ValueError(f"unknown method {step['method']!r}")


def replay_trace(trace: dict[str, Any], bases: Iterable[LinearCode]) -> LinearCode:
    """Rebuild a result from its trace; every step is re-validated."""
    by_id = {code_id(b): b for b in bases}
    base_id = trace.get("base")
    if base_id not in by_id:
        raise UnknownBase(base_id)
    c = by_id[base_id]
    for step in trace.get("steps", []):
        c = apply_step(c, step)
    return c


# -- search -----------------------------------------------------------------

def verify_candidate(c: LinearCode) -> bool:
    """Independent re-check of a construction output."""
    return all(check_standard_symmetric(c).values())


def _trial_rng(seed: int, stage: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stage, trial)))


@dataclass
class _Candidate:
    code: LinearCode
    trace: dict[str, Any]
    upper: int
    trial: int
    key: str = ""


def _run_trial(cfg: SearchConfig, pool: list[tuple[LinearCode, dict]], stage: int,
               trial: int) -> _Candidate | None:
    rng = _trial_rng(cfg.seed, stage, trial)
    base, trace = pool[int(rng.integers(len(pool)))]
    method = cfg.method if cfg.method != "both" else ("A", "B")[int(rng.integers(2))]
    draw = cons.random_params_A if method == "A" else cons.random_params_B
    params = draw(base, rng)
    if params is None:
        return None
    code = (cons.construct_A if method == "A" else cons.construct_B)(base, params)
    if not verify_candidate(code):
        log.warning("stage %d trial %d: construction output failed re-verification", stage, trial)
        return None
    score_seed = int(rng.integers(0, 2**32))
    upper = min_weight_upper(code, cfg.score_iterations, seed=score_seed, depth=cfg.score_depth)
    new_trace = {"base": trace["base"], "steps": trace["steps"] + [step_from_params(params, (stage, trial))]}
    return _Candidate(code, new_trace, upper, trial)


def dedup_key(c: LinearCode, upper: int, budget: int) -> tuple[str, str | None]:
    """Key that only merges codes with provably equal minimum distance.

    The truncated weight enumerator up to ``upper`` determines ``d`` when
    ``d <= upper``, so equal fingerprints at that depth imply equal ``d``.
    If that enumeration is over budget, fall back to the matrix itself.
    """
    wmax = min(upper, c.k)
    cost = sum(level_cost(c.k, w, c.p) for w in range(1, wmax + 1))
    if cost <= budget:
        fp = fingerprint(c, upper, budget)
        return f"{upper}:{fp}", fp
    return "gen:" + code_id(c), None


def _select(cands: list[_Candidate], keep: int, budget: int) -> list[_Candidate]:
    seen: dict[str, _Candidate] = {}
    for cand in sorted(cands, key=lambda c: (-c.upper, c.trial)):
        if len(seen) >= keep:
            break
        cand.key, _ = dedup_key(cand.code, cand.upper, budget)
        seen.setdefault(cand.key, cand)
    return list(seen.values())


def run_search(cfg: SearchConfig, bases: Sequence[LinearCode]) -> list[SearchResult]:
    """Staged search from ``bases`` up to ``cfg.target_length``."""
    by_len: dict[int, list[tuple[LinearCode, dict]]] = {}
    for b in bases:
        if b.p != cfg.p:
            raise ValueError(f"base {b!r} is over GF({b.p}), not GF({cfg.p})")
        if not verify_candidate(b):
            raise ValueError(f"base {b!r} is not a standard-form symmetric self-dual code")
        if b.n <= cfg.target_length and (cfg.target_length - b.n) % 4 == 0:
            by_len.setdefault(b.n, []).append((b, {"base": code_id(b), "steps": []}))
    if not by_len:
        return []
    length = min(by_len)
    pool = by_len[length]
    stage = 0
    finals: list[_Candidate] = []
    if length == cfg.target_length:
        finals = [_Candidate(b, t, min_weight_upper(b, cfg.score_iterations, seed=cfg.seed), -1 - i)
                  for i, (b, t) in enumerate(pool)]
    executor = ThreadPoolExecutor(cfg.threads) if cfg.threads > 1 else None
    try:
        while length < cfg.target_length:
            last = length + 4 == cfg.target_length
            n_trials = cfg.stage_trials(stage)
            cands = _run_stage(cfg, pool, stage, n_trials, last, executor)
            length += 4
            log.info("stage %d (length %d): %d candidates", stage, length, len(cands))
            chosen = _select(cands, cfg.keep, cfg.fingerprint_budget)
            if last:
                finals = chosen
            pool = [(c.code, c.trace) for c in chosen] + by_len.get(length, [])
            stage += 1
            if not pool:
                break
    finally:
        if executor is not None:
            executor.shutdown()
    return _certify(cfg, finals)


def _run_stage(cfg, pool, stage, n_trials, last, executor) -> list[_Candidate]:
    cands: list[_Candidate] = []
    batch = max(1, cfg.threads)
    for start in range(0, n_trials, batch):
        idx = range(start, min(start + batch, n_trials))
        if executor is None:
            outs = [_run_trial(cfg, pool, stage, t) for t in idx]
        else:
            outs = list(executor.map(lambda t: _run_trial(cfg, pool, stage, t), idx))
        for out in outs:
            if out is None:
                continue
            cands.append(out)
            if last and _hit_target(cfg, out):
                return cands
    return cands


def _hit_target(cfg: SearchConfig, cand: _Candidate) -> bool:
    if not cfg.stop_at_target or cfg.target_distance is None or cand.upper < cfg.target_distance:
        return False
    bound = min_distance_bz(cand.code, target=cfg.target_distance, budget=cfg.distance_budget)
    return bound.lower >= cfg.target_distance


def _certify(cfg: SearchConfig, finals: list[_Candidate]) -> list[SearchResult]:
    out: list[SearchResult] = []
    for cand in finals:
        bz = min_distance_bz(cand.code, budget=cfg.distance_budget, threads=cfg.threads)
        upper = min(bz.upper, cand.upper)
        bound = DistanceBound(lower=min(bz.lower, upper), upper=upper, enumerated=bz.enumerated,
                              completed=bz.completed, ranks=bz.ranks, witness=bz.witness, seed=cfg.seed)
        _, fp = dedup_key(cand.code, upper, cfg.fingerprint_budget)
        out.append(SearchResult(cand.code, cand.trace, bound, fp))
    out.sort(key=lambda r: (-r.bound.upper, not r.bound.exact, -r.bound.lower, r.fingerprint or "", r.id))
    uniq: list[SearchResult] = []
    seen: set[tuple] = set()
    for r in out:
        key = (r.bound.upper, r.bound.exact, r.fingerprint or r.id)
        if key not in seen:
            seen.add(key)
            uniq.append(r)
    return uniq
