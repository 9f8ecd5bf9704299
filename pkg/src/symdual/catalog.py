"""On-disk catalog: ``index.jsonl`` plus ``matrices/<id>.txt``.

The index is append-only; ids are content hashes of the canonical matrix
bytes, so adding the same code twice is a no-op.  Loading re-reads every
payload and re-checks its hash and self-duality.
"""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterator

from . import matfile
from .code import LinearCode, is_self_dual
from .errors import ParseError
from .search import SearchResult, code_id

ENV_VAR = "SYMDUAL_CATALOG"
DEFAULT_DIR = "symdual-catalog"


@dataclass
class CatalogRecord:
    id: str
    p: int
    n: int
    k: int
    distance: int | None
    status: str  # "exact" | "upper-only"
    lower: int | None = None
    fingerprint: str | None = None
    trace: dict[str, Any] | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CatalogRecord":
        return cls(**d)


@dataclass
class LoadedRecord:
    record: CatalogRecord
    code: LinearCode | None
    problems: list[str]

    @property
    def ok(self) -> bool:
        return not self.problems


def default_dir() -> Path:
    return Path(os.environ.get(ENV_VAR, DEFAULT_DIR))


class Catalog:
    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else default_dir()

    @property
    def index_path(self) -> Path:
        return self.root / "index.jsonl"

    def matrix_path(self, rid: str) -> Path:
        return self.root / "matrices" / f"{rid}.txt"

    def records(self) -> list[CatalogRecord]:
        if not self.index_path.exists():
            return []
        out = []
        for n, line in enumerate(self.index_path.read_text().splitlines(), 1):
            if not line.strip():
                continue
            try:
                out.append(CatalogRecord.from_dict(json.loads(line)))
            except (json.JSONDecodeError, TypeError) as exc:
                raise ParseError(f"{self.index_path}:{n}: bad index line ({exc})") from exc
        return out

    def ids(self) -> set[str]:
        return {r.id for r in self.records()}

    def add(self, code: LinearCode, *, distance: int | None, exact: bool, lower: int | None = None,
            fingerprint: str | None = None, trace: dict[str, Any] | None = None,
            extra: dict[str, Any] | None = None) -> CatalogRecord:
        rid = code_id(code)
        rec = CatalogRecord(rid, code.p, code.n, code.k, distance, "exact" if exact else "upper-only",
                            lower, fingerprint, trace, extra or {})
        if rid in self.ids():
            return rec
        self.matrix_path(rid).parent.mkdir(parents=True, exist_ok=True)
        comments = [] if distance is None else [f"# claimed d={distance}"]
        matfile.write(self.matrix_path(rid), code, comments)
        with self.index_path.open("a") as fh:
            fh.write(rec.to_json() + "\n")
        return rec

    def add_result(self, res: SearchResult) -> CatalogRecord:
        return self.add(res.code, distance=res.bound.upper, exact=res.bound.exact, lower=res.bound.lower,
                        fingerprint=res.fingerprint, trace=res.trace)

    def load(self, rid: str) -> LoadedRecord:
        matches = [r for r in self.records() if r.id == rid or r.id.startswith(rid)]
        if not matches:
            raise KeyError(rid)
        if len(matches) > 1:
            raise KeyError(f"ambiguous id prefix {rid!r}")
        return self._verify(matches[0])

    def __iter__(self) -> Iterator[LoadedRecord]:
        for rec in self.records():
            yield self._verify(rec)

    def _verify(self, rec: CatalogRecord) -> LoadedRecord:
        path = self.matrix_path(rec.id)
        try:
            code = matfile.read(path).code
        except ParseError as exc:
            return LoadedRecord(rec, None, [f"payload unreadable: {exc}"])
        problems = []
        if code_id(code) != rec.id:
            problems.append("payload hash does not match id")
        if (code.p, code.n, code.k) != (rec.p, rec.n, rec.k):
            problems.append("payload parameters do not match index")
        if not is_self_dual(code):
            problems.append("payload is not self-dual")
        return LoadedRecord(rec, code if not problems else None, problems)
