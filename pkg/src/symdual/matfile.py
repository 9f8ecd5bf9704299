"""Plain-text matrix files.

Layout::

    symdual-matrix v1
    p=<int> n=<int> k=<int>
    <k lines of n space-separated residues>

Lines starting with ``#`` are comments and may appear anywhere.  The file
must end with a newline.  A comment of the form ``# claimed d=<int>`` is
surfaced as :attr:`MatrixFile.claimed_distance`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .code import LinearCode
from .errors import DimensionMismatch, ParseError
from .gf import get_field
from .matrix import Mat

MAGIC = "symdual-matrix v1"
_HEADER = re.compile(r"^p=(\d+) n=(\d+) k=(\d+)$")
_CLAIM = re.compile(r"^#\s*claimed d=(\d+)\s*$")


@dataclass
class MatrixFile:
    code: LinearCode
    comments: list[str] = field(default_factory=list)

    @property
    def claimed_distance(self) -> int | None:
        for line in self.comments:
            m = _CLAIM.match(line)
            if m:
                return int(m.group(1))
        return None


def dumps(gen: Mat | LinearCode, comments: list[str] | None = None) -> str:
    if isinstance(gen, LinearCode):
        gen = gen.gen
    lines = [MAGIC, f"p={gen.p} n={gen.cols} k={gen.rows}"]
    for c in comments or []:
        lines.append(c if c.startswith("#") else f"# {c}")
    lines.extend(" ".join(str(int(v)) for v in row) for row in gen.data)
    return "\n".join(lines) + "\n"


def canonical_bytes(gen: Mat | LinearCode) -> bytes:
    """Comment-free serialization, the basis of content ids."""
    return dumps(gen).encode()


def loads(text: str) -> MatrixFile:
    if not text.endswith("\n"):
        raise ParseError("matrix file must end with a newline")
    comments = []
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            comments.append(line)
        elif line.strip():
            body.append(line.strip())
        else:
            raise ParseError("blank lines are not allowed")
    if not body or body[0] != MAGIC:
        raise ParseError(f"first line must be {MAGIC!r}")
    if len(body) < 2:
        raise ParseError("missing header line")
    m = _HEADER.match(body[1])
    if not m:
        raise ParseError(f"malformed header {body[1]!r}")
    p, n, k = (int(v) for v in m.groups())
    try:
        ctx = get_field(p)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    rows = body[2:]
    if len(rows) != k:
        raise ParseError(f"header says k={k} rows, found {len(rows)}")
    data = []
    for i, row in enumerate(rows):
        try:
            vals = [int(v) for v in row.split()]
        except ValueError as exc:
            raise ParseError(f"row {i}: non-integer entry") from exc
        if len(vals) != n:
            raise ParseError(f"row {i}: expected {n} entries, found {len(vals)}")
        if any(v < 0 or v >= p for v in vals):
            raise ParseError(f"row {i}: entries must lie in 0..{p - 1}")
        data.append(vals)
    try:
        code = LinearCode(Mat(np.array(data, dtype=np.int64).reshape(k, n), ctx))
    except DimensionMismatch as exc:
        raise ParseError(f"generator is not of full row rank: {exc}") from exc
    return MatrixFile(code, comments)


def read(path: str | Path) -> MatrixFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def write(path: str | Path, gen: Mat | LinearCode, comments: list[str] | None = None) -> None:
    Path(path).write_text(dumps(gen, comments))
