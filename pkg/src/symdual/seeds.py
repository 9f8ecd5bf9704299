"""Shipped generator matrices: bootstrap bases and reference codes.

``gf3_*`` / ``gf19_*`` are the worked [8,4] bases over GF(3) and GF(19)
and their length-12 extensions; ``a<p>_<n>`` are the record-distance
symmetric self-dual codes of lengths 32, 36 and 40.
"""
from __future__ import annotations

from importlib import resources

from . import matfile
from .code import LinearCode, from_right_half
from .gf import get_field
from .matrix import Mat
from .solutionsets import enum_S_minusI2

HEAVY = ("a11_32", "a11_36", "a11_40", "a19_36", "a19_40", "a23_32", "a23_36", "a23_40")
NAMES = ("gf3_base", "gf3_g1", "gf19_base", "gf19_g2") + HEAVY


def shipped_file(name: str) -> matfile.MatrixFile:
    if name not in NAMES:
        raise KeyError(f"no shipped matrix {name!r}; choose from {', '.join(NAMES)}")
    text = resources.files("symdual").joinpath("data", f"{name}.txt").read_text()
    mf = matfile.loads(text)
    mf.code.name = name
    return mf


def shipped(name: str) -> LinearCode:
    return shipped_file(name).code


def claimed_distance(name: str) -> int | None:
    return shipped_file(name).claimed_distance


def length4_bases(p: int) -> list[LinearCode]:
    """``(I_2 | P)`` for every symmetric ``P`` with ``P^2 = -I``."""
    ctx = get_field(p)
    return [from_right_half(P.mat(), name=f"len4_p{p}_{P.alpha}_{P.beta}") for P in enum_S_minusI2(ctx)]


def length2_bases(p: int) -> list[LinearCode]:
    """``(1 | i)`` with ``i^2 = -1``; empty unless ``p = 1 mod 4``."""
    ctx = get_field(p)
    return [from_right_half(Mat([[r]], ctx), name=f"len2_p{p}_{r}") for r in ctx.sqrt(p - 1)]


def default_bases(p: int) -> list[LinearCode]:
    return length2_bases(p) + length4_bases(p)
