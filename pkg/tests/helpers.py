"""Shared test utilities: cached systems and index lookups."""

from __future__ import annotations

from functools import lru_cache

from flagiso import root_system
from flagiso.chevalley import StructureConstants
from flagiso.weylgrp import make_theta


@lru_cache(maxsize=None)
def sys_of(family: str, rank: int):
    return root_system(family, rank)


@lru_cache(maxsize=None)
def constants_of(family: str, rank: int):
    return StructureConstants(sys_of(family, rank))


def theta_of(sys, *one_based):
    return make_theta(sys, one_based, one_based=True)


def rt(sys, *coords) -> int:
    """Root index from ambient coordinates; fails loudly on a non-root."""
    idx = sys.root_index(tuple(coords))
    assert idx is not None, coords
    return idx


def proper_thetas(rank: int):
    """Every theta strictly smaller than the full simple system."""
    for mask in range(2 ** rank - 1):
        yield frozenset(p for p in range(rank) if mask >> p & 1)
