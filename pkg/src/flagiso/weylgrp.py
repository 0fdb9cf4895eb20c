"""Simple reflections and orbits of parabolic Weyl subgroups on root sets.

A theta subset is a frozenset of 0-based simple-root positions.  Orbits are
computed by BFS over root indices under the reflections r_alpha, alpha in
theta; group elements are never materialized (the groups explode long
before the orbits do).
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .rootsys import RootSystem

Theta = frozenset


def make_theta(sys: RootSystem, positions: Iterable[int], one_based: bool = False) -> frozenset:
    """Validated theta subset from simple-root positions."""
    pos = frozenset((p - 1 for p in positions) if one_based else positions)
    for p in pos:
        if not 0 <= p < sys.rank:
            raise ValueError(f"simple-root position {p} out of range for {sys.dynkin}")
    return pos


def reflect(sys: RootSystem, alpha: int, beta: int) -> int:
    """r_alpha(beta) = beta - <alpha^v, beta> alpha."""
    k = sys.killing_number(alpha, beta)
    coords = tuple(b - k * a for a, b in zip(sys.coords[alpha], sys.coords[beta]))
    idx = sys.root_index(coords)
    assert idx is not None, "reflections permute the roots"
    return idx


def orbit(sys: RootSystem, theta: frozenset, seed: int) -> frozenset:
    """Smallest set containing seed closed under r_alpha, alpha in theta."""
    gens = [sys.simple[p] for p in sorted(theta)]
    seen = {seed}
    queue = deque([seed])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = reflect(sys, g, cur)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def is_transitive_on(sys: RootSystem, theta: frozenset, roots: Iterable[int], seed: int | None = None) -> bool:
    """Whether the parabolic Weyl subgroup has all given roots in one orbit."""
    roots = set(roots)
    if not roots:
        return True
    if seed is None or seed not in roots:
        seed = min(roots)
    return roots <= orbit(sys, theta, seed)
