"""Tangent-space roots of a flag manifold and their Levi-irreducible blocks.

For a subset theta of the simple roots, the tangent space at the origin is
the sum of the root spaces over the negative roots outside the subsystem
generated by theta.  The Levi factor decomposes it into components that are
sums of root spaces; each component is a BFS-connected block under adding
and subtracting subsystem roots, carries a unique highest weight, and sits
inside a single eigenvalue level of any characteristic element.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .rootsys import RootSystem


class ThetaIsFull(ValueError):
    """theta = all simple roots defines no flag manifold."""


def theta_closure(sys: RootSystem, theta: frozenset) -> frozenset:
    """All roots generated by +-theta under addition (the Levi subsystem)."""
    current = set()
    for p in theta:
        s = sys.simple[p]
        current.add(s)
        current.add(sys.neg(s))
    while True:
        new = set()
        members = sorted(current)
        for a in members:
            for b in members:
                c = sys.add_roots(a, b)
                if c is not None and c not in current:
                    new.add(c)
        if not new:
            return frozenset(current)
        current |= new


def ntheta_minus(sys: RootSystem, theta: frozenset) -> tuple[int, ...]:
    """Negative roots outside the theta subsystem (the tangent-space roots)."""
    closure = theta_closure(sys, theta)
    return tuple(i for i in sys.negative_roots() if i not in closure)


@dataclass(frozen=True)
class Component:
    """One Levi-irreducible block of the tangent space."""

    theta: frozenset
    roots: tuple[int, ...]
    highest: int
    level: Fraction

    @property
    def dim(self) -> int:
        return len(self.roots)


def characteristic_element(sys: RootSystem, theta: frozenset) -> tuple[Fraction, ...]:
    """Dominant vector H with <alpha_i, H> = 0 exactly for i in theta.

    For the D family the free coefficients are chosen pairwise distinct so
    that all ambient coordinates are nonzero whenever that is possible
    (it is not when both branch roots lie in theta, which forces the last
    two coordinates to vanish).
    """
    cartan_gram = [
        [Fraction(sys.inner(sys.simple[i], sys.simple[j])) for j in range(sys.rank)]
        for i in range(sys.rank)
    ]
    target = []
    for i in range(sys.rank):
        if i in theta:
            target.append(Fraction(0))
        elif sys.dynkin.family == "D":
            target.append(Fraction(i + 1))
        else:
            target.append(Fraction(1))
    cols = [[cartan_gram[i][k] for i in range(sys.rank)] for k in range(sys.rank)]
    sol = linalg.solve_many(cols, [target])
    assert sol is not None
    dim = len(sys.coords[0])
    h = [Fraction(0)] * dim
    for k, x in enumerate(sol[0]):
        for a, c in enumerate(sys.coords[sys.simple[k]]):
            h[a] += x * c
    return tuple(h)


def z_components(sys: RootSystem, theta: frozenset) -> list[Component]:
    """Partition of the tangent-space roots into Levi-irreducible blocks."""
    if len(theta) >= sys.rank:
        raise ThetaIsFull(f"theta covers all simple roots of {sys.dynkin}")
    closure = sorted(theta_closure(sys, theta))
    carrier = ntheta_minus(sys, theta)
    carrier_set = set(carrier)
    h_elt = characteristic_element(sys, theta)

    seen: set[int] = set()
    comps: list[Component] = []
    for start in carrier:
        if start in seen:
            continue
        block = {start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for t in closure:
                nxt = sys.add_roots(cur, t)
                if nxt is not None and nxt in carrier_set and nxt not in block:
                    block.add(nxt)
                    queue.append(nxt)
        seen |= block
        roots = tuple(sorted(block))
        highs = [
            r for r in roots
            if all(sys.add_roots(r, sys.simple[p]) is None for p in theta)
        ]
        assert len(highs) == 1, "component must carry exactly one highest weight"
        levels = {sys.pair(r, h_elt) for r in roots}
        assert len(levels) == 1, "component must sit in one eigenvalue level"
        level = levels.pop()
        assert level < 0
        comps.append(Component(theta, roots, highs[0], level))
    return comps


def _sign_type(sys: RootSystem, root: int) -> int:
    """Coordinate-sum of a classical root; separates -li+lj from -li-lj."""
    return sum(sys.coords[root])


def long_short_split_audit(sys: RootSystem, theta: frozenset, components: list[Component]) -> bool:
    """Length/type homogeneity of components in the cases where it is claimed.

    B family with the short simple root outside theta: every component is
    all-short or all-long.  C family with the long simple root outside
    theta: components without long roots consist of a single sign type.
    Other inputs pass vacuously.
    """
    fam = sys.dynkin.family
    last = sys.rank - 1
    if fam == "B" and last not in theta:
        for comp in components:
            lengths = {sys.is_long(r) for r in comp.roots}
            if len(lengths) != 1:
                return False
        return True
    if fam == "C" and last not in theta:
        for comp in components:
            if any(sys.is_long(r) for r in comp.roots):
                continue
            if len({_sign_type(sys, r) for r in comp.roots}) != 1:
                return False
        return True
    return True
