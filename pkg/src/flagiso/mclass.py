"""Sign characters of root spaces and the resulting root equivalence classes.

In a split real form the isotropy group of the maximal flag acts on each
root space g_a by a character with values +-1; the character is determined
by the parities of the Killing numbers <gamma^v, a>.  Two roots are
M-equivalent when the characters agree.  Because every coroot is an integer
combination of simple coroots, checking parities on the simple roots
suffices; `m_equivalent_full` keeps the all-roots check available for
cross-validation.
"""

from __future__ import annotations

from typing import Iterable

from .rootsys import RootSystem


def parity_vector(sys: RootSystem, root: int) -> int:
    """Bitmask: bit i = killing_number(alpha_i, root) mod 2."""
    bits = 0
    for pos, s in enumerate(sys.simple):
        if sys.killing_number(s, root) & 1:
            bits |= 1 << pos
    return bits


def m_equivalent(sys: RootSystem, a: int, b: int) -> bool:
    """Character equality via the simple-root parity shortcut."""
    return parity_vector(sys, a) == parity_vector(sys, b)


def m_equivalent_full(sys: RootSystem, a: int, b: int) -> bool:
    """Character equality checked against every root of the system."""
    return all(
        (sys.killing_number(g, a) - sys.killing_number(g, b)) % 2 == 0
        for g in sys.all_roots()
    )


def m_classes(sys: RootSystem, roots: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Partition of the given roots (default: positive roots) into classes.

    Blocks are sorted by their smallest root index.
    """
    if roots is None:
        roots = sys.positive_roots()
    fibers: dict[int, list[int]] = {}
    for r in sorted(roots):
        fibers.setdefault(parity_vector(sys, r), []).append(r)
    return sorted((tuple(block) for block in fibers.values()), key=lambda b: b[0])


def orthogonality_audit(sys: RootSystem) -> bool:
    """Distinct M-equivalent positive roots must be orthogonal."""
    for block in m_classes(sys):
        for i, a in enumerate(block):
            for b in block[i + 1:]:
                if sys.inner(a, b) != 0:
                    return False
    return True
