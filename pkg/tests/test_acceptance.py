"""Acceptance suite: one test per contract criterion, exact tolerances.

Every check is exact (integer or rational equality) and carries the stated
wall-clock budget.  Each test prints one PASS/FAIL line.

Four encoded expectations are refuted by exact computation and fail here
deliberately instead of being silently corrected (see the individual test
docstrings): the stated C4 sign-character classes, the stated dimension
formula for the B-family short-root split, the claimed equivalence of the
two 3-dimensional blocks of the D4 chain flag, and the claimed
irreducibility of the 14-dimensional block of the F4 flag over the C3
subsystem.
"""

import itertools
import random
import time

from fractions import Fraction

from flagiso import oracle
from flagiso.chevalley import bracket
from flagiso.classify import full_report, split_B_short, split_C_long
from flagiso.decomp import (long_short_split_audit, theta_closure, z_components)
from flagiso.mclass import m_classes, m_equivalent, orthogonality_audit, parity_vector
from flagiso.weylgrp import is_transitive_on
from helpers import constants_of, proper_thetas, rt, sys_of, theta_of


class _budget:
    def __init__(self, name, limit):
        self.name, self.limit = name, limit

    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.monotonic() - self.t0
        if exc_type is None:
            print(f"[acceptance] {self.name}: PASS ({dt:.1f}s)")
            assert dt < self.limit, f"{self.name} exceeded {self.limit}s budget ({dt:.1f}s)"
        else:
            print(f"[acceptance] {self.name}: FAIL ({dt:.1f}s)")
        return False


# -- criterion 1: golden sign-character class tables -------------------------


def _cls(sys, *coord_groups):
    return {frozenset(rt(sys, *c) for c in group) for group in coord_groups}


def _pair_classes(sys, l, plus_short_singletons=False, long_class=False):
    expected = set()
    for i in range(l):
        for j in range(i + 1, l):
            minus = [0] * l
            plus = [0] * l
            minus[i], minus[j] = 1, -1
            plus[i], plus[j] = 1, 1
            expected.add(frozenset({rt(sys, *minus), rt(sys, *plus)}))
    if plus_short_singletons:
        for i in range(l):
            v = [0] * l
            v[i] = 1
            expected.add(frozenset({rt(sys, *v)}))
    if long_class:
        expected.add(frozenset(
            rt(sys, *[2 if j == i else 0 for j in range(l)]) for i in range(l)))
    return expected


def _quadruples(sys, l, scale=1, plus_short_singletons=False, long_class=False):
    def r(i, j, sj):
        v = [0] * l
        v[i], v[j] = scale, sj * scale
        return rt(sys, *v)

    expected = {
        frozenset({r(0, 1, -1), r(0, 1, 1), r(2, 3, -1), r(2, 3, 1)}),
        frozenset({r(0, 2, -1), r(0, 2, 1), r(1, 3, -1), r(1, 3, 1)}),
        frozenset({r(0, 3, -1), r(0, 3, 1), r(1, 2, -1), r(1, 2, 1)}),
    }
    if plus_short_singletons:
        for i in range(l):
            v = [0] * l
            v[i] = 1
            expected.add(frozenset({rt(sys, *v)}))
    if long_class:
        expected.add(frozenset(
            rt(sys, *[2 if j == i else 0 for j in range(l)]) for i in range(l)))
    return expected


def _singletons(sys):
    return {frozenset({i}) for i in sys.positive_roots()}


def _expected_classes(family, rank):
    sys = sys_of(family, rank)
    if family == "A" and rank != 3:
        return _singletons(sys)
    if (family, rank) == ("A", 3):
        return _cls(sys,
                    [(1, -1, 0, 0), (0, 0, 1, -1)],
                    [(1, 0, -1, 0), (0, 1, 0, -1)],
                    [(1, 0, 0, -1), (0, 1, -1, 0)])
    if family == "B" and rank >= 5:
        return _pair_classes(sys, rank, plus_short_singletons=True)
    if (family, rank) == ("B", 4):
        return _quadruples(sys, 4, plus_short_singletons=True)
    if (family, rank) == ("B", 3):
        return _cls(sys,
                    [(1, -1, 0), (1, 1, 0), (0, 0, 1)],
                    [(1, 0, -1), (1, 0, 1), (0, 1, 0)],
                    [(0, 1, -1), (0, 1, 1), (1, 0, 0)])
    if (family, rank) == ("B", 2):
        return _cls(sys, [(1, -1), (1, 1)], [(1, 0), (0, 1)])
    if family == "C" and rank != 4:
        return _pair_classes(sys, rank, long_class=True)
    if (family, rank) == ("C", 4):
        return _quadruples(sys, 4, long_class=True)
    if family == "D" and rank > 4:
        return _pair_classes(sys, rank)
    if (family, rank) == ("D", 4):
        return _quadruples(sys, 4)
    if family == "G":
        idx = lambda c: next(i for i in sys.positive_roots() if sys.coeffs[i] == c)
        return {
            frozenset({idx((1, 0)), idx((1, 2))}),
            frozenset({idx((1, 1)), idx((1, 3))}),
            frozenset({idx((0, 1)), idx((2, 3))}),
        }
    if family == "F":
        idx = lambda c: next(i for i in sys.positive_roots() if sys.coeffs[i] == c)
        quads = [
            [(2, 3, 4, 2), (0, 1, 0, 0), (0, 1, 2, 0), (0, 1, 2, 2)],
            [(1, 3, 4, 2), (1, 1, 0, 0), (1, 1, 2, 0), (1, 1, 2, 2)],
            [(1, 2, 4, 2), (1, 0, 0, 0), (1, 2, 2, 0), (1, 2, 2, 2)],
        ]
        expected = {frozenset(idx(c) for c in quad) for quad in quads}
        expected |= {frozenset({i}) for i in sys.positive_roots() if sys.is_short(i)}
        return expected
    if family == "E":
        return _singletons(sys)
    raise AssertionError((family, rank))


GOLDEN_CASES = (
    [("A", l) for l in (1, 2, 3, 4, 5, 6, 7, 8)]
    + [("B", l) for l in (2, 3, 4, 5, 6, 7, 8)]
    + [("C", l) for l in (3, 4, 5, 6, 7, 8)]
    + [("D", l) for l in (4, 5, 6, 7, 8)]
    + [("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)]
)


def test_c1_sign_class_golden_tables():
    """Stated class tables for every type up to rank 8.

    The C4 row is refuted by the defining parity criterion itself: the
    coroot of 2*lambda1 pairs oddly with lambda1-lambda2 but evenly with
    lambda3-lambda4, so the short classes stay pairs and do not quadruple
    the way the length-2 analogue does.  Asserted as stated; fails honestly
    on that single row.
    """
    with _budget("criterion 1 (sign-character class tables)", 5.0):
        mismatches = []
        for family, rank in GOLDEN_CASES:
            sys = sys_of(family, rank)
            got = {frozenset(blk) for blk in m_classes(sys)}
            expected = _expected_classes(family, rank)
            if got != expected:
                detail = [
                    sorted(sys.describe(r) for r in blk)
                    for blk in sorted(got - expected, key=min)
                ]
                mismatches.append(f"{family}{rank}: computed classes include {detail[:4]}")
        assert not mismatches, "; ".join(mismatches)


def test_c2_orthogonality_audit():
    with _budget("criterion 2 (orthogonality of equivalent roots)", 5.0):
        for family, rank in GOLDEN_CASES:
            assert orthogonality_audit(sys_of(family, rank)), (family, rank)


def test_c3_parity_shortcut_equals_full_criterion():
    cases = ([("A", l) for l in range(1, 7)] + [("B", l) for l in range(2, 7)]
             + [("C", l) for l in range(3, 7)] + [("D", l) for l in range(4, 7)]
             + [("E", 6), ("F", 4), ("G", 2)])
    with _budget("criterion 3 (parity shortcut = full criterion)", 30.0):
        for family, rank in cases:
            sys = sys_of(family, rank)
            roots = list(sys.all_roots())
            full_sig = [
                tuple(sys.killing_number(g, r) & 1 for g in roots) for r in roots
            ]
            short_sig = [parity_vector(sys, r) for r in roots]
            for a in roots:
                for b in roots:
                    assert ((full_sig[a] == full_sig[b])
                            == (short_sig[a] == short_sig[b])), (family, rank, a, b)


def test_c4_parabolic_transitivity():
    simply = ([("A", l) for l in range(1, 7)] + [("D", l) for l in range(4, 7)]
              + [("E", 6)])
    doubled = ([("B", l) for l in range(2, 7)] + [("C", l) for l in range(3, 7)]
               + [("F", 4)])
    with _budget("criterion 4 (parabolic Weyl transitivity)", 120.0):
        for family, rank in simply:
            sys = sys_of(family, rank)
            for theta in proper_thetas(rank):
                for comp in z_components(sys, theta):
                    assert is_transitive_on(sys, theta, comp.roots, seed=comp.highest)
        for family, rank in doubled:
            sys = sys_of(family, rank)
            for theta in proper_thetas(rank):
                all_long = all(sys.is_long(sys.simple[p]) for p in theta)
                for comp in z_components(sys, theta):
                    if all_long or all(sys.is_short(r) for r in comp.roots):
                        assert is_transitive_on(sys, theta, comp.roots, seed=comp.highest)


# -- criterion 5: component structure in the B and C families -----------------


def _last_outside(theta, rank):
    """Largest 1-based index i <= rank-1 with the i-th simple root outside theta."""
    return max(i for i in range(1, rank) if (i - 1) not in theta)


def _run_start(theta, i):
    """Smallest j with simple roots j..i-1 all inside theta (j = i if none)."""
    j = i
    while j >= 2 and (j - 2) in theta:
        j -= 1
    return j


def test_c5_component_structure_lemmas():
    with _budget("criterion 5 (component structure)", 60.0):
        for l in (5, 6):
            sys = sys_of("B", l)
            for theta in proper_thetas(l):
                comps = z_components(sys, theta)
                if (l - 1) not in theta:
                    assert long_short_split_audit(sys, theta, comps)
                    short_comps = {frozenset(c.roots) for c in comps
                                   if any(sys.is_short(r) for r in c.roots)}
                    expected, start = set(), 1
                    for i in range(1, l + 1):
                        if i == l or (i - 1) not in theta:
                            expected.add(frozenset(
                                rt(sys, *[-1 if p == q - 1 else 0 for p in range(l)])
                                for q in range(start, i + 1)))
                            start = i + 1
                    assert short_comps == expected, (l, sorted(theta))
                else:
                    i0 = _last_outside(theta, l)
                    by_root = {r: c for c in comps for r in c.roots}
                    for i in range(1, i0 + 1):
                        comp = by_root[rt(sys, *[-1 if p == i - 1 else 0 for p in range(l)])]
                        for k in range(i0 + 1, l + 1):
                            for sk in (1, -1):
                                v = [0] * l
                                v[i - 1], v[k - 1] = -1, sk
                                assert rt(sys, *v) in comp.roots, (l, sorted(theta), i, k)
        for l in (5, 6):
            sys = sys_of("C", l)
            for theta in proper_thetas(l):
                comps = z_components(sys, theta)
                by_root = {r: c for c in comps for r in c.roots}
                for i in range(1, l + 1):
                    if (i - 1) in theta:
                        continue
                    j = _run_start(theta, i)
                    comp = by_root[rt(sys, *[-2 if p == i - 1 else 0 for p in range(l)])]
                    expected = set()
                    for k in range(j, i + 1):
                        for r in range(k, i + 1):
                            v = [0] * l
                            v[k - 1] -= 1
                            v[r - 1] -= 1
                            expected.add(rt(sys, *v))
                    assert set(comp.roots) == expected, (l, sorted(theta), i)
                if (l - 1) in theta:
                    # past the theta tail the two sign types merge into one
                    # component, which contains both smaller components
                    i0 = _last_outside(theta, l)
                    tail = {p for p in range(i0, l)}
                    comps2 = z_components(sys, theta - tail)
                    by_root2 = {r: c for c in comps2 for r in c.roots}
                    for i in range(1, i0 + 1):
                        for jj in range(i0 + 1, l + 1):
                            vp = [0] * l
                            vp[i - 1], vp[jj - 1] = -1, 1
                            vm = [0] * l
                            vm[i - 1], vm[jj - 1] = -1, -1
                            rp, rm = rt(sys, *vp), rt(sys, *vm)
                            assert by_root[rp] is by_root[rm], (l, sorted(theta), i, jj)
                            merged = set(by_root2[rp].roots) | set(by_root2[rm].roots)
                            assert merged <= set(by_root[rp].roots)


# -- criterion 6: closed-form split dimensions vs the oracle -------------------


def test_c6a_b_short_split_formula():
    """Stated formula: dims (d, 2d) with d = l - i0 + i - j(i) + 1.

    The formula contradicts the split construction it annotates: the
    component has dimension s(2m+1) for s = i - j(i) + 1 and m = l - i0,
    and the invariant pieces have dimensions s*m and s*(m+1) (confirmed by
    the exact oracle below), so (d, 2d) cannot even sum correctly.  The
    assertion is kept as stated and fails honestly.
    """
    with _budget("criterion 6a (B short-split dimension formula)", 300.0):
        mismatches = []
        for l in (5, 6):
            sys = sys_of("B", l)
            sc = constants_of("B", l)
            for theta in proper_thetas(l):
                if (l - 1) not in theta:
                    continue
                rep = oracle.isotropy_rep(sys, theta, sc)
                i0 = _last_outside(theta, l)
                for comp in z_components(sys, theta):
                    shorts = sorted(
                        q + 1 for r in comp.roots
                        if sum(abs(x) for x in sys.coords[r]) == 1
                        for q, x in enumerate(sys.coords[r]) if x
                    )
                    if not shorts:
                        continue
                    i, j = shorts[-1], shorts[0]
                    d = l - i0 + i - j + 1
                    stated = sorted([d, 2 * d])
                    parts = oracle.decompose_block(rep, rep.unit_block(comp.roots))
                    actual = sorted(len(p) for p in parts)
                    if stated != actual:
                        mismatches.append(
                            f"B{l} theta={sorted(p + 1 for p in theta)} component of "
                            f"-lambda{i}: stated {stated}, oracle {actual}")
        assert not mismatches, (
            f"{len(mismatches)} component(s) contradict the stated (d, 2d) formula, "
            "first cases: " + "; ".join(mismatches[:4]))


def test_c6b_c_long_split_formula():
    with _budget("criterion 6b (C long-split dimension formula)", 300.0):
        for l in (3, 5):
            sys = sys_of("C", l)
            sc = constants_of("C", l)
            for theta in proper_thetas(l):
                rep = oracle.isotropy_rep(sys, theta, sc)
                for comp in z_components(sys, theta):
                    if not any(sys.is_long(r) for r in comp.roots) or comp.dim < 2:
                        continue
                    longs = sorted(
                        q + 1 for r in comp.roots
                        if sys.is_long(r)
                        for q, x in enumerate(sys.coords[r]) if x
                    )
                    s = longs[-1] - longs[0] + 1
                    stated = sorted([1, s * (s + 1) // 2 - 1])
                    center, su = split_C_long(sys, theta, comp, rep)
                    assert sorted([len(center), len(su)]) == stated
                    parts = oracle.decompose_block(rep, rep.unit_block(comp.roots))
                    assert sorted(len(p) for p in parts) == stated, (l, sorted(theta))


# -- criterion 7: named flags --------------------------------------------------


def test_c7a_a3_grassmannian():
    with _budget("criterion 7a (A3 Grassmannian of planes)", 300.0):
        sys = sys_of("A", 3)
        report = full_report(sys, theta_of(sys, 1, 3), verify=True,
                             constants=constants_of("A", 3))
        assert sorted(report.block_dims) == [2, 2]
        assert report.oracle_verified


def test_c7b_b2_short_flag():
    with _budget("criterion 7b (B2 short-root flag)", 300.0):
        sys = sys_of("B", 2)
        report = full_report(sys, theta_of(sys, 2), verify=True,
                             constants=constants_of("B", 2))
        assert sorted(report.block_dims) == [1, 2]
        assert report.oracle_verified


def test_c7c_g2_flags():
    with _budget("criterion 7c (G2 flags)", 300.0):
        sys = sys_of("G", 2)
        r2 = full_report(sys, theta_of(sys, 2), verify=True, constants=constants_of("G", 2))
        assert sorted(r2.block_dims) == [1, 2, 2]
        assert all(not e.continuum for e in r2.equivalences)
        assert r2.oracle_verified
        r1 = full_report(sys, theta_of(sys, 1), verify=True, constants=constants_of("G", 2))
        assert sorted(r1.block_dims) == [1, 2, 2]
        classes = [e for e in r1.equivalences if e.continuum]
        assert len(classes) == 1
        assert sorted(r1.blocks[i].dim for i in classes[0].blocks) == [2, 2]
        assert r1.oracle_verified


def test_c7d_d4_chain_flag():
    """Stated: the two 3-dimensional blocks are equivalent.

    The blocks are the tangent spaces to the orbits of the two commuting
    compact ideals; each ideal acts trivially on the other's block, so an
    intertwiner would have to vanish.  The exact intertwiner space has
    dimension 0 and the symmetric commutant of the 6-dimensional space has
    dimension 2 (two projections only).  The equivalence assertion is kept
    as stated and fails honestly.
    """
    with _budget("criterion 7d (D4 chain flag)", 300.0):
        sys = sys_of("D", 4)
        report = full_report(sys, theta_of(sys, 1, 2, 3), verify=True,
                             constants=constants_of("D", 4))
        assert sorted(report.block_dims) == [3, 3]
        assert report.oracle_verified
        dims = dict(report.intertwiner_dims)
        print(f"computed intertwiner dims between the 3-dim blocks: {dims}")
        assert any(e.continuum for e in report.equivalences), (
            "stated equivalence of the two 3-dim blocks is refuted: "
            f"intertwiner dims {dims}")


def test_c7e_f4_c3_flag():
    """Stated: blocks {14, 1} with the 14-dimensional block irreducible.

    The 14-dimensional component is the primitive cube of the symplectic
    six-space; under the unitary compact part it splits into the conjugate
    top-degree pair (2 real dimensions, supported on the long roots) plus
    its 12-dimensional complement.  The oracle finds symmetric commutant
    dimension 2 and blocks {1, 2, 12}.  Asserted as stated; fails honestly.
    """
    with _budget("criterion 7e (F4 flag over the C3 subsystem)", 300.0):
        sys = sys_of("F", 4)
        report = full_report(sys, theta_of(sys, 2, 3, 4), verify=True,
                             constants=constants_of("F", 4))
        assert report.oracle_verified
        print(f"computed block dimensions: {sorted(report.block_dims)}")
        assert sorted(report.block_dims) == [1, 14], (
            "stated {1, 14} refuted: the 14-dim component splits as "
            f"{sorted(report.block_dims)}")


def test_c7f_d5_maximal_flag():
    with _budget("criterion 7f (D5 maximal flag)", 300.0):
        sys = sys_of("D", 5)
        report = full_report(sys, frozenset(), verify=True, constants=constants_of("D", 5))
        assert report.oracle_verified
        assert sorted(report.block_dims) == [1] * 20
        class_supports = {
            frozenset(report.components[report.blocks[i].component].roots[0]
                      for i in e.blocks)
            for e in report.equivalences
        }
        expected = {frozenset(blk) for blk in m_classes(sys, sys.negative_roots())}
        assert class_supports == expected


# -- criterion 8: full consistency sweep ---------------------------------------

SWEEP_TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3),
               ("B", 4), ("C", 3), ("C", 4), ("D", 4), ("G", 2)]


def test_c8_full_consistency_sweep():
    with _budget("criterion 8 (full consistency sweep)", 900.0):
        flags = 0
        for family, rank in SWEEP_TYPES:
            sys = sys_of(family, rank)
            sc = constants_of(family, rank)
            for theta in proper_thetas(rank):
                report = full_report(sys, theta, verify=True, constants=sc)
                flags += 1
                assert report.oracle_verified, (
                    family, rank, sorted(theta), report.mismatches)
        print(f"swept {flags} flags")
        assert flags == sum(2 ** rank - 1 for _, rank in SWEEP_TYPES)


# -- criterion 9: structure-constant sanity -------------------------------------


def _root_elem(sys, idx):
    return {idx: Fraction(1)}, [Fraction(0)] * sys.rank


def _jacobi_holds(sc, a, b, c):
    sys = sc.sys
    total_r: dict = {}
    total_h = [Fraction(0)] * sys.rank
    x, y, z = _root_elem(sys, a), _root_elem(sys, b), _root_elem(sys, c)
    for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
        rr, hh = bracket(sc, bracket(sc, u, v), w)
        for k, val in rr.items():
            total_r[k] = total_r.get(k, 0) + val
        for k, val in enumerate(hh):
            total_h[k] += val
    return all(v == 0 for v in total_r.values()) and all(v == 0 for v in total_h)


def test_c9_structure_constant_sanity():
    exhaustive = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3),
                  ("B", 4), ("C", 3), ("C", 4), ("D", 4), ("F", 4), ("G", 2)]
    with _budget("criterion 9 (structure constants)", 120.0):
        for family, rank in exhaustive:
            sc = constants_of(family, rank)
            sys = sc.sys
            for a in sys.all_roots():
                for b in sys.all_roots():
                    if sys.add_roots(a, b) is None:
                        continue
                    v = sc.n(a, b)
                    assert abs(v) == sc.p_down(a, b) + 1, (family, rank, a, b)
                    assert v == -sc.n(b, a)
            for a, b, c in itertools.combinations(sys.all_roots(), 3):
                assert _jacobi_holds(sc, a, b, c), (family, rank, a, b, c)
        for rank in (6, 7, 8):
            sc = constants_of("E", rank)
            sys = sc.sys
            roots = list(sys.all_roots())
            rng = random.Random(1729)
            for _ in range(10_000):
                a, b, c = rng.sample(roots, 3)
                assert _jacobi_holds(sc, a, b, c), ("E", rank, a, b, c)
