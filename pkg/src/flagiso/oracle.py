"""Ground-truth verification of the isotropy action by exact rational algebra.

The compact isotropy group of a flag of a split real form is generated by
the sign-character group (one diagonal involution per simple root) together
with the one-parameter subgroups of E_a - E_-a for a in the positive part
of the theta subsystem.  This module builds those generators as exact
integer matrices on the tangent-space root basis and decides invariance,
irreducibility and equivalence by linear algebra over the rationals:

* a block is irreducible iff its commutant of symmetric operators (w.r.t.
  the invariant diagonal form) is one-dimensional, and
* two irreducible blocks are equivalent iff a nonzero intertwiner exists.

`decompose` splits the whole representation into minimal invariant
subspaces by factoring minimal polynomials of commutant elements; it never
uses floating point and retries deterministically chosen elements, so runs
are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import sympy

from . import linalg
from .chevalley import StructureConstants
from .decomp import theta_closure, ntheta_minus, z_components
from .mclass import parity_vector
from .rootsys import RootSystem

# Deterministic weight sequences for generic commutant elements.
_WEIGHTS_MAIN = lambda k: k * k + k + 1      # noqa: E731  1, 3, 7, 13, 21, ...
_WEIGHTS_RETRY = lambda k: (k + 1) ** 2 + 1  # noqa: E731  2, 5, 10, 17, 26, ...


@dataclass
class IsotropyRep:
    """Tangent-space action of the compact isotropy group, in the root basis."""

    sys: RootSystem
    theta: frozenset
    basis: tuple[int, ...]
    k_roots: tuple[int, ...]
    k_generators: list[list[list[int]]]
    m_generators: list[tuple[int, ...]]
    weights: tuple[int, ...]
    chars: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def unit_block(self, roots) -> list[tuple[int, ...]]:
        """Coordinate block spanned by the given tangent-space roots."""
        pos = {r: i for i, r in enumerate(self.basis)}
        return [
            tuple(1 if i == pos[r] else 0 for i in range(self.dim))
            for r in sorted(roots)
        ]


def isotropy_rep(sys: RootSystem, theta: frozenset, constants: StructureConstants | None = None) -> IsotropyRep:
    """Build the generator matrices; rejects theta = all simple roots."""
    z_components(sys, theta)  # validates theta, raises ThetaIsFull
    sc = constants if constants is not None else StructureConstants(sys)
    basis = ntheta_minus(sys, theta)
    pos_of = {r: i for i, r in enumerate(basis)}
    closure = theta_closure(sys, theta)
    k_roots = tuple(sorted(r for r in closure if sys.is_positive(r)))

    k_gens = []
    for a in k_roots:
        na = sys.neg(a)
        mat = [[0] * len(basis) for _ in basis]
        for col, b in enumerate(basis):
            s_up = sys.add_roots(a, b)
            if s_up is not None:
                assert s_up in pos_of, "bracket image must stay in the tangent space"
                mat[pos_of[s_up]][col] += sc.n(a, b)
            s_dn = sys.add_roots(na, b)
            if s_dn is not None:
                assert s_dn in pos_of
                mat[pos_of[s_dn]][col] -= sc.n(na, b)
        k_gens.append(mat)

    m_gens = [
        tuple(-1 if sys.killing_number(s, b) & 1 else 1 for b in basis)
        for s in sys.simple
    ]
    level = lcm(sys.short_norm, sys.long_norm)
    weights = tuple(level // sys.norm(b) for b in basis)
    chars = tuple(parity_vector(sys, b) for b in basis)
    return IsotropyRep(sys, theta, basis, k_roots, k_gens, m_gens, weights, chars)


def chevalley_constants(sys: RootSystem) -> StructureConstants:
    return StructureConstants(sys)


# -- invariance ------------------------------------------------------------


def invariant_check(rep: IsotropyRep, vectors) -> bool:
    """Whether span(vectors) is preserved by every generator, exactly."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return True
    images = []
    for g in rep.k_generators:
        images.extend(linalg.matvec(g, v) for v in vecs)
    for d in rep.m_generators:
        images.extend([s * x for s, x in zip(d, v)] for v in vecs)
    return linalg.solve_many(vecs, images) is not None


# -- commutants and intertwiners --------------------------------------------


def _adapted_basis(rep: IsotropyRep, block) -> tuple[list[tuple[int, ...]], list[int]]:
    """Rewrite a block basis so each vector has a single sign character.

    The character decomposition succeeds exactly when the block span is
    stable under the sign group, which every invariant block is.
    """
    vecs = [list(v) for v in block]
    present = sorted({rep.chars[i] for v in vecs for i, x in enumerate(v) if x != 0})
    adapted: list[tuple[int, ...]] = []
    chars: list[int] = []
    for ch in present:
        proj = [
            [x if rep.chars[i] == ch else 0 for i, x in enumerate(v)]
            for v in vecs
        ]
        for row in linalg.span_basis(proj):
            adapted.append(row)
            chars.append(ch)
    assert len(adapted) == len(vecs), "block is not invariant under the sign characters"
    return adapted, chars


def _restrictions(rep: IsotropyRep, basis) -> list[list[list[Fraction]]]:
    out = []
    for g in rep.k_generators:
        r = linalg.restrict_action(g, basis)
        assert r is not None, "block is not invariant under the isotropy algebra"
        out.append(r)
    return out


def _weighted_gram(rep: IsotropyRep, basis) -> list[list[Fraction]]:
    w = rep.weights
    return [
        [sum(w[p] * u[p] * v[p] for p in range(rep.dim)) for v in basis]
        for u in basis
    ]


def _operator_space(rep, adapted_a, chars_a, adapted_b=None, chars_b=None, symmetric=False):
    """Basis of maps T: span(A) -> span(B) commuting with all generators.

    Sign characters are imposed structurally (T may only connect equal
    characters), the k-generators and optional symmetry by nullspace of an
    integer constraint system.  Matrices come back in adapted coordinates.
    """
    same = adapted_b is None
    ra = _restrictions(rep, adapted_a)
    rb = ra if same else _restrictions(rep, adapted_b)
    if same:
        adapted_b, chars_b = adapted_a, chars_a
    da, db = len(adapted_a), len(adapted_b)
    unknowns = [(i, j) for i in range(db) for j in range(da) if chars_b[i] == chars_a[j]]
    if not unknowns:
        return []
    rows: set[tuple[int, ...]] = set()
    for RA, RB in zip(ra, rb):
        for r in range(db):
            for c in range(da):
                coeffs = [Fraction(0)] * len(unknowns)
                nz = False
                for k, (i, j) in enumerate(unknowns):
                    v = Fraction(0)
                    if j == c:
                        v += RB[r][i]
                    if i == r:
                        v -= RA[j][c]
                    if v:
                        coeffs[k] = v
                        nz = True
                if nz:
                    rows.add(linalg.normalize_row(coeffs))
    if symmetric:
        s = _weighted_gram(rep, adapted_a)
        for r in range(da):
            for c in range(da):
                coeffs = [Fraction(0)] * len(unknowns)
                nz = False
                for k, (i, j) in enumerate(unknowns):
                    v = Fraction(0)
                    if j == r:
                        v += s[i][c]
                    if j == c:
                        v -= s[r][i]
                    if v:
                        coeffs[k] = v
                        nz = True
                if nz:
                    rows.add(linalg.normalize_row(coeffs))
    sols = linalg.nullspace(sorted(rows), len(unknowns))
    mats = []
    for sol in sols:
        t = [[0] * da for _ in range(db)]
        for val, (i, j) in zip(sol, unknowns):
            t[i][j] = val
        mats.append(t)
    return mats


def symmetric_commutant(rep: IsotropyRep, block):
    """(basis of symmetric commuting operators, adapted basis, characters)."""
    adapted, chars = _adapted_basis(rep, block)
    mats = _operator_space(rep, adapted, chars, symmetric=True)
    return mats, adapted, chars


def symmetric_commutant_dim(rep: IsotropyRep, block) -> int:
    """Dimension of the symmetric commutant; 1 iff the block is irreducible."""
    return len(symmetric_commutant(rep, block)[0])


def intertwiners(rep: IsotropyRep, block_a, block_b):
    """(basis of intertwiners A -> B, adapted A, adapted B), adapted coords."""
    adapted_a, chars_a = _adapted_basis(rep, block_a)
    adapted_b, chars_b = _adapted_basis(rep, block_b)
    mats = _operator_space(rep, adapted_a, chars_a, adapted_b, chars_b)
    return mats, adapted_a, adapted_b


def intertwiner_dim(rep: IsotropyRep, block_a, block_b) -> int:
    """For irreducible blocks: positive iff the representations are equivalent."""
    return len(intertwiners(rep, block_a, block_b)[0])


def graph_vectors(adapted_a, adapted_b, t_mat, x, y):
    """Basis of the graph subspace {x X + y T X : X in span(A)}."""
    out = []
    for j, va in enumerate(adapted_a):
        img = [Fraction(0)] * len(va)
        for i, vb in enumerate(adapted_b):
            if t_mat[i][j]:
                for p, c in enumerate(vb):
                    img[p] += t_mat[i][j] * c
        out.append(tuple(linalg.scale_to_int([x * a + y * b for a, b in zip(va, img)])))
    return out


# -- full decomposition ------------------------------------------------------


def _minimal_polynomial(t_mat) -> list[Fraction]:
    """Monic minimal polynomial, coefficients by ascending degree."""
    d = len(t_mat)
    reduced: list[tuple[list[Fraction], list[Fraction], int]] = []  # (row, combo, pivot)
    power = linalg.identity(d)
    k = 0
    while True:
        vec = [Fraction(x) for row in power for x in row]
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        for row, rcombo, piv in reduced:
            f = vec[piv]
            if f:
                vec = [a - f * b for a, b in zip(vec, row)]
                for i, c in enumerate(rcombo):
                    combo[i] -= f * c
        piv = next((i for i, x in enumerate(vec) if x != 0), None)
        if piv is None:
            return combo
        inv = vec[piv]
        vec = [x / inv for x in vec]
        combo = [c / inv for c in combo] + [Fraction(0)] * 0
        reduced.append((vec, combo, piv))
        power = linalg.matmul(power, t_mat)
        k += 1
        assert k <= d, "minimal polynomial degree exceeded the dimension"


def _factor_min_poly(coeffs) -> list[tuple[list[int], int]]:
    """Irreducible factors over Q as (ascending int coeffs, multiplicity)."""
    mult = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * mult) for c in coeffs]
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(ints)), x)
    _, factors = poly.factor_list()
    out = []
    for f, m in factors:
        fc = [int(c) for c in reversed(f.all_coeffs())]
        out.append((fc, int(m)))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return out


def _poly_at(coeffs, t_mat):
    d = len(t_mat)
    acc = [[Fraction(coeffs[-1]) if i == j else Fraction(0) for j in range(d)] for i in range(d)]
    for c in reversed(coeffs[:-1]):
        acc = linalg.matmul(acc, t_mat)
        for i in range(d):
            acc[i][i] += c
    return acc


def _lift(adapted, coeff_vecs):
    """Map block-coordinate vectors to primitive integer ambient vectors."""
    n = len(adapted[0])
    out = []
    for cv in coeff_vecs:
        v = [Fraction(0)] * n
        for c, base in zip(cv, adapted):
            if c:
                for p, b in enumerate(base):
                    v[p] += c * b
        out.append(tuple(linalg.scale_to_int(v)))
    return out


def _orthocomplement(rep, adapted, sub_coords):
    """Within span(adapted): vectors orthogonal (invariant form) to the subspace."""
    gram = _weighted_gram(rep, adapted)
    rows = [linalg.matvec(gram, u) for u in sub_coords]
    return linalg.nullspace(rows, len(adapted))


def _try_split(rep, adapted, t_mat):
    """Split span(adapted) along the primary subspaces of a commutant element."""
    coeffs = _minimal_polynomial(t_mat)
    factors = _factor_min_poly(coeffs)
    if len(factors) >= 2:
        parts = []
        total = 0
        for fc, m in factors:
            fm = fc
            mat = _poly_at(fm, t_mat)
            for _ in range(m - 1):
                mat = linalg.matmul(mat, _poly_at(fm, t_mat))
            kern = linalg.nullspace(mat, len(adapted))
            assert kern, "primary component of the minimal polynomial is trivial"
            total += len(kern)
            parts.append(_lift(adapted, kern))
        assert total == len(adapted)
        return parts
    fc, m = factors[0]
    if m >= 2:
        kern = linalg.nullspace(_poly_at(fc, t_mat), len(adapted))
        if 0 < len(kern) < len(adapted):
            comp = _orthocomplement(rep, adapted, kern)
            assert len(kern) + len(comp) == len(adapted)
            return [_lift(adapted, kern), _lift(adapted, comp)]
    return None


def _candidates(mats):
    d = len(mats)
    for seq in (_WEIGHTS_MAIN, _WEIGHTS_RETRY):
        yield [
            [sum(seq(k) * mats[k][i][j] for k in range(d)) for j in range(len(mats[0][0]))]
            for i in range(len(mats[0]))
        ]
    for m in mats:
        yield m
    for a in range(d):
        for b in range(a + 1, d):
            yield [
                [mats[a][i][j] + mats[b][i][j] for j in range(len(mats[0][0]))]
                for i in range(len(mats[0]))
            ]


def decompose_block(rep: IsotropyRep, block) -> list[list[tuple[int, ...]]]:
    """Minimal invariant subspaces of an invariant block.

    Output blocks are invariant, pairwise orthogonal for the invariant
    form, exhaust the input block, and each has symmetric commutant
    dimension 1.  Deterministic: splitting elements are tried in a fixed
    order.
    """
    out: list[list[tuple[int, ...]]] = []

    def split(blk):
        mats, adapted, _chars = symmetric_commutant(rep, blk)
        assert mats, "commutant of a nonzero block contains the identity"
        if len(mats) == 1:
            out.append([tuple(v) for v in adapted])
            return
        for cand in _candidates(mats):
            parts = _try_split(rep, adapted, cand)
            if parts is not None:
                for part in parts:
                    split(part)
                return
        raise ArithmeticError(
            "reducible block admits no rational splitting; its commutant is "
            "a nontrivial number field"
        )

    if block:
        split([tuple(v) for v in block])
    return out


def decompose(rep: IsotropyRep) -> list[list[tuple[int, ...]]]:
    """Minimal invariant subspaces of the whole representation."""
    return decompose_block(rep, rep.unit_block(rep.basis))


# -- reporting ---------------------------------------------------------------


@dataclass
class CommutantReport:
    """Oracle summary for a list of blocks of one representation."""

    block_dims: list[int]
    symmetric_commutant_dims: list[int]
    intertwiner_dims: dict[tuple[int, int], int]


def commutant_report(rep: IsotropyRep, blocks) -> CommutantReport:
    dims = [len(b) for b in blocks]
    sym = [symmetric_commutant_dim(rep, b) for b in blocks]
    inter = {}
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            inter[(i, j)] = intertwiner_dim(rep, blocks[i], blocks[j])
    return CommutantReport(dims, sym, inter)
