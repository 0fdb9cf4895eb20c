"""Compact-isotropy classification of flag tangent spaces.

Each Levi-irreducible component is handled by the first applicable route:

* sufficient criterion: the parabolic Weyl group acts transitively on the
  component and no two of its roots share a sign character; this certifies
  irreducibility and never certifies the converse,
* closed-form splits for the two serial-family cases where the component
  is known to break: B with the short simple root in theta (short-root
  components) and C components containing long roots,
* the exact oracle, which is mandatory for the small-rank types whose
  sign-character classes are larger than generic, and is the fallback for
  every inconclusive component.

Equivalence between blocks is decided by the character-separation test
(a sufficient condition for inequivalence), otherwise by the dimension of
the exact intertwiner space.  Reports are deterministic and serialize to a
versioned JSON document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import linalg, oracle
from .chevalley import StructureConstants
from .decomp import Component, z_components
from .mclass import parity_vector
from .rootsys import RootSystem, root_system
from .weylgrp import is_transitive_on

SCHEMA = "flagiso-report/1"

FULL_COMPONENT = "FullComponent"
B_SHORT_1 = "BShortSplit1"
B_SHORT_2 = "BShortSplit2"
C_CENTER = "CCenter"
C_SU = "CSuPart"
ORACLE_DERIVED = "OracleDerived"

IRREDUCIBLE = "irreducible"
EQUIVALENT = "equivalent"
UNDECIDED = "undecided"

GRAPH_PARAMS = ((1, 0), (0, 1), (1, 1), (2, -3))

# Types whose sign-character classes are larger than in the generic-rank
# tables; their flags are classified purely by the oracle.
_ORACLE_ONLY_TYPES = {("A", 3), ("B", 2), ("B", 3), ("B", 4), ("C", 4), ("D", 4), ("G", 2)}


@dataclass(frozen=True)
class IrreducibleBlock:
    """One claimed irreducible invariant subspace of the tangent space."""

    kind: str
    component: int
    vectors: tuple[tuple[int, ...], ...]
    basis_note: str
    certificate: str

    @property
    def dim(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class EquivalenceClass:
    blocks: tuple[int, ...]
    continuum: bool
    family_note: str


@dataclass
class ClassificationReport:
    family: str
    rank: int
    theta: tuple[int, ...]  # 1-based simple-root indices
    components: tuple[Component, ...]
    blocks: tuple[IrreducibleBlock, ...]
    equivalences: tuple[EquivalenceClass, ...]
    intertwiner_dims: dict[tuple[int, int], int]
    notes: tuple[str, ...]
    oracle_verified: bool | None = None
    oracle_commutant_dims: tuple[int, ...] | None = None
    oracle_decompose_dims: tuple[int, ...] | None = None
    mismatches: tuple[str, ...] = ()

    @property
    def block_dims(self) -> tuple[int, ...]:
        return tuple(b.dim for b in self.blocks)


# -- per-component decisions --------------------------------------------------


def irreducible_by_criterion(sys: RootSystem, theta: frozenset, comp: Component) -> str:
    """Sufficient irreducibility test; never returns a negative verdict."""
    chars = [parity_vector(sys, r) for r in comp.roots]
    if len(set(chars)) != len(chars):
        return UNDECIDED
    if not is_transitive_on(sys, theta, comp.roots, seed=comp.highest):
        return UNDECIDED
    return IRREDUCIBLE


def _oracle_mandatory(sys: RootSystem, theta: frozenset) -> bool:
    key = (sys.dynkin.family, sys.dynkin.rank)
    if key in _ORACLE_ONLY_TYPES:
        return True
    return key == ("F", 4) and bool(theta)


def block_support(rep: oracle.IsotropyRep, vectors) -> tuple[int, ...]:
    """Tangent-space roots hit by some basis vector of the block."""
    return tuple(
        sorted({rep.basis[i] for v in vectors for i, x in enumerate(v) if x})
    )


def _render_vector(sys: RootSystem, rep: oracle.IsotropyRep, vec) -> str:
    parts = []
    for i, x in enumerate(vec):
        if not x:
            continue
        sign = "-" if x < 0 else ("+" if parts else "")
        mag = "" if abs(x) == 1 else str(abs(x))
        parts.append(f"{sign}{mag}X({sys.describe(rep.basis[i])})")
    return "".join(parts)


def _note_from_vectors(sys, rep, vectors, cap=4) -> str:
    shown = [_render_vector(sys, rep, v) for v in vectors[:cap]]
    if len(vectors) > cap:
        shown.append("...")
    return "; ".join(shown)


def split_B_short(sys: RootSystem, theta: frozenset, comp: Component, rep: oracle.IsotropyRep):
    """Split a short-root component of a B flag with the short simple root in theta.

    Each 3-root chain g(-lj+lk) + g(-lj) + g(-lj-lk), k beyond the theta
    tail, is an adjoint sl(2) triple for the subalgebra attached to lk; the
    rotation generator of that sl(2) has a one-dimensional kernel on the
    chain and a two-dimensional image.  Kernels assemble the first block,
    images the second.  Both are invariant; for rank >= 5 they are the
    irreducible pieces of the component.
    """
    l = sys.rank
    assert sys.dynkin.family == "B" and (l - 1) in theta
    shorts = sorted(
        i + 1
        for r in comp.roots
        if sum(abs(x) for x in sys.coords[r]) == 1
        for i, x in enumerate(sys.coords[r])
        if x
    )
    assert shorts and shorts == list(range(shorts[0], shorts[-1] + 1))
    tail = _theta_run_containing(sys, theta, l - 1)
    ks = list(range(min(tail) + 1, l + 1))  # lambda indices inside the theta tail
    pos_of = {r: i for i, r in enumerate(rep.basis)}
    kroot_pos = {r: i for i, r in enumerate(rep.k_roots)}

    kernels, images = [], []
    for j in shorts:
        for k in ks:
            triple = []
            for coords in (_pm_coords(l, -j, k), _pm_coords(l, -j, None), _pm_coords(l, -j, -k)):
                r = sys.root_index(coords)
                assert r is not None and r in pos_of
                triple.append(pos_of[r])
            gen = rep.k_generators[kroot_pos[sys.root_index(_pm_coords(l, k, None))]]
            sub = [[gen[a][b] for b in triple] for a in triple]
            kern = linalg.nullspace(sub, 3)
            assert len(kern) == 1
            kernels.append(_embed(rep.dim, triple, kern[0]))
            img_cols = linalg.span_basis([[row[c] for row in sub] for c in range(3)])
            assert len(img_cols) == 2
            images.extend(_embed(rep.dim, triple, v) for v in img_cols)

    w1 = [tuple(v) for v in linalg.span_basis(kernels)]
    w2 = [tuple(v) for v in linalg.span_basis(images)]
    assert len(w1) + len(w2) == comp.dim
    return w1, w2


def _pm_coords(l: int, j: int, k: int | None) -> tuple[int, ...]:
    """Coordinates of sgn(j) lambda_|j| (+ sgn(k) lambda_|k|)."""
    v = [0] * l
    v[abs(j) - 1] += 1 if j > 0 else -1
    if k is not None:
        v[abs(k) - 1] += 1 if k > 0 else -1
    return tuple(v)


def _embed(dim: int, positions, vec) -> tuple:
    out = [0] * dim
    for p, x in zip(positions, vec):
        out[p] = x
    return tuple(out)


def _theta_run_containing(sys: RootSystem, theta: frozenset, position: int) -> frozenset:
    """Connected component of theta (Dynkin-graph sense) containing a position."""
    assert position in theta
    block = {position}
    grew = True
    while grew:
        grew = False
        for p in theta:
            if p in block:
                continue
            if any(sys.inner(sys.simple[p], sys.simple[q]) != 0 for q in block):
                block.add(p)
                grew = True
    return frozenset(block)


def split_C_long(sys: RootSystem, theta: frozenset, comp: Component, rep: oracle.IsotropyRep):
    """Split a long-root component of a C flag into its fixed line and complement.

    The component carries the isotropy action of a unitary-over-orthogonal
    symmetric pair: the group-fixed line (the trace direction) is cut out
    as the joint kernel of the compact generators, and its orthogonal
    complement for the invariant form is the irreducible remainder.
    """
    assert sys.dynkin.family == "C" and comp.dim >= 2
    pos_of = {r: i for i, r in enumerate(rep.basis)}
    sub = [pos_of[r] for r in comp.roots]
    rows = []
    for gen in rep.k_generators:
        for a in sub:
            rows.append([gen[a][b] for b in sub])
    kern = linalg.nullspace(rows, len(sub))
    assert len(kern) == 1, "long-root component must have a one-dimensional fixed line"
    center = _embed(rep.dim, sub, kern[0])
    w = rep.weights
    ortho_row = [w[p] * center[p] for p in sub]
    comp_vecs = linalg.nullspace([ortho_row], len(sub))
    su = [_embed(rep.dim, sub, v) for v in linalg.span_basis(comp_vecs)]
    assert 1 + len(su) == comp.dim
    return [center], su


# -- equivalence decisions -----------------------------------------------------


def non_equivalent(sys: RootSystem, rep: oracle.IsotropyRep, block_a: IrreducibleBlock, block_b: IrreducibleBlock) -> bool:
    """Sufficient inequivalence test: dimensions differ, or some root under
    block A shares its sign character with no root under block B."""
    if block_a.dim != block_b.dim:
        return True
    chars_b = {parity_vector(sys, r) for r in block_support(rep, block_b.vectors)}
    return any(
        parity_vector(sys, r) not in chars_b
        for r in block_support(rep, block_a.vectors)
    )


def equivalence_by_pairing(sys: RootSystem, rep: oracle.IsotropyRep, block_a: IrreducibleBlock, block_b: IrreducibleBlock) -> str:
    """Equivalent when a character-preserving root bijection exists and the
    oracle exhibits a nonzero intertwiner; undecided otherwise."""
    sup_a = block_support(rep, block_a.vectors)
    sup_b = block_support(rep, block_b.vectors)
    count_a: dict[int, int] = {}
    count_b: dict[int, int] = {}
    for r in sup_a:
        count_a[parity_vector(sys, r)] = count_a.get(parity_vector(sys, r), 0) + 1
    for r in sup_b:
        count_b[parity_vector(sys, r)] = count_b.get(parity_vector(sys, r), 0) + 1
    if count_a != count_b:
        return UNDECIDED
    if oracle.intertwiner_dim(rep, block_a.vectors, block_b.vectors) > 0:
        return EQUIVALENT
    return UNDECIDED


# -- report assembly -----------------------------------------------------------


def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def _union(parent, i, j):
    ri, rj = _find(parent, i), _find(parent, j)
    if ri != rj:
        parent[max(ri, rj)] = min(ri, rj)


def isotypic_dims(dims, equivalent_pairs) -> tuple[int, ...]:
    """Multiset (sorted tuple) of summed dimensions of equivalence classes."""
    parent = list(range(len(dims)))
    for i, j in equivalent_pairs:
        _union(parent, i, j)
    totals: dict[int, int] = {}
    for i, d in enumerate(dims):
        r = _find(parent, i)
        totals[r] = totals.get(r, 0) + d
    return tuple(sorted(totals.values()))


def full_report(sys: RootSystem, theta: frozenset, verify: bool = False,
                constants: StructureConstants | None = None) -> ClassificationReport:
    """Classify one flag; with verify=True every verdict is oracle-checked."""
    comps = tuple(z_components(sys, theta))
    sc = constants if constants is not None else StructureConstants(sys)
    rep = oracle.isotropy_rep(sys, theta, sc)
    notes: list[str] = []
    blocks: list[IrreducibleBlock] = []
    fam, l = sys.dynkin.family, sys.rank
    mandatory = _oracle_mandatory(sys, theta)

    for ci, comp in enumerate(comps):
        unit = rep.unit_block(comp.roots)
        route = "oracle"
        if not mandatory:
            if irreducible_by_criterion(sys, theta, comp) == IRREDUCIBLE:
                blocks.append(IrreducibleBlock(
                    FULL_COMPONENT, ci, tuple(tuple(v) for v in unit),
                    "all root spaces of the component", "criterion"))
                continue
            if fam == "B" and l >= 5 and (l - 1) in theta and any(sys.is_short(r) for r in comp.roots):
                w1, w2 = split_B_short(sys, theta, comp, rep)
                assert oracle.invariant_check(rep, w1) and oracle.invariant_check(rep, w2)
                blocks.append(IrreducibleBlock(B_SHORT_1, ci, tuple(w1),
                              _note_from_vectors(sys, rep, w1), "split"))
                blocks.append(IrreducibleBlock(B_SHORT_2, ci, tuple(w2),
                              _note_from_vectors(sys, rep, w2), "split"))
                continue
            if fam == "C" and comp.dim >= 2 and any(sys.is_long(r) for r in comp.roots):
                center, su = split_C_long(sys, theta, comp, rep)
                assert oracle.invariant_check(rep, center) and oracle.invariant_check(rep, su)
                blocks.append(IrreducibleBlock(C_CENTER, ci, tuple(center),
                              "group-fixed trace line: " + _note_from_vectors(sys, rep, center), "split"))
                blocks.append(IrreducibleBlock(C_SU, ci, tuple(su),
                              "trace-free complement of the fixed line", "split"))
                continue
            route = "fallback-oracle"
            notes.append(f"component {ci}: sufficient criterion inconclusive; oracle decided")
        parts = oracle.decompose_block(rep, unit)
        if len(parts) == 1:
            blocks.append(IrreducibleBlock(
                FULL_COMPONENT, ci, tuple(tuple(v) for v in unit),
                "all root spaces of the component", "oracle"))
        else:
            for part in parts:
                blocks.append(IrreducibleBlock(
                    ORACLE_DERIVED, ci, tuple(tuple(v) for v in part),
                    _note_from_vectors(sys, rep, part), "oracle"))

    assert sum(b.dim for b in blocks) == rep.dim

    # Equivalences: character separation first, the exact intertwiner otherwise.
    n = len(blocks)
    parent = list(range(n))
    inter: dict[tuple[int, int], int] = {}
    lemma_separated: list[tuple[int, int]] = []
    for i in range(n):
        for j in range(i + 1, n):
            if non_equivalent(sys, rep, blocks[i], blocks[j]):
                lemma_separated.append((i, j))
                continue
            d = oracle.intertwiner_dim(rep, blocks[i].vectors, blocks[j].vectors)
            inter[(i, j)] = d
            if d > 0:
                _union(parent, i, j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(_find(parent, i), []).append(i)
    continuum_note = ("projective line of invariant graph subspaces "
                      "x*X + y*T(X), (x, y) != (0, 0) up to scale")
    equivalences = tuple(
        EquivalenceClass(tuple(members), len(members) > 1,
                         continuum_note if len(members) > 1 else "")
        for _, members in sorted(groups.items())
    )

    report = ClassificationReport(
        family=fam, rank=l, theta=tuple(sorted(p + 1 for p in theta)),
        components=comps, blocks=tuple(blocks), equivalences=equivalences,
        intertwiner_dims=inter, notes=tuple(notes),
    )
    if verify:
        _verify(sys, rep, report, lemma_separated)
    return report


def _verify(sys, rep, report: ClassificationReport, lemma_separated):
    """Oracle cross-checks; fills the oracle_* fields of the report in place."""
    mismatches: list[str] = []
    blocks = report.blocks

    commutant_dims = []
    for i, b in enumerate(blocks):
        if not oracle.invariant_check(rep, b.vectors):
            mismatches.append(f"block {i} is not invariant")
        d = oracle.symmetric_commutant_dim(rep, b.vectors)
        commutant_dims.append(d)
        if d != 1:
            mismatches.append(f"block {i} has symmetric commutant dim {d}, not irreducible")

    for (i, j) in lemma_separated:
        d = oracle.intertwiner_dim(rep, blocks[i].vectors, blocks[j].vectors)
        report.intertwiner_dims[(i, j)] = d
        if d != 0:
            mismatches.append(f"character-separated blocks {i},{j} have intertwiner dim {d}")

    for (i, j), d in report.intertwiner_dims.items():
        if d <= 0:
            continue
        mats, ad_a, ad_b = oracle.intertwiners(rep, blocks[i].vectors, blocks[j].vectors)
        t = mats[0]
        for (x, y) in GRAPH_PARAMS:
            graph = oracle.graph_vectors(ad_a, ad_b, t, x, y)
            if not oracle.invariant_check(rep, graph):
                mismatches.append(f"graph subspace ({x},{y}) of blocks {i},{j} not invariant")

    dec = oracle.decompose(rep)
    dec_dims = tuple(sorted(len(b) for b in dec))
    dec_pairs = []
    for i in range(len(dec)):
        for j in range(i + 1, len(dec)):
            if len(dec[i]) == len(dec[j]) and oracle.intertwiner_dim(rep, dec[i], dec[j]) > 0:
                dec_pairs.append((i, j))
    iso_oracle = isotypic_dims([len(b) for b in dec], dec_pairs)
    iso_classify = isotypic_dims(
        [b.dim for b in blocks],
        [(i, j) for (i, j), d in report.intertwiner_dims.items() if d > 0],
    )
    if iso_oracle != iso_classify:
        mismatches.append(
            f"isotypic dimensions differ: classified {iso_classify} vs oracle {iso_oracle}")

    report.oracle_commutant_dims = tuple(commutant_dims)
    report.oracle_decompose_dims = dec_dims
    report.mismatches = tuple(mismatches)
    report.oracle_verified = not mismatches


# -- serialization -------------------------------------------------------------


def report_to_dict(report: ClassificationReport) -> dict:
    sys = root_system(report.family, report.rank)
    return {
        "schema": SCHEMA,
        "type": report.family,
        "rank": report.rank,
        "theta": list(report.theta),
        "components": [
            {
                "roots": [list(sys.coords[r]) for r in c.roots],
                "roots_display": [sys.describe(r) for r in c.roots],
                "highest": list(sys.coords[c.highest]),
                "level": str(c.level),
                "dim": c.dim,
            }
            for c in report.components
        ],
        "blocks": [
            {
                "kind": b.kind,
                "component": b.component,
                "dim": b.dim,
                "vectors": [list(v) for v in b.vectors],
                "basis_note": b.basis_note,
                "certificate": b.certificate,
            }
            for b in report.blocks
        ],
        "equivalences": [
            {"blocks": list(e.blocks), "continuum": e.continuum, "family_note": e.family_note}
            for e in report.equivalences
        ],
        "continuum_families": [
            {"blocks": list(e.blocks), "family_note": e.family_note}
            for e in report.equivalences
            if e.continuum
        ],
        "intertwiner_dims": {f"{i},{j}": d for (i, j), d in sorted(report.intertwiner_dims.items())},
        "oracle": {
            "verified": report.oracle_verified,
            "commutant_dims": list(report.oracle_commutant_dims) if report.oracle_commutant_dims is not None else None,
            "decompose_dims": list(report.oracle_decompose_dims) if report.oracle_decompose_dims is not None else None,
            "mismatches": list(report.mismatches),
        },
        "notes": list(report.notes),
    }


def report_from_dict(data: dict) -> ClassificationReport:
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {data.get('schema')!r}")
    sys = root_system(data["type"], data["rank"])
    theta = frozenset(p - 1 for p in data["theta"])

    def root_of(coords):
        idx = sys.root_index(tuple(coords))
        assert idx is not None
        return idx

    comps = tuple(
        Component(
            theta,
            tuple(sorted(root_of(rc) for rc in c["roots"])),
            root_of(c["highest"]),
            Fraction(c["level"]),
        )
        for c in data["components"]
    )
    blocks = tuple(
        IrreducibleBlock(
            b["kind"], b["component"], tuple(tuple(v) for v in b["vectors"]),
            b["basis_note"], b["certificate"],
        )
        for b in data["blocks"]
    )
    eqs = tuple(
        EquivalenceClass(tuple(e["blocks"]), e["continuum"], e["family_note"])
        for e in data["equivalences"]
    )
    inter = {
        tuple(int(x) for x in key.split(",")): d
        for key, d in data["intertwiner_dims"].items()
    }
    orc = data["oracle"]
    return ClassificationReport(
        family=data["type"], rank=data["rank"], theta=tuple(data["theta"]),
        components=comps, blocks=blocks, equivalences=eqs,
        intertwiner_dims=inter, notes=tuple(data["notes"]),
        oracle_verified=orc["verified"],
        oracle_commutant_dims=tuple(orc["commutant_dims"]) if orc["commutant_dims"] is not None else None,
        oracle_decompose_dims=tuple(orc["decompose_dims"]) if orc["decompose_dims"] is not None else None,
        mismatches=tuple(orc["mismatches"]),
    )


def report_to_json(report: ClassificationReport) -> str:
    return json.dumps(report_to_dict(report), indent=2)


def report_from_json(text: str) -> ClassificationReport:
    return report_from_dict(json.loads(text))


def render_table(report: ClassificationReport) -> str:
    sys = root_system(report.family, report.rank)
    theta_str = "{" + ", ".join(f"α{i}" for i in report.theta) + "}"
    lines = [
        f"flag {report.family}{report.rank}, theta = {theta_str or '{}'}",
        f"tangent dim {sum(c.dim for c in report.components)}, "
        f"{len(report.components)} component(s), {len(report.blocks)} block(s)",
        "components:",
    ]
    for i, c in enumerate(report.components):
        roots = ", ".join(sys.describe(r) for r in c.roots)
        lines.append(f"  [{i}] dim {c.dim:>2}  level {str(c.level):>5}  "
                     f"highest {sys.describe(c.highest)}  roots: {roots}")
    lines.append("blocks:")
    for i, b in enumerate(report.blocks):
        lines.append(f"  [{i}] dim {b.dim:>2}  {b.kind:<13} component {b.component}  "
                     f"({b.certificate})  {b.basis_note}")
    lines.append("equivalence classes:")
    for e in report.equivalences:
        tag = "  continuum: " + e.family_note if e.continuum else ""
        lines.append(f"  {set(e.blocks)}{tag}")
    if report.oracle_verified is not None:
        lines.append(f"oracle: verified={report.oracle_verified} "
                     f"commutant_dims={list(report.oracle_commutant_dims or ())} "
                     f"decompose_dims={list(report.oracle_decompose_dims or ())}")
        for m in report.mismatches:
            lines.append(f"  MISMATCH: {m}")
    for n in report.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines)
