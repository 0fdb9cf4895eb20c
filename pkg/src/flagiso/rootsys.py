"""Root systems of the simple Dynkin types in exact integer arithmetic.

Classical families are realized in lambda-coordinates (A_l uses rank+1 of
them, with lambda_i orthonormal); E/F/G live in simple-root coordinates
with an integer Gram table derived from the Cartan matrix, scaled so that
every inner product between roots is an integer.  The Killing numbers
2<g,a>/<g,g> are scale-invariant, so the normalization never leaks out.

Positive roots are sorted by (height, coordinates); negative roots mirror
the positives (index of -a = index of a + number of positive roots).  All
orderings are deterministic, which pins down every downstream report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg

_POSITIVE_COUNT = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "E": lambda l: {6: 36, 7: 63, 8: 120}[l],
    "F": lambda l: 24,
    "G": lambda l: 6,
}

_E_EDGES = {
    6: [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5)],
    7: [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)],
    8: [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)],
}


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        fam, l = self.family, self.rank
        ok = (
            (fam == "A" and l >= 1)
            or (fam == "B" and l >= 2)
            or (fam == "C" and l >= 3)
            or (fam == "D" and l >= 4)
            or (fam == "E" and 6 <= l <= 8)
            or (fam == "F" and l == 4)
            or (fam == "G" and l == 2)
        )
        if not ok:
            raise ValueError(f"invalid rank {l} for family {fam!r}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def is_classical(self) -> bool:
        return self.family in "ABCD"


def _simple_root_coords(dt: DynkinType) -> list[tuple[int, ...]]:
    """Coordinates of the simple roots in the ambient basis."""
    l = dt.rank
    if dt.family == "A":
        dim = l + 1
        coords = []
        for i in range(l):
            v = [0] * dim
            v[i], v[i + 1] = 1, -1
            coords.append(tuple(v))
        return coords
    if dt.family in "BCD":
        coords = []
        for i in range(l - 1):
            v = [0] * l
            v[i], v[i + 1] = 1, -1
            coords.append(tuple(v))
        last = [0] * l
        if dt.family == "B":
            last[l - 1] = 1
        elif dt.family == "C":
            last[l - 1] = 2
        else:
            last = [0] * l
            last[l - 2], last[l - 1] = 1, 1
            coords[l - 2] = tuple([0] * (l - 2) + [1, -1])
        coords.append(tuple(last))
        return coords
    # Exceptional families: ambient basis = simple roots themselves.
    return [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]


def _ambient_gram(dt: DynkinType) -> list[list[int]]:
    l = dt.rank
    if dt.is_classical:
        dim = l + 1 if dt.family == "A" else l
        return linalg.identity(dim)
    if dt.family == "E":
        g = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
        for a, b in _E_EDGES[l]:
            g[a][b] = g[b][a] = -1
        return g
    if dt.family == "F":
        return [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    # G2, with the first simple root long.
    return [[6, -3], [-3, 2]]


def _simple_gram(dt: DynkinType) -> list[list[int]]:
    coords = _simple_root_coords(dt)
    amb = _ambient_gram(dt)
    n = len(coords)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = sum(
                coords[i][a] * amb[a][b] * coords[j][b]
                for a in range(len(amb))
                for b in range(len(amb))
            )
    return out


def _positive_coeff_closure(gram: list[list[int]]) -> list[tuple[int, ...]]:
    """All positive roots as simple-root coefficient vectors.

    Grows level by level: beta + alpha_i is a root exactly when the
    alpha_i-string through beta still continues upward, i.e. when
    p - <alpha_i^v, beta> > 0 with p the number of downward steps.
    """
    rank = len(gram)

    def pairing(i, beta):
        num = 2 * sum(gram[i][k] * beta[k] for k in range(rank))
        q, r = divmod(num, gram[i][i])
        assert r == 0, "non-integral Cartan pairing"
        return q

    units = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    known = set(units)
    level = list(units)
    out = list(units)
    while level:
        nxt = set()
        for beta in level:
            for i in range(rank):
                p = 0
                cur = tuple(b - u for b, u in zip(beta, units[i]))
                while cur in known:
                    p += 1
                    cur = tuple(b - u for b, u in zip(cur, units[i]))
                if p - pairing(i, beta) > 0:
                    nxt.add(tuple(b + u for b, u in zip(beta, units[i])))
        level = sorted(nxt)
        known.update(nxt)
        out.extend(level)
    return out


class RootSystem:
    """Immutable root-system data; safe for concurrent reads."""

    def __init__(self, dynkin: DynkinType):
        self.dynkin = dynkin
        self.rank = dynkin.rank
        self._basis_gram = _ambient_gram(dynkin)
        simple_coords = _simple_root_coords(dynkin)
        sgram = _simple_gram(dynkin)

        pos_coeffs = _positive_coeff_closure(sgram)
        expected = _POSITIVE_COUNT[dynkin.family](dynkin.rank)
        assert len(pos_coeffs) == expected, (dynkin, len(pos_coeffs), expected)

        def to_coords(coeff):
            dim = len(self._basis_gram)
            v = [0] * dim
            for c, sc in zip(coeff, simple_coords):
                for a in range(dim):
                    v[a] += c * sc[a]
            return tuple(v)

        decorated = sorted(
            (sum(cf), to_coords(cf), cf) for cf in pos_coeffs
        )
        self.n_pos = len(decorated)
        pos_coord_list = [c for _, c, _ in decorated]
        pos_coeff_list = [cf for _, _, cf in decorated]
        self.coords: list[tuple[int, ...]] = pos_coord_list + [
            tuple(-x for x in c) for c in pos_coord_list
        ]
        self.coeffs: list[tuple[int, ...]] = pos_coeff_list + [
            tuple(-x for x in c) for c in pos_coeff_list
        ]
        self._by_coords = {c: i for i, c in enumerate(self.coords)}

        units = [tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]
        self.simple: tuple[int, ...] = tuple(pos_coeff_list.index(u) for u in units)

        # Inner products of positive pairs; signs handle the rest.
        n = self.n_pos
        self._pos_gram = [[0] * n for _ in range(n)]
        for i in range(n):
            ci = pos_coeff_list[i]
            row = self._pos_gram[i]
            for j in range(i, n):
                cj = pos_coeff_list[j]
                val = sum(
                    ci[a] * sgram[a][b] * cj[b]
                    for a in range(self.rank)
                    for b in range(self.rank)
                )
                row[j] = val
                self._pos_gram[j][i] = val
        norms = sorted({self._pos_gram[i][i] for i in range(n)})
        assert 1 <= len(norms) <= 2, norms
        self.short_norm = norms[0]
        self.long_norm = norms[-1]

    # -- indexing ---------------------------------------------------------

    def __len__(self) -> int:
        return 2 * self.n_pos

    def all_roots(self) -> range:
        return range(2 * self.n_pos)

    def positive_roots(self) -> range:
        return range(self.n_pos)

    def negative_roots(self) -> range:
        return range(self.n_pos, 2 * self.n_pos)

    def is_positive(self, i: int) -> bool:
        return i < self.n_pos

    def neg(self, i: int) -> int:
        return i - self.n_pos if i >= self.n_pos else i + self.n_pos

    def root_index(self, coords) -> int | None:
        return self._by_coords.get(tuple(coords))

    def add_roots(self, i: int, j: int) -> int | None:
        return self._by_coords.get(tuple(a + b for a, b in zip(self.coords[i], self.coords[j])))

    def height(self, i: int) -> int:
        return sum(self.coeffs[i])

    # -- bilinear data ----------------------------------------------------

    def inner(self, i: int, j: int) -> int:
        sign = 1
        if i >= self.n_pos:
            i -= self.n_pos
            sign = -sign
        if j >= self.n_pos:
            j -= self.n_pos
            sign = -sign
        return sign * self._pos_gram[i][j]

    def killing_number(self, gamma: int, alpha: int) -> int:
        """The integer 2<gamma,alpha>/<gamma,gamma>."""
        q, r = divmod(2 * self.inner(gamma, alpha), self.inner(gamma, gamma))
        assert r == 0, "Killing number must be an integer"
        return q

    def norm(self, i: int) -> int:
        return self.inner(i, i)

    def is_long(self, i: int) -> bool:
        return self.norm(i) == self.long_norm

    def is_short(self, i: int) -> bool:
        return self.norm(i) < self.long_norm

    def coroot(self, i: int) -> tuple[Fraction, ...]:
        nrm = self.norm(i)
        return tuple(Fraction(2 * c, nrm) for c in self.coords[i])

    def pair(self, i: int, vec) -> Fraction:
        """Inner product of root i with an ambient-coordinate vector."""
        g = self._basis_gram
        dim = len(g)
        ci = self.coords[i]
        return sum(
            (Fraction(ci[a]) * g[a][b] * vec[b] for a in range(dim) for b in range(dim)),
            Fraction(0),
        )

    def cartan_matrix(self) -> list[list[int]]:
        return [
            [self.killing_number(self.simple[i], self.simple[j]) for j in range(self.rank)]
            for i in range(self.rank)
        ]

    # -- distinguished elements --------------------------------------------

    def highest_root(self) -> int:
        best = max(self.positive_roots(), key=lambda i: (self.height(i), self.coords[i]))
        top = self.height(best)
        assert sum(1 for i in self.positive_roots() if self.height(i) == top) == 1
        for s in self.simple:
            assert self.add_roots(best, s) is None
        return best

    def fundamental_weights(self) -> list[tuple[Fraction, ...]]:
        """Exact solutions of <alpha_i^v, w_j> = delta_ij, in ambient coordinates."""
        cartan = self.cartan_matrix()
        cols = [[Fraction(cartan[i][k]) for i in range(self.rank)] for k in range(self.rank)]
        sol = linalg.solve_many(cols, linalg.identity(self.rank))
        assert sol is not None
        weights = []
        dim = len(self._basis_gram)
        for j in range(self.rank):
            w = [Fraction(0)] * dim
            for k in range(self.rank):
                ck = self.coords[self.simple[k]]
                for a in range(dim):
                    w[a] += sol[j][k] * ck[a]
            weights.append(tuple(w))
        return weights

    # -- display -----------------------------------------------------------

    def describe(self, i: int) -> str:
        """Human-readable root: lambda-terms for ABCD, alpha-terms for EFG."""
        if self.dynkin.is_classical:
            symbol, vec = "λ", self.coords[i]
        else:
            symbol, vec = "α", self.coeffs[i]
        parts = []
        for pos, c in enumerate(vec, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            coef = "" if mag == 1 else str(mag)
            parts.append(f"{sign}{coef}{symbol}{pos}")
        return "".join(parts) if parts else "0"


def build_root_system(dynkin: DynkinType) -> RootSystem:
    """Construct the root system; raises ValueError on bad (family, rank)."""
    return RootSystem(dynkin)


def root_system(family: str, rank: int) -> RootSystem:
    return build_root_system(DynkinType(family, rank))
