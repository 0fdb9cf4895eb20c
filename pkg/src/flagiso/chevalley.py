"""Chevalley structure constants with a deterministic sign convention.

For roots a, b with a+b a root, N(a,b) is the constant in
[E_a, E_b] = N(a,b) E_{a+b}; its magnitude is p+1 where p is the number of
downward steps of the a-string through b.  Signs are fixed by declaring
N(a,b) positive on extraspecial pairs: for each positive root g of height
at least two, among the ordered pairs (a, b) of positive roots with
a + b = g and a < b (root order = index order: height, then coordinates),
the one with minimal a gets the positive sign.  Every other constant
follows from antisymmetry, N(-a,-b) = -N(a,b), the three-term rule for
a+b+c = 0, and the four-term rule for quadruples summing to zero.

Any consistent convention yields an isomorphic algebra; determinism is
what matters here, the particular choice does not.
"""

from __future__ import annotations

from fractions import Fraction

from .rootsys import RootSystem


class StructureConstants:
    def __init__(self, sys: RootSystem):
        self.sys = sys
        self._pos: dict[tuple[int, int], int] = {}
        self._build()

    def p_down(self, a: int, b: int) -> int:
        """Largest k with b - k a a root."""
        sys = self.sys
        na = sys.neg(a)
        count = 0
        cur = sys.add_roots(b, na)
        while cur is not None:
            count += 1
            cur = sys.add_roots(cur, na)
        return count

    def _build(self):
        sys = self.sys
        for g in range(sys.n_pos):
            if sys.height(g) < 2:
                continue
            specials = []
            for xi in range(sys.n_pos):
                eta = sys.add_roots(g, sys.neg(xi))
                if eta is None or not sys.is_positive(eta) or xi >= eta:
                    continue
                specials.append((xi, eta))
            specials.sort()
            a, b = specials[0]
            val = self.p_down(a, b) + 1
            self._pos[(a, b)] = val
            self._pos[(b, a)] = -val
            gnorm = sys.inner(g, g)
            nab = val
            for xi, eta in specials[1:]:
                total = Fraction(0)
                d1 = sys.add_roots(eta, sys.neg(a))
                if d1 is not None:
                    total += Fraction(
                        self.n(eta, sys.neg(a)) * self.n(xi, sys.neg(b)),
                        sys.inner(d1, d1),
                    )
                d2 = sys.add_roots(xi, sys.neg(a))
                if d2 is not None:
                    total += Fraction(
                        self.n(sys.neg(a), xi) * self.n(eta, sys.neg(b)),
                        sys.inner(d2, d2),
                    )
                v = Fraction(gnorm, nab) * total
                assert v.denominator == 1 and v != 0, (sys.dynkin, xi, eta)
                self._pos[(xi, eta)] = int(v)
                self._pos[(eta, xi)] = -int(v)

    def n(self, a: int, b: int) -> int:
        """N(a,b) for any pair of roots; 0 when a+b is not a root."""
        sys = self.sys
        s = sys.add_roots(a, b)
        if s is None:
            return 0
        pa, pb = sys.is_positive(a), sys.is_positive(b)
        if pa and pb:
            return self._pos[(a, b)]
        if not pa and not pb:
            return -self._pos[(sys.neg(a), sys.neg(b))]
        if not pa:
            return -self.n(b, a)
        c = sys.neg(s)
        if not sys.is_positive(c):
            nbc = -self._pos[(sys.neg(b), sys.neg(c))]
            val = Fraction(sys.inner(c, c) * nbc, sys.inner(a, a))
        else:
            val = Fraction(sys.inner(c, c) * self._pos[(c, a)], sys.inner(b, b))
        assert val.denominator == 1
        return int(val)

    def coroot_coeffs(self, a: int) -> tuple[int, ...]:
        """Coordinates of the coroot of a in the simple-coroot basis."""
        sys = self.sys
        na = sys.inner(a, a)
        out = []
        for pos, s in enumerate(sys.simple):
            v = Fraction(sys.coeffs[a][pos] * sys.inner(s, s), na)
            assert v.denominator == 1
            out.append(int(v))
        return tuple(out)


def bracket(sc: StructureConstants, x, y):
    """Lie bracket of algebra elements ({root: coeff}, cartan coeffs).

    The Cartan part lives in the simple-coroot basis; [E_a, E_-a] is the
    coroot of a and [H, E_b] scales E_b by the pairing of H with b.
    """
    sys = sc.sys
    rank = sys.rank
    xr, xh = x
    yr, yh = y
    out_r: dict[int, Fraction] = {}
    out_h = [Fraction(0)] * rank

    def add_root(idx, c):
        if c:
            out_r[idx] = out_r.get(idx, Fraction(0)) + c
            if out_r[idx] == 0:
                del out_r[idx]

    for a, ca in xr.items():
        for b, cb in yr.items():
            if b == sys.neg(a):
                for k, hk in enumerate(sc.coroot_coeffs(a)):
                    out_h[k] += ca * cb * hk
            else:
                s = sys.add_roots(a, b)
                if s is not None:
                    add_root(s, ca * cb * sc.n(a, b))
    for b, cb in yr.items():
        scal = sum(xh[k] * sys.killing_number(sys.simple[k], b) for k in range(rank))
        add_root(b, cb * scal)
    for a, ca in xr.items():
        scal = sum(yh[k] * sys.killing_number(sys.simple[k], a) for k in range(rank))
        add_root(a, -ca * scal)
    return out_r, out_h
