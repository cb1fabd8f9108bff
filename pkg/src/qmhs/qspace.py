"""Cyclic quotient spaces X(d; A) and weighted blow-up charts.

A type is stored exactly as presented, but every comparison goes through the
group it generates inside (Q/Z)^{n+1}.  That group is encoded by the integer
lattice ``Lambda = {v in Z^{n+1} : v / E mod Z lies in G}`` where ``E`` is the
exponent of ``G``; the pair (E, Hermite basis of Lambda) is presentation free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .exactalg import (
    ext_gcd,
    gcd_all,
    hermite_rows,
    inverse_mod,
    lcm,
    smith_normal_form,
    unimodular_inverse,
)


class QSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class QuotientType:
    """X(d; A): C^{n+1} modulo mu_{d_0} x ... x mu_{d_r} acting by rows of A."""

    d: tuple
    A: tuple
    ncols: int = None
    _key: tuple = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        d = tuple(int(x) for x in self.d)
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        if len(d) != len(A):
            raise QSpaceError(f"{len(d)} orders but {len(A)} weight rows")
        if any(x < 1 for x in d):
            raise QSpaceError(f"orders must be positive, got {list(d)}")
        ncols = self.ncols if self.ncols is not None else (len(A[0]) if A else None)
        if ncols is None:
            raise QSpaceError("number of coordinates unknown for a type without rows")
        if any(len(row) != ncols for row in A):
            raise QSpaceError("weight rows must all have length n+1")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "ncols", int(ncols))
        object.__setattr__(self, "_key", _lattice_key(d, A, int(ncols)))

    # -- constructors ----------------------------------------------------------
    @classmethod
    def cyclic(cls, d: int, *weights: int) -> "QuotientType":
        return cls((d,), (tuple(weights),))

    @classmethod
    def smooth(cls, ncols: int) -> "QuotientType":
        return cls((), (), ncols)

    @classmethod
    def from_generators(cls, exponent: int, rows: Sequence[Sequence[int]], ncols: int) -> "QuotientType":
        """Type generated by the elements ``row / exponent``."""
        return cls(tuple(exponent for _ in rows), tuple(tuple(r) for r in rows), ncols)

    # -- group data -------------------------------------------------------------
    @property
    def n(self) -> int:
        return self.ncols - 1

    @property
    def exponent(self) -> int:
        return self._key[0]

    @property
    def lattice(self) -> list[list[int]]:
        return [list(r) for r in self._key[1]]

    @property
    def order(self) -> int:
        e, basis = self._key
        det = 1
        for i, row in enumerate(basis):
            det *= row[i]
        return e ** self.ncols // det

    def is_smooth(self) -> bool:
        return self.order == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuotientType):
            return NotImplemented
        return self._key == other._key and self.ncols == other.ncols

    def __hash__(self) -> int:
        return hash((self._key, self.ncols))

    def elements(self, limit: int = 10 ** 4) -> set[tuple]:
        """All group elements as tuples of fractions in [0, 1) (small groups only)."""
        if self.order > limit:
            raise QSpaceError(f"group of order {self.order} too large to enumerate")
        zero = tuple(Fraction(0) for _ in range(self.ncols))
        gens = [tuple(Fraction(a, di) % 1 for a in row) for di, row in zip(self.d, self.A)]
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for g in frontier:
                for h in gens:
                    s = tuple((x + y) % 1 for x, y in zip(g, h))
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return seen

    def reflection_orders(self) -> list[int]:
        """Order of G ∩ (Q/Z) e_j for each coordinate j."""
        e, basis = self._key
        out = []
        for j in range(self.ncols):
            out.append(e // _axis_generator(basis, j, self.ncols))
        return out

    def is_normalized(self) -> bool:
        return all(h == 1 for h in self.reflection_orders())

    # -- presentations ---------------------------------------------------------
    def presentation(self) -> "QuotientType":
        """Smith-reduced presentation: rows for the invariant factors of G."""
        e, basis = self._key
        if e == 1:
            return QuotientType.smooth(self.ncols)
        D, _, V = smith_normal_form(basis)
        vinv = unimodular_inverse(V)
        d_out, rows = [], []
        for i in range(self.ncols):
            di = e // D[i][i]
            if di == 1:
                continue
            row = [x % di for x in vinv[i]]
            d_out.append(di)
            rows.append(row)
        if len(rows) == 1:
            rows = [_min_unit_multiple(rows[0], d_out[0])]
        pres = QuotientType(tuple(d_out), tuple(map(tuple, rows)), self.ncols)
        if pres != self:
            raise AssertionError("presentation changed the group")
        return pres

    def scale_columns(self, k: Sequence[int]) -> "QuotientType":
        """Image of the group under x_j -> x_j^{k_j}."""
        return QuotientType(self.d, tuple(tuple(a * kj for a, kj in zip(row, k)) for row in self.A), self.ncols)

    def permute(self, perm: Sequence[int]) -> "QuotientType":
        """Reorder coordinates: new column i is old column perm[i]."""
        return QuotientType(self.d, tuple(tuple(row[p] for p in perm) for row in self.A), self.ncols)

    def to_json(self) -> dict:
        return {"d": list(self.d), "A": [list(r) for r in self.A], "n": self.n}

    def __str__(self) -> str:
        if not self.d:
            return f"C^{self.ncols}"
        if len(self.d) == 1:
            return f"X({self.d[0]}; {', '.join(map(str, self.A[0]))})"
        rows = " / ".join(f"{di}; {', '.join(map(str, r))}" for di, r in zip(self.d, self.A))
        return f"X({rows})"


def _lattice_key(d, A, ncols):
    reduced = []
    e = 1
    for di, row in zip(d, A):
        g = gcd(di, gcd_all(row))
        reduced.append((di // g, [a // g for a in row]))
        e = lcm(e, di // g)
    gens = [[a * (e // di) for a in row] for di, row in reduced]
    gens += [[e if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    return e, tuple(tuple(r) for r in hermite_rows(gens, ncols))


def _axis_generator(basis, j, ncols):
    """Smallest c > 0 with c e_j in the lattice."""
    order = [c for c in range(ncols) if c != j] + [j]
    perm_basis = [[row[c] for c in order] for row in basis]
    h = hermite_rows(perm_basis, ncols)
    return h[-1][-1]


def _min_unit_multiple(row, d):
    best = None
    for u in range(1, d):
        if gcd(u, d) == 1:
            cand = [(u * a) % d for a in row]
            if best is None or cand < best:
                best = cand
    return best if best is not None else [a % d for a in row]


# ---------------------------------------------------------------------------
# normalization, germs
# ---------------------------------------------------------------------------

def normalize(T: QuotientType) -> tuple[QuotientType, tuple]:
    """Strip reflections; returns the normalized type and the exponents k_j.

    The new coordinates are x_j^{k_j}.
    """
    rescale = [1] * T.ncols
    cur = T
    while True:
        h = cur.reflection_orders()
        if all(x == 1 for x in h):
            break
        cur = cur.scale_columns(h)
        rescale = [a * b for a, b in zip(rescale, h)]
    return cur.presentation(), tuple(rescale)


def normalize_by_enumeration(T: QuotientType) -> tuple[set, tuple]:
    """Reference normalization on explicit group elements (small groups only)."""
    G = T.elements()
    rescale = [1] * T.ncols
    while True:
        h = []
        for j in range(T.ncols):
            h.append(sum(1 for g in G if all(x == 0 for i, x in enumerate(g) if i != j)))
        if all(x == 1 for x in h):
            return G, tuple(rescale)
        G = {tuple((x * hj) % 1 for x, hj in zip(g, h)) for g in G}
        rescale = [a * b for a, b in zip(rescale, h)]


def is_invariant(T: QuotientType, m: Sequence[int]) -> bool:
    if len(m) != T.ncols:
        raise QSpaceError(f"germ has {len(m)} exponents, type has {T.ncols} coordinates")
    return all(sum(a * x for a, x in zip(row, m)) % di == 0 for di, row in zip(T.d, T.A))


def multiplicity(T: QuotientType, m: Sequence[int]) -> int:
    """Number of local sheets of the base change t^e = x^m over the point.

    gcd of the exponents and of the integer quotients sum_j a_ij m_j / d_i.
    """
    if any(x < 0 for x in m) or not any(m):
        raise QSpaceError(f"germ exponents must be non-negative and not all zero: {list(m)}")
    if not is_invariant(T, m):
        raise QSpaceError(f"germ x^{list(m)} is not invariant on {T}")
    quotients = [sum(a * x for a, x in zip(row, m)) // di for di, row in zip(T.d, T.A)]
    value = gcd_all(list(m) + quotients)
    support = [j for j, x in enumerate(m) if x]
    if len(support) == 1:
        j = support[0]
        L = lcm(*(di // gcd(di, row[j]) for di, row in zip(T.d, T.A))) if T.d else 1
        other = m[j] // L
        if other != value:
            raise AssertionError(f"one-variable multiplicity mismatch {value} != {other}")
    return value


def multiplicity_by_orbits(T: QuotientType, m: Sequence[int]) -> int:
    """Orbit count of the factors of t^g - x^m under the group (small groups)."""
    g = gcd_all(m)
    # factor i: t^{e/g} - zeta_g^i x^{m/g}; the group shifts i by g * <w, m/g>
    shifts = set()
    for elt in T.elements():
        s = sum(x * Fraction(mj, g) for x, mj in zip(elt, m))
        shifts.add((s * g) % g)
    orbit = {Fraction(0)}
    frontier = [Fraction(0)]
    while frontier:
        nxt = []
        for a in frontier:
            for s in shifts:
                b = (a + s) % g
                if b not in orbit:
                    orbit.add(b)
                    nxt.append(b)
        frontier = nxt
    return g // len(orbit)


# ---------------------------------------------------------------------------
# charts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Chart:
    """One affine chart of a weighted blow-up.

    ``substitution[i][j]`` is the exponent of new coordinate j in old
    coordinate i.  ``raw`` is the chart type before reflections are removed;
    ``target`` is normalized and lives in coordinates x_j^{rescale_j}.
    """

    raw: QuotientType
    target: QuotientType
    rescale: tuple
    substitution: tuple
    exceptional_coordinate: int
    weights: tuple

    def pullback(self, m: Sequence[int], normalized: bool = True) -> tuple:
        """Exponents of the pulled back monomial x^m in chart coordinates."""
        cols = len(self.substitution[0])
        raw = [sum(self.substitution[i][j] * m[i] for i in range(len(m))) for j in range(cols)]
        if not normalized:
            return tuple(raw)
        out = []
        for x, k in zip(raw, self.rescale):
            if x % k:
                raise QSpaceError(f"pulled back germ {raw} not defined on normalized chart")
            out.append(x // k)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "raw": self.raw.to_json(),
            "target": self.target.to_json(),
            "rescale": list(self.rescale),
            "substitution": [list(r) for r in self.substitution],
            "exceptional_coordinate": self.exceptional_coordinate,
            "weights": list(self.weights),
        }


def _chart(raw: QuotientType, subst, exc, weights) -> Chart:
    target, rescale = normalize(raw)
    return Chart(raw, target, rescale, tuple(tuple(r) for r in subst), exc, tuple(weights))


def _require_cyclic(T: QuotientType, ncols: int) -> tuple[int, list[int]]:
    if T.ncols != ncols:
        raise QSpaceError(f"expected a {ncols}-coordinate type, got {T}")
    if not T.is_normalized():
        raise QSpaceError(f"{T} is not normalized")
    if not T.d:
        return 1, [0] * ncols
    if len(T.d) != 1:
        P = T.presentation()
        if len(P.d) > 1:
            raise QSpaceError(f"{T} is not cyclic")
        if not P.d:
            return 1, [0] * ncols
        T = P
    return T.d[0], list(T.A[0])


def blowup_2d(T: QuotientType, omega: Sequence[int]) -> dict:
    """Weighted blow-up of X(d; a, b) at the origin with weights (p, q)."""
    p, q = (int(x) for x in omega)
    if p < 1 or q < 1 or gcd(p, q) != 1:
        raise QSpaceError(f"weights must be coprime positive integers, got {(p, q)}")
    d, (a, b) = _require_cyclic(T, 2)
    e = gcd(d, p * b - q * a)
    beta = inverse_mod(a, d)
    mu = inverse_mod(b, d)
    raw1 = QuotientType.cyclic(p * d, 1, -q + beta * p * b)
    raw2 = QuotientType.cyclic(q * d, -p + mu * q * a, 1)
    c1 = _chart(raw1, [[p, 0], [q, 1]], 0, (p, q))
    c2 = _chart(raw2, [[1, p], [0, q]], 1, (p, q))
    display1 = QuotientType.cyclic(p * d // e, 1, (-q + beta * p * b) // e)
    display2 = QuotientType.cyclic(q * d // e, (-p + mu * q * a) // e, 1)
    if c1.target != display1 or c2.target != display2 or c1.rescale != (e, 1) or c2.rescale != (1, e):
        raise AssertionError("chart normalization disagrees with the closed form")
    return {
        "e": e,
        "beta": beta,
        "mu": mu,
        "charts": (c1, c2),
        "exceptional": {"kind": "P1", "weights": (p, q), "origins": (c1.target, c2.target)},
    }


def blowup_3d_smooth(omega: Sequence[int]) -> dict:
    p, q, r = (int(x) for x in omega)
    if min(p, q, r) < 1 or gcd(gcd(p, q), r) != 1:
        raise QSpaceError(f"weights must be positive with gcd 1, got {(p, q, r)}")
    raws = [
        QuotientType.cyclic(p, -1, q, r),
        QuotientType.cyclic(q, p, -1, r),
        QuotientType.cyclic(r, p, q, -1),
    ]
    substs = [
        [[p, 0, 0], [q, 1, 0], [r, 0, 1]],
        [[1, p, 0], [0, q, 0], [0, r, 1]],
        [[1, 0, p], [0, 1, q], [0, 0, r]],
    ]
    charts = tuple(_chart(t, s, i, (p, q, r)) for i, (t, s) in enumerate(zip(raws, substs)))
    axes = {
        "x=0": QuotientType.cyclic(gcd(q, r), p, -1),
        "y=0": QuotientType.cyclic(gcd(p, r), -1, q),
        "z=0": QuotientType.cyclic(gcd(p, q), -1, r),
    }
    return {
        "charts": charts,
        "axes": axes,
        "exceptional": {
            "kind": "P2",
            "weights": (p, q, r),
            "cover": (QuotientType.cyclic(p, q, r), QuotientType.cyclic(q, p, r), QuotientType.cyclic(r, p, q)),
            "simplified": simplify_wp2(p, q, r),
        },
    }


def _first_chart_types(p, q, r, d, a, b, c):
    raw = QuotientType((p, p * d), ((-1, q, r), (a, p * b - q * a, p * c - r * a)))
    g, alpha, beta = ext_gcd(d, a)
    beta %= d if d > 1 else 1
    alpha = (g - beta * a) // d
    rewritten = QuotientType((p * d, g), ((g, -q * g + beta * p * b, -r * g + beta * p * c), (0, b, c)))
    return raw, rewritten, (alpha, beta)


def blowup_3d_quotient(T: QuotientType, omega: Sequence[int]) -> dict:
    """Weighted blow-up of X(d; a, b, c) at the origin with weights (p, q, r)."""
    p, q, r = (int(x) for x in omega)
    if min(p, q, r) < 1 or gcd(gcd(p, q), r) != 1:
        raise QSpaceError(f"weights must be positive with gcd 1, got {(p, q, r)}")
    d, (a, b, c) = _require_cyclic(T, 3)
    w = (p, q, r)
    wts = (a, b, c)
    substs = [
        [[p, 0, 0], [q, 1, 0], [r, 0, 1]],
        [[1, p, 0], [0, q, 0], [0, r, 1]],
        [[1, 0, p], [0, 1, q], [0, 0, r]],
    ]
    charts, rewrites, bezout = [], [], []
    for i in range(3):
        # move coordinate i to the front, reuse the first chart formulas
        perm = [i] + [j for j in range(3) if j != i]
        back = [perm.index(j) for j in range(3)]
        pw = [w[j] for j in perm]
        pa = [wts[j] for j in perm]
        raw, rewritten, coeffs = _first_chart_types(*pw, d, *pa)
        raw, rewritten = raw.permute(back), rewritten.permute(back)
        if raw != rewritten:
            raise AssertionError("Bezout rewrite changed the group")
        charts.append(_chart(raw, substs[i], i, w))
        rewrites.append(rewritten)
        bezout.append(coeffs)
    return {
        "charts": tuple(charts),
        "rewritten": tuple(rewrites),
        "bezout": tuple(bezout),
        "exceptional": {"kind": "P2/mu_d", "weights": w, "group": (d, a, b, c)},
    }


def simplify_wp2(p: int, q: int, r: int) -> tuple[tuple, tuple]:
    """Reduced weights of P^2(p,q,r) and the coordinate powers realising it."""
    if gcd(gcd(p, q), r) != 1:
        raise QSpaceError("weights must have gcd 1")
    pq, pr, qr = gcd(p, q), gcd(p, r), gcd(q, r)
    return (p // (pr * pq), q // (pq * qr), r // (pr * qr)), (qr, pr, pq)
