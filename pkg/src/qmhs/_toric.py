"""Toric Q-resolutions of Newton non-degenerate germs in dimensions 2 and 3.

Only what the stratum generators need: the local type of a simplicial cone,
lattice lengths and areas of Newton polyhedron faces, and the dual face of a
cone.  Rays are primitive integer vectors in the positive orthant.
"""

from __future__ import annotations

from fractions import Fraction

from .exactalg import det, gcd_all, rref, smith_normal_form, unimodular_inverse
from .qspace import QuotientType


def primitive(v):
    g = gcd_all(v)
    return tuple(x // g for x in v)


def _inverse(m):
    n = len(m)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular cone")
    return [row[n:] for row in red]


def cone_type(rays, ambient):
    """Local type of the orbit of the cone spanned by ``rays``.

    Coordinates are ordered as the rays, followed by ``ambient - len(rays)``
    coordinates along the orbit (weight zero).
    """
    k = len(rays)
    if k == ambient:
        basis = [list(r) for r in rays]
        coords = basis
    else:
        # basis of the saturated sublattice Z^n ∩ span(rays)
        D, U, V = smith_normal_form([list(r) for r in rays])
        vinv = unimodular_inverse(V)
        sat = [vinv[i] for i in range(k)]
        coords = []
        for r in rays:
            c = _coords_in(sat, r)
            coords.append(c)
    M = [[coords[j][i] for j in range(k)] for i in range(k)]  # columns = rays
    index = abs(int(det(M)))
    if index == 0:
        raise ValueError(f"degenerate cone {rays}")
    inv = _inverse(M)
    rows = []
    for col in range(k):
        g = [inv[r][col] * index for r in range(k)]
        rows.append([int(x) for x in g] + [0] * (ambient - k))
    return QuotientType.from_generators(index, rows, ambient)


def _coords_in(basis, v):
    k = len(basis)
    n = len(v)
    aug = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    red, pivots = rref(aug)
    if k in pivots:
        raise ValueError("vector outside the sublattice")
    out = [0] * k
    for row, p in zip(red, pivots):
        if row[k].denominator != 1:
            raise ValueError("non-integral coordinates")
        out[p] = int(row[k])
    return out


def dual_face(rays, vertices):
    """Vertices of the Newton polyhedron minimizing every ray of the cone."""
    face = list(vertices)
    for r in rays:
        low = min(sum(a * b for a, b in zip(r, v)) for v in face)
        face = [v for v in face if sum(a * b for a, b in zip(r, v)) == low]
    return face


def lattice_length(face):
    """Lattice length of a segment (0 for a point)."""
    if len(face) < 2:
        return 0
    best = 0
    for i, a in enumerate(face):
        for b in face[i + 1:]:
            best = max(best, gcd_all(x - y for x, y in zip(a, b)))
    for v in face:
        # collinearity: every vertex lies on the line through the first two
        d1 = [x - y for x, y in zip(face[1], face[0])]
        d2 = [x - y for x, y in zip(v, face[0])]
        if any(d1[i] * d2[j] != d1[j] * d2[i] for i in range(len(d1)) for j in range(len(d1))):
            raise ValueError("face is not a segment")
    return best


def twice_lattice_area(face, normal):
    """Normalized area of a planar convex polygon with vertices in cyclic order."""
    pts = list(face)
    if len(pts) < 3:
        return 0
    w = primitive(normal)
    total = 0
    for i in range(1, len(pts) - 1):
        a = [pts[i][j] - pts[0][j] for j in range(3)]
        b = [pts[i + 1][j] - pts[0][j] for j in range(3)]
        cross = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
        k = next(cross[j] // w[j] for j in range(3) if w[j])
        if tuple(k * x for x in w) != cross:
            raise ValueError("face is not orthogonal to its normal")
        total += k
    return abs(total)


def order_along(ray, vertices):
    return min(sum(a * b for a, b in zip(ray, v)) for v in vertices)
