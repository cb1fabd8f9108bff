"""Monodromy invariants: characteristic polynomials, equivariant cohomology of
the dual complex, cyclic covers of curves and weight filtrations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import (
    CycloProduct,
    charpoly_exact,
    charpoly_from_traces,
    cyclo_factor,
    cyclotomic,
    divisors,
    identity,
    mat_mul,
    poly_eval_matrix,
    rank,
    rat_kernel_rank,
    rref,
    totient,
)
from .semistable import SemistableComplex, _mvalues
from .strata import StratifiedDivisor


class MonodromyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# characteristic polynomial from strata
# ---------------------------------------------------------------------------

def acampo_charpoly(sd: StratifiedDivisor, mvalues=None) -> CycloProduct:
    """Delta(t) = (t-1)^{(-1)^{n+1}} prod_S (t^{m(S)} - 1)^{(-1)^n chi(S)}.

    S runs over strata lying on exactly one component, that component being
    exceptional.
    """
    if sd.n not in (1, 2):
        raise MonodromyError("characteristic polynomials are assembled for n = 1 and n = 2")
    mv = mvalues if mvalues is not None else _mvalues(sd)
    sign = (-1) ** sd.n
    facs: dict[int, int] = {1: -sign}
    for s, m in zip(sd.strata, mv):
        if len(s.components) == 1 and sd.component(s.components[0]).exceptional and s.euler:
            facs[m] = facs.get(m, 0) + sign * s.euler
    return CycloProduct(facs)


def perm_charpoly(perm) -> CycloProduct:
    """Characteristic polynomial of a permutation matrix: prod over cycles (t^len - 1)."""
    perm = list(perm)
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        n, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            n += 1
        lengths.append(n)
    return CycloProduct.of(*((n, 1) for n in lengths))


# ---------------------------------------------------------------------------
# equivariant cohomology of the dual complex
# ---------------------------------------------------------------------------

def coboundary(K: SemistableComplex, dim: int) -> list[list[int]]:
    """Matrix of delta: C^dim -> C^{dim+1} (rows: (dim+1)-cells)."""
    rows = []
    ncols = K.count(dim)
    for faces in K.faces.get(dim + 1, []):
        row = [0] * ncols
        # face l is opposite vertex l, sign (-1)^l; an edge lists (tail, head)
        signs = [(-1) ** (l + 1) for l in range(len(faces))] if dim == 0 else [(-1) ** l for l in range(len(faces))]
        for f, sgn in zip(faces, signs):
            row[f] += sgn
        rows.append(row)
    return rows


def perm_matrix(perm) -> list[list[int]]:
    n = len(perm)
    out = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        out[j][i] = 1
    return out


def _independent(vectors, n):
    """Maximal independent subfamily, in order."""
    out, current = [], 0
    for v in vectors:
        trial = out + [v]
        r = len(rref([list(x) for x in trial], n)[1])
        if r > current:
            out.append(v)
            current = r
    return out


def _coordinates(basis, targets, n):
    """Coordinates of every target in the independent family ``basis``."""
    k = len(basis)
    aug = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(t[i]) for t in targets] for i in range(n)]
    red, pivots = rref(aug, k)
    if len(pivots) != k:
        raise MonodromyError("basis is not independent")
    for row in red[len(pivots):]:
        if any(row[k:]):
            raise MonodromyError("target outside the span")
    coords = [[Fraction(0)] * k for _ in targets]
    for row, p in zip(red, pivots):
        for t in range(len(targets)):
            coords[t][p] = row[k + t]
    return coords


def induced_action(delta_in, delta_out, perm, ncells):
    """Matrix of the permutation action on ker(delta_out) / im(delta_in)."""
    _, Z = rat_kernel_rank(delta_out, ncells) if delta_out else (0, [[Fraction(int(i == j)) for i in range(ncells)]
                                                                      for j in range(ncells)])
    image = [[row[c] for row in delta_in] for c in range(len(delta_in[0]))] if delta_in and delta_in[0] else []
    B = _independent(image, ncells)
    comp = []
    current = B[:]
    for z in Z:
        if len(rref([list(x) for x in current + [z]], ncells)[1]) > len(current):
            current.append(z)
            comp.append(z)
    if not comp:
        return []
    P = perm_matrix(perm)
    images = [[sum(P[i][j] * v[j] for j in range(ncells)) for i in range(ncells)] for v in comp]
    coords = _coordinates(B + comp, images, ncells)
    h = len(comp)
    # column j = image of comp[j]
    return [[coords[j][len(B) + i] for j in range(h)] for i in range(h)]


def plus_part(K: SemistableComplex) -> SemistableComplex:
    keep = {c.components[0] for c in K.cells.get(0, []) if c.compact}
    return K.restrict(lambda cid: cid in keep)


def complex_cohomology_action(K: SemistableComplex, restrict_to: str = "plus", mode: str = "exact") -> dict:
    """Characteristic polynomials of the deck action on H^0..H^n of the complex.

    ``mode="vanishing"`` (n = 2) derives H^2 from the cochain groups assuming
    H^1 = 0; ``mode="both"`` runs both and insists they agree.
    """
    if restrict_to not in ("plus", "all"):
        raise MonodromyError("restrict_to is 'plus' or 'all'")
    L = plus_part(K) if restrict_to == "plus" else K
    top = L.n
    deltas, dims = [], []
    e = L.e
    if mode in ("exact", "both"):
        for k in range(top + 1):
            d_out = coboundary(L, k) if k < top else []
            d_in = coboundary(L, k - 1) if k > 0 else []
            M = induced_action(d_in, d_out, L.deck(k), L.count(k))
            if M:
                try:
                    delta = cyclo_factor(charpoly_exact(M), e)
                except ValueError as exc:
                    raise MonodromyError(f"H^{k}: {exc}") from None
            else:
                delta = CycloProduct.one()
            deltas.append(delta)
            dims.append(len(M))
    if mode in ("vanishing", "both"):
        if top != 2:
            raise MonodromyError("vanishing mode is for n = 2")
        chains = [perm_charpoly(L.deck(k)) for k in range(3)]
        d_out = coboundary(L, 0)
        M0 = induced_action([], d_out, L.deck(0), L.count(0))
        h0 = cyclo_factor(charpoly_exact(M0), e) if M0 else CycloProduct.one()
        h2 = chains[2] * chains[0] / (chains[1] * h0)
        if not h2.is_polynomial():
            raise MonodromyError("H^1 does not vanish: Euler characteristic quotient is not a polynomial")
        vanish = [h0, CycloProduct.one(), h2]
        if mode == "both":
            if deltas != vanish:
                raise MonodromyError(f"exact and vanishing modes disagree: {[str(x) for x in deltas]} vs "
                                     f"{[str(x) for x in vanish]}")
        else:
            deltas = vanish
            dims = [x.degree for x in vanish]
    if mode not in ("exact", "vanishing", "both"):
        raise MonodromyError(f"unknown mode {mode}")
    return {"deltas": deltas, "dims": dims}


# ---------------------------------------------------------------------------
# cyclic covers of curves
# ---------------------------------------------------------------------------

def cyclic_cover_curve(N: int, fibers, base_chi: int, components: int = 1) -> dict:
    """Euler characteristic, genus and H^1 monodromy of a cyclic branched cover.

    ``fibers`` lists the number of preimages over each branch point.  The deck
    generator is the monodromy; on each of the ``components`` pieces its c-th
    power generates an N/c sheeted cover.
    """
    fibers = list(fibers)
    c = components
    if N < 1 or c < 1 or N % c:
        raise MonodromyError(f"{c} pieces do not divide {N} sheets")
    for r in fibers:
        if r < 1 or N % r or r % c:
            raise MonodromyError(f"fiber {r} incompatible with {N} sheets and {c} pieces")
    chi = N * base_chi - sum(N - r for r in fibers)
    n, rs, chi1 = N // c, [r // c for r in fibers], chi // c
    if chi % c or (2 - chi1) % 2 or chi1 > 2:
        raise MonodromyError(f"Euler characteristic {chi} gives no integral genus")
    g = (2 - chi1) // 2
    traces = []
    for k in range(1, 2 * g + 1):
        lef = chi1 if k % n == 0 else sum(r for r in rs if k % r == 0)
        traces.append(2 - lef)
    if g:
        try:
            delta = cyclo_factor(charpoly_from_traces(traces, 2 * g), n)
        except ValueError as exc:
            raise MonodromyError(str(exc)) from None
    else:
        delta = CycloProduct.one()
    delta = delta.substitute_power(c)
    if delta.degree != 2 * g * c:
        raise MonodromyError("trace data inconsistent with the genus")
    return {"euler": chi, "genus": g, "pieces": c, "delta_h1": delta}


def cyclic_cover_h1_formula(N: int, fibers, base_chi: int, components: int = 1) -> CycloProduct:
    """Closed form (t-1)^2 (t^N-1)^{-chi(base minus branch points)} / prod (t^r - 1), per piece."""
    c = components
    n = N // c
    facs = {1: 2}
    facs[n] = facs.get(n, 0) - (base_chi - len(fibers))
    for r in fibers:
        facs[r // c] = facs.get(r // c, 0) - 1
    return CycloProduct(facs).substitute_power(c)


# ---------------------------------------------------------------------------
# weight filtrations and Jordan blocks
# ---------------------------------------------------------------------------

def _power_ranks(M, limit):
    n = len(M)
    ranks = [n]
    P = identity(n)
    for _ in range(limit):
        P = mat_mul(P, M)
        ranks.append(rank(P))
        if ranks[-1] == ranks[-2]:
            break
    return ranks


def weight_filtration(Nmat, k: int) -> dict:
    """Weight filtration of a nilpotent endomorphism centred at ``k``."""
    n = len(Nmat)
    ranks = _power_ranks(Nmat, n + 1)
    if ranks[-1] != 0:
        raise MonodromyError("matrix is not nilpotent")
    r = ranks + [0] * (n + 2 - len(ranks) + 1)
    J = {}
    for l in range(1, n + 1):
        count = r[l - 1] - 2 * r[l] + r[l + 1]
        if count:
            J[l] = count
    graded: dict[int, int] = {}
    for l, count in J.items():
        for i in range(l):
            level = k - l + 1 + 2 * i
            graded[level] = graded.get(level, 0) + count
    for l in range(1, n + 1):
        lhs = graded.get(k - l + 1, 0) - graded.get(k - l - 1, 0)
        assert lhs == J.get(l, 0)
        assert graded.get(k + l, 0) == graded.get(k - l, 0)
    W, total = {}, 0
    for level in range(min(graded, default=k), max(graded, default=k) + 1):
        total += graded.get(level, 0)
        W[level] = total
    return {"J": J, "graded": dict(sorted(graded.items())), "W": W}


@dataclass
class GradedCharData:
    """Characteristic polynomials of the monodromy on each weight-graded piece.

    The part without eigenvalue 1 is centred at ``n``, the eigenvalue-1 part
    at ``n + 1``.
    """

    n: int
    levels: dict = field(default_factory=dict)  # weight -> CycloProduct

    def dims(self) -> dict:
        return {w: p.degree for w, p in sorted(self.levels.items())}

    def split(self):
        other, one = {}, {}
        for w, p in self.levels.items():
            a, b = p.split_one()
            other[w], one[w] = a, b
        return other, one

    def delta(self, l: int) -> CycloProduct:
        other, one = self.split()
        return other.get(self.n - l, CycloProduct.one()) * one.get(self.n + 1 - l, CycloProduct.one())

    def check_symmetry(self) -> bool:
        other, one = self.split()
        for part, centre in ((other, self.n), (one, self.n + 1)):
            for w, p in part.items():
                mirror = part.get(2 * centre - w, CycloProduct.one())
                if p.degree != mirror.degree:
                    return False
        return True


def jordan_from_graded(G: GradedCharData) -> tuple[dict, dict]:
    """Block polynomials B_l = Delta_{l-1} / Delta_{l+1} and the spectrum {(d, l): count}."""
    span = 2 * G.n + 4
    blocks, spectrum = {}, {}
    for l in range(1, span):
        B = G.delta(l - 1) / G.delta(l + 1)
        if not B.is_polynomial():
            raise MonodromyError(f"block polynomial of size {l} has negative exponents: {B}")
        if B.is_one():
            continue
        blocks[l] = B
        for d, c in B.canonical().items():
            spectrum[(d, l)] = c
    return blocks, spectrum


def jordan_blocks_matrix(M, e: int) -> dict:
    """Jordan spectrum {(d, l): count} of a matrix with eigenvalues of order dividing e."""
    n = len(M)
    spectrum = {}
    covered = 0
    for d in divisors(e):
        P = poly_eval_matrix(cyclotomic(d), M)
        ranks = _power_ranks(P, n + 1)
        ranks += [ranks[-1]] * 2
        phi = totient(d)
        for l in range(1, len(ranks) - 1):
            diff = ranks[l - 1] - 2 * ranks[l] + ranks[l + 1]
            if diff % phi:
                raise MonodromyError("rank differences not divisible by the cyclotomic degree")
            if diff:
                spectrum[(d, l)] = diff // phi
                covered += diff // phi * phi * l
    if covered != n:
        raise MonodromyError(f"eigenvalues are not roots of unity of order dividing {e}")
    return spectrum


def spectrum_to_json(spectrum: dict) -> list:
    return [{"order": d, "size": l, "count": c} for (d, l), c in sorted(spectrum.items())]
