"""Exact integer/rational linear algebra and cyclotomic-product arithmetic.

Matrices are plain lists of rows holding ``int`` or ``fractions.Fraction``
entries.  Polynomials are coefficient lists, lowest degree first.  Nothing in
here ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

Matrix = list  # list[list[int | Fraction]]
Poly = list  # list[int | Fraction], lowest degree first


# ---------------------------------------------------------------------------
# small number theory
# ---------------------------------------------------------------------------

def divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def totient(n: int) -> int:
    result, p, m = n, 2, n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * abs(v) // gcd(out, abs(v)) if v else 0
        if out == 0:
            return 0
    return out


def gcd_all(values: Iterable[int]) -> int:
    out = 0
    for v in values:
        out = gcd(out, v)
    return out


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def inverse_mod(a: int, n: int) -> int:
    """Smallest non-negative inverse of ``a`` modulo ``n`` (0 when ``n == 1``)."""
    if n == 1:
        return 0
    g, x, _ = ext_gcd(a % n, n)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {n}")
    return x % n


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else [()] * cols
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Matrix, v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Matrix, cols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(r) for r in zip(*a)]


def det(a: Matrix) -> Fraction:
    """Determinant by fraction-exact elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    result = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        result *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return result


def rref(a: Matrix, cols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q and the pivot column list."""
    m = [[Fraction(x) for x in row] for row in a]
    ncols = len(m[0]) if m else (cols or 0)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1]) if a and a[0] else 0


def rat_kernel_rank(a: Matrix, cols: int | None = None) -> tuple[int, list[list[Fraction]]]:
    """Rank of ``a`` and a basis of its right kernel ``{v : a v = 0}``.

    ``cols`` must be given when ``a`` has no rows.
    """
    ncols = len(a[0]) if a else cols
    if ncols is None:
        raise ValueError("column count unknown for an empty matrix")
    if not a:
        return 0, [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return len(pivots), basis


def solve_in_basis(basis: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    """Coordinates of ``v`` in the (independent) column family ``basis``.

    Raises ``ValueError`` when ``v`` is outside the span.
    """
    k = len(basis)
    n = len(v)
    aug = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        raise ValueError("vector not in span")
    coords = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        coords[p] = row[k]
    return coords


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``D = U M V`` with unimodular ``U`` and ``V``.

    The diagonal of ``D`` is non-negative and satisfies ``d_1 | d_2 | ...``.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, r)) for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility of the remaining block by the pivot
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def unimodular_inverse(u: Matrix) -> Matrix:
    n = len(u)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(u)]
    red, _ = rref(aug)
    inv = [[x for x in row[n:]] for row in red]
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def hermite_rows(vectors: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Row-style Hermite normal form basis of the lattice spanned by ``vectors``.

    Pivots are positive, entries above a pivot are reduced into ``[0, pivot)``
    and zero rows are dropped, so equal lattices give identical output.
    """
    a = [list(map(int, v)) for v in vectors if any(v)]
    r = 0
    for c in range(ncols):
        while True:
            rows_nz = [i for i in range(r, len(a)) if a[i][c]]
            if not rows_nz:
                break
            i = min(rows_nz, key=lambda k: abs(a[k][c]))
            a[r], a[i] = a[i], a[r]
            others = [k for k in range(r + 1, len(a)) if a[k][c]]
            if not others:
                break
            for k in others:
                q = a[k][c] // a[r][c]
                a[k] = [x - q * y for x, y in zip(a[k], a[r])]
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for k in range(r):
                q = a[k][c] // a[r][c]
                if q:
                    a[k] = [x - q * y for x, y in zip(a[k], a[r])]
            r += 1
    return [row for row in a[:r]]


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def poly_trim(p: Poly) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a = poly_trim(a)
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    rem = list(a)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1]
        if c:
            c = c // lead if isinstance(c, int) and lead in (1, -1) else Fraction(c) / lead
            quot[k] = c
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    return poly_trim(quot), poly_trim(rem[: len(b) - 1])


@lru_cache(maxsize=None)
def _cyclotomic(d: int) -> tuple[int, ...]:
    num: Poly = [1]
    den: Poly = [1]
    for m in divisors(d):
        mu = mobius(d // m)
        factor = [-1] + [0] * (m - 1) + [1]
        if mu == 1:
            num = poly_mul(num, factor)
        elif mu == -1:
            den = poly_mul(den, factor)
    q, r = poly_divmod(num, den)
    assert not r
    return tuple(int(c) for c in q)


def cyclotomic(d: int) -> Poly:
    """Coefficients of the cyclotomic polynomial Phi_d."""
    return list(_cyclotomic(d))


def poly_to_str(p: Poly, var: str = "t") -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and c in (1, -1):
            coef = "" if c == 1 else "-"
        else:
            coef = str(c)
        terms.append(f"{coef}{mono}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# characteristic polynomials
# ---------------------------------------------------------------------------

def charpoly_from_traces(traces: Sequence, dim: int, integral: bool = True) -> Poly:
    """Monic degree-``dim`` polynomial whose root power sums are ``traces``.

    ``traces[k-1]`` is the k-th power sum.  Newton's identities are solved in
    exact arithmetic; with ``integral`` set, a non-integral elementary symmetric
    function raises ``ValueError``.
    """
    if dim > len(traces):
        raise ValueError(f"need {dim} power sums, got {len(traces)}")
    elem = [Fraction(1)]
    for k in range(1, dim + 1):
        s = sum((-1) ** (i - 1) * elem[k - i] * Fraction(traces[i - 1]) for i in range(1, k + 1))
        ek = s / k
        if integral:
            if ek.denominator != 1:
                raise ValueError(f"inconsistent traces: e_{k} = {ek} is not integral")
            ek = Fraction(int(ek))
        elem.append(ek)
    coeffs = [(-1) ** k * elem[k] for k in range(dim + 1)]
    out = coeffs[::-1]
    return [int(c) if c.denominator == 1 else c for c in out]


def charpoly_exact(m: Matrix) -> Poly:
    """det(t I - M) via Hessenberg reduction over Q."""
    n = len(m)
    h = [[Fraction(x) for x in row] for row in m]
    for c in range(n - 2):
        pivot = next((r for r in range(c + 1, n) if h[r][c] != 0), None)
        if pivot is None:
            continue
        if pivot != c + 1:
            h[c + 1], h[pivot] = h[pivot], h[c + 1]
            for row in h:
                row[c + 1], row[pivot] = row[pivot], row[c + 1]
        for r in range(c + 2, n):
            f = h[r][c] / h[c + 1][c]
            if f:
                h[r] = [x - f * y for x, y in zip(h[r], h[c + 1])]
                for row in h:
                    row[c + 1] += f * row[r]
    # p_k = charpoly of the leading k x k block
    polys: list[Poly] = [[Fraction(1)]]
    for k in range(1, n + 1):
        pk = poly_mul([-h[k - 1][k - 1], Fraction(1)], polys[k - 1])
        prod = Fraction(1)
        for i in range(k - 1, 0, -1):
            prod *= h[i][i - 1]
            term = [prod * h[i - 1][k - 1] * c for c in polys[i - 1]]
            pk = [a - (term[j] if j < len(term) else 0) for j, a in enumerate(pk)]
        polys.append(poly_trim(pk) or [Fraction(0)])
    out = polys[n]
    out = out + [Fraction(0)] * (n + 1 - len(out))
    return [int(c) if c.denominator == 1 else c for c in out]


def poly_eval_matrix(p: Poly, m: Matrix) -> Matrix:
    n = len(m)
    out = zeros(n, n)
    for c in reversed(p):
        out = mat_mul(out, m)
        for i in range(n):
            out[i][i] += c
    return out


# ---------------------------------------------------------------------------
# cyclotomic products
# ---------------------------------------------------------------------------

def _clean(d: Mapping) -> tuple:
    return tuple(sorted((k, int(v)) for k, v in d.items() if v))


@dataclass(frozen=True)
class CycloProduct:
    """Formal product prod_m (t^m - 1)^{e_m}, optionally times opaque symbols.

    Symbols stand for characteristic polynomials the library cannot compute
    (they only ever get multiplied and divided).  Equality is decided on the
    canonical form, the exponent of every Phi_d.
    """

    factors: tuple = ()
    symbols: tuple = ()
    _canon: tuple = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        facs = dict(self.factors) if not isinstance(self.factors, dict) else self.factors
        syms = dict(self.symbols) if not isinstance(self.symbols, dict) else self.symbols
        for m in facs:
            if int(m) < 1:
                raise ValueError(f"factor order must be positive, got {m}")
        object.__setattr__(self, "factors", _clean({int(k): v for k, v in facs.items()}))
        object.__setattr__(self, "symbols", _clean(syms))
        canon: dict[int, int] = {}
        for m, e in self.factors:
            for d in divisors(m):
                canon[d] = canon.get(d, 0) + e
        object.__setattr__(self, "_canon", _clean(canon))

    @classmethod
    def of(cls, *pairs: tuple[int, int], **symbols: int) -> "CycloProduct":
        facs: dict[int, int] = {}
        for m, e in pairs:
            facs[m] = facs.get(m, 0) + e
        return cls(facs, symbols)

    @classmethod
    def one(cls) -> "CycloProduct":
        return cls()

    @classmethod
    def symbol(cls, name: str, exponent: int = 1) -> "CycloProduct":
        return cls({}, {name: exponent})

    @classmethod
    def from_canonical(cls, canon: Mapping[int, int], symbols: Mapping[str, int] | None = None):
        """Inverse of the canonical map: Phi_d = prod_{m | d} (t^m - 1)^{mu(d/m)}."""
        facs: dict[int, int] = {}
        for d, c in canon.items():
            if not c:
                continue
            for m in divisors(d):
                mu = mobius(d // m)
                if mu:
                    facs[m] = facs.get(m, 0) + c * mu
        return cls(facs, symbols or {})

    # -- views ---------------------------------------------------------------
    def canonical(self) -> dict[int, int]:
        return dict(self._canon)

    @property
    def factor_map(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def symbol_map(self) -> dict[str, int]:
        return dict(self.symbols)

    @property
    def degree(self) -> int:
        return sum(m * e for m, e in self.factors)

    def is_polynomial(self) -> bool:
        return all(c >= 0 for _, c in self._canon) and all(e >= 0 for _, e in self.symbols)

    def is_one(self) -> bool:
        return not self._canon and not self.symbols

    def eigen_one(self) -> int:
        """Exponent of Phi_1 = t - 1."""
        return dict(self._canon).get(1, 0)

    def split_one(self) -> tuple["CycloProduct", "CycloProduct"]:
        """(part without eigenvalue 1, pure (t-1)-power part)."""
        canon = self.canonical()
        e1 = canon.pop(1, 0)
        return CycloProduct.from_canonical(canon, self.symbol_map), CycloProduct.of((1, e1))

    def expand(self) -> Poly:
        if self.symbols:
            raise ValueError("cannot expand a product with symbolic factors")
        if not self.is_polynomial():
            raise ValueError("not a polynomial")
        out: Poly = [1]
        for d, c in self._canon:
            for _ in range(c):
                out = poly_mul(out, cyclotomic(d))
        return out

    # -- arithmetic ----------------------------------------------------------
    def _combine(self, other: "CycloProduct", sign: int) -> "CycloProduct":
        facs = dict(self.factors)
        for m, e in other.factors:
            facs[m] = facs.get(m, 0) + sign * e
        syms = dict(self.symbols)
        for s, e in other.symbols:
            syms[s] = syms.get(s, 0) + sign * e
        return CycloProduct(facs, syms)

    def __mul__(self, other: "CycloProduct") -> "CycloProduct":
        return self._combine(other, 1)

    def __truediv__(self, other: "CycloProduct") -> "CycloProduct":
        return self._combine(other, -1)

    def __pow__(self, k: int) -> "CycloProduct":
        return CycloProduct({m: e * k for m, e in self.factors},
                            {s: e * k for s, e in self.symbols})

    def substitute_power(self, c: int) -> "CycloProduct":
        """The product with t replaced by t^c."""
        return CycloProduct({m * c: e for m, e in self.factors}, dict(self.symbols))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloProduct):
            return NotImplemented
        return self._canon == other._canon and self.symbols == other.symbols

    def __hash__(self) -> int:
        return hash((self._canon, self.symbols))

    # -- presentation --------------------------------------------------------
    def __str__(self) -> str:
        num, den = [], []
        for m, e in self.factors:
            base = "(t-1)" if m == 1 else f"(t^{m}-1)"
            (num if e > 0 else den).append(base if abs(e) == 1 else f"{base}^{abs(e)}")
        for s, e in self.symbols:
            (num if e > 0 else den).append(s if abs(e) == 1 else f"{s}^{abs(e)}")
        top = "*".join(num) or "1"
        return top if not den else f"{top} / ({'*'.join(den)})"

    def canonical_str(self) -> str:
        parts = [f"Phi{d}" + (f"^{c}" if c != 1 else "") for d, c in self._canon]
        parts += [s + (f"^{e}" if e != 1 else "") for s, e in self.symbols]
        return "*".join(parts) or "1"

    def to_json(self) -> dict:
        out = {"factors": {str(m): e for m, e in self.factors},
               "canonical": {str(d): c for d, c in self._canon}}
        if self.symbols:
            out["symbols"] = {s: e for s, e in self.symbols}
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "CycloProduct":
        facs = {int(k): int(v) for k, v in data.get("factors", {}).items()}
        return cls(facs, {k: int(v) for k, v in data.get("symbols", {}).items()})


def cyclo_canonical(p: CycloProduct) -> dict[int, int]:
    return p.canonical()


def perm_charpoly_from_cycles(cycle_lengths: Iterable[int]) -> CycloProduct:
    return CycloProduct.of(*((n, 1) for n in cycle_lengths))


def cyclo_factor(p: Poly, e: int) -> CycloProduct:
    """Write a monic polynomial with e-th-root-of-unity roots as a CycloProduct.

    Raises ``ValueError`` when a non-cyclotomic residual factor remains.
    """
    p = poly_trim(p)
    if not p:
        raise ValueError("zero polynomial")
    canon: dict[int, int] = {}
    for d in divisors(e):
        if totient(d) > len(p) - 1:
            continue
        phi = cyclotomic(d)
        while len(p) >= len(phi):
            q, r = poly_divmod(p, phi)
            if r:
                break
            canon[d] = canon.get(d, 0) + 1
            p = q
    if len(p) != 1 or p[0] != 1:
        raise ValueError(f"residual non-cyclotomic factor {poly_to_str(p)} (orders dividing {e})")
    return CycloProduct.from_canonical(canon)
