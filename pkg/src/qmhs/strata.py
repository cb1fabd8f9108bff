"""Stratified Q-normal-crossing divisors: data model, JSON I/O, validation,
and generators for the curve and Yomdin-Le surface families."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import _toric
from .exactalg import lcm
from .qspace import QSpaceError, QuotientType, blowup_2d, is_invariant, multiplicity


class StrataError(ValueError):
    """Malformed input; ``issues`` lists (json pointer, message) pairs."""

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(f"{p or '/'}: {m}" for p, m in self.issues))


@dataclass(frozen=True)
class Component:
    id: int
    name: str
    role: str
    compact: bool
    multiplicity: int
    euler: int | None = None  # Euler characteristic of the closure, if not P^1

    @property
    def exceptional(self) -> bool:
        return self.role == "exceptional"


@dataclass(frozen=True)
class Stratum:
    components: tuple
    d: tuple
    A: tuple
    mult: tuple  # sorted (component id, multiplicity) pairs
    euler: int
    dim: int
    singular_label: str | None = None

    def local_type(self, ncols: int) -> QuotientType:
        return QuotientType(self.d, self.A, ncols)

    def germ(self, ncols: int) -> tuple:
        m = dict(self.mult)
        exps = [m.get(c, 0) for c in self.components]
        return tuple(exps + [0] * (ncols - len(exps)))

    @property
    def label(self) -> str:
        base = "&".join(map(str, self.components))
        return f"{base}@{self.singular_label}" if self.singular_label else base


@dataclass
class StratifiedDivisor:
    n: int
    components: list
    strata: list
    name: str = ""
    meta: dict = field(default_factory=dict)

    def component(self, cid: int) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(f"unknown component {cid}")

    def component_by_name(self, name: str) -> Component:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(f"unknown component {name!r}")

    @property
    def exceptional_ids(self) -> list[int]:
        return sorted(c.id for c in self.components if c.exceptional)

    def closure(self, ids: Iterable[int]) -> list[int]:
        """Indices of the strata inside the closure of the intersection of ``ids``."""
        want = set(ids)
        return [k for k, s in enumerate(self.strata) if want <= set(s.components)]

    # -- JSON -----------------------------------------------------------------
    def to_json(self) -> dict:
        comps = []
        for c in self.components:
            item = {"id": c.id, "name": c.name, "role": c.role, "compact": c.compact,
                    "multiplicity": c.multiplicity}
            if c.euler is not None:
                item["euler"] = c.euler
            comps.append(item)
        strata = []
        for s in self.strata:
            item = {"components": list(s.components), "d": list(s.d), "A": [list(r) for r in s.A],
                    "mult": {str(k): v for k, v in s.mult}, "euler": s.euler, "dim": s.dim}
            if s.singular_label is not None:
                item["singular_label"] = s.singular_label
            strata.append(item)
        out = {"n": self.n, "components": comps, "strata": strata}
        if self.name:
            out["name"] = self.name
        if self.meta:
            out["meta"] = self.meta
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOP = {"n", "components", "strata", "name", "meta"}
_COMP = {"id", "name", "role", "compact", "multiplicity", "euler"}
_STRATUM = {"components", "singular_label", "d", "A", "mult", "euler", "dim"}


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _reject_floats(obj, path, issues):
    if isinstance(obj, float):
        issues.append((path, "floating point values are not accepted"))
    elif isinstance(obj, dict):
        for k, v in obj.items():
            _reject_floats(v, f"{path}/{k}", issues)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _reject_floats(v, f"{path}/{i}", issues)


def from_json(data: Any, strict: bool = False) -> StratifiedDivisor:
    issues: list[tuple[str, str]] = []
    if not isinstance(data, dict):
        raise StrataError([("", "top level must be an object")])
    _reject_floats(data, "", issues)

    def unknown(obj, allowed, path):
        extra = sorted(set(obj) - allowed)
        if extra and strict:
            for k in extra:
                issues.append((f"{path}/{k}", "unknown field"))

    def need_int(obj, key, path, minimum=None):
        if key not in obj:
            issues.append((f"{path}/{key}", "missing"))
            return None
        v = obj[key]
        if not _is_int(v):
            issues.append((f"{path}/{key}", f"expected integer, got {v!r}"))
            return None
        if minimum is not None and v < minimum:
            issues.append((f"{path}/{key}", f"must be >= {minimum}, got {v}"))
            return None
        return v

    unknown(data, _TOP, "")
    n = need_int(data, "n", "", 1)
    comps: list[Component] = []
    for i, c in enumerate(data.get("components", []) if isinstance(data.get("components"), list) else []):
        path = f"/components/{i}"
        if not isinstance(c, dict):
            issues.append((path, "expected object"))
            continue
        unknown(c, _COMP, path)
        cid = need_int(c, "id", path, 0)
        mult = need_int(c, "multiplicity", path, 1)
        role = c.get("role")
        if role not in ("exceptional", "strict"):
            issues.append((f"{path}/role", f"must be 'exceptional' or 'strict', got {role!r}"))
        compact = c.get("compact")
        if not isinstance(compact, bool):
            issues.append((f"{path}/compact", "expected boolean"))
        euler = c.get("euler")
        if euler is not None and not _is_int(euler):
            issues.append((f"{path}/euler", "expected integer"))
        name = c.get("name", f"E{cid}")
        if not isinstance(name, str):
            issues.append((f"{path}/name", "expected string"))
        if None not in (cid, mult) and role in ("exceptional", "strict") and isinstance(compact, bool):
            comps.append(Component(cid, name, role, compact, mult, euler))
    if "components" not in data or not isinstance(data.get("components"), list):
        issues.append(("/components", "missing or not a list"))
    ids = [c.id for c in comps]
    if len(set(ids)) != len(ids):
        issues.append(("/components", "duplicate component ids"))

    strata: list[Stratum] = []
    raw_strata = data.get("strata")
    if not isinstance(raw_strata, list):
        issues.append(("/strata", "missing or not a list"))
        raw_strata = []
    for i, s in enumerate(raw_strata):
        path = f"/strata/{i}"
        if not isinstance(s, dict):
            issues.append((path, "expected object"))
            continue
        unknown(s, _STRATUM, path)
        cs = s.get("components")
        if not isinstance(cs, list) or not cs or not all(_is_int(x) for x in cs):
            issues.append((f"{path}/components", "expected a non-empty list of component ids"))
            continue
        if sorted(set(cs)) != cs:
            issues.append((f"{path}/components", "ids must be sorted and distinct"))
            continue
        d = s.get("d", [])
        A = s.get("A", [])
        if not isinstance(d, list) or not all(_is_int(x) and x >= 1 for x in d):
            issues.append((f"{path}/d", "expected a list of positive integers"))
            continue
        if not isinstance(A, list) or len(A) != len(d) or not all(
                isinstance(r, list) and all(_is_int(x) for x in r) for r in A):
            issues.append((f"{path}/A", "expected one integer row per order"))
            continue
        mult = s.get("mult")
        if not isinstance(mult, dict):
            issues.append((f"{path}/mult", "expected an object"))
            continue
        pairs = []
        for k, v in mult.items():
            try:
                kid = int(k)
            except ValueError:
                issues.append((f"{path}/mult/{k}", "key must be a component id"))
                continue
            if not _is_int(v) or v < 1:
                issues.append((f"{path}/mult/{k}", f"multiplicity must be a positive integer, got {v!r}"))
                continue
            pairs.append((kid, v))
        euler = need_int(s, "euler", path)
        dim = need_int(s, "dim", path, 0)
        label = s.get("singular_label")
        if label is not None and not isinstance(label, str):
            issues.append((f"{path}/singular_label", "expected string"))
        if euler is None or dim is None:
            continue
        strata.append(Stratum(tuple(cs), tuple(d), tuple(tuple(r) for r in A), tuple(sorted(pairs)),
                              euler, dim, label))
    if issues:
        raise StrataError(issues)
    meta = data.get("meta", {})
    return StratifiedDivisor(n, comps, strata, data.get("name", ""), meta if isinstance(meta, dict) else {})


def load(path, strict: bool = False) -> StratifiedDivisor:
    with open(path) as fh:
        data = json.load(fh)
    return from_json(data, strict=strict)


def save(sd: StratifiedDivisor, path) -> None:
    Path(path).write_text(sd.dumps())


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    errors: list
    mvalues: list

    def to_json(self) -> dict:
        return {"ok": self.ok, "errors": [{"path": p, "message": m} for p, m in self.errors],
                "m": self.mvalues}


def validate(sd: StratifiedDivisor) -> ValidationReport:
    errors: list[tuple[str, str]] = []
    ncols = sd.n + 1
    comp_ids = {c.id for c in sd.components}
    mvals: list = []
    sets = {s.components for s in sd.strata}
    for k, s in enumerate(sd.strata):
        path = f"/strata/{k}"
        mvals.append(None)
        if any(c not in comp_ids for c in s.components):
            errors.append((path, f"unknown component in {list(s.components)}"))
            continue
        if [c for c, _ in s.mult] != list(s.components):
            errors.append((f"{path}/mult", "multiplicities must be given for exactly the stratum's components"))
            continue
        for cid, m in s.mult:
            if sd.component(cid).multiplicity != m:
                errors.append((f"{path}/mult/{cid}",
                               f"{m} disagrees with component multiplicity {sd.component(cid).multiplicity}"))
        if not 0 <= s.dim <= sd.n + 1 - len(s.components):
            errors.append((f"{path}/dim", f"dimension {s.dim} impossible for {len(s.components)} components"))
        if s.dim == 0 and s.euler < 1:
            errors.append((f"{path}/euler", "a 0-dimensional stratum needs a positive point count"))
        try:
            T = s.local_type(ncols)
        except QSpaceError as exc:
            errors.append((f"{path}/A", str(exc)))
            continue
        germ = s.germ(ncols)
        if not is_invariant(T, germ):
            errors.append((path, f"germ {list(germ)} is not invariant on {T}"))
            continue
        mvals[-1] = multiplicity(T, germ)
        # closure consistency
        cs = s.components
        for r in range(1, len(cs)):
            for sub in _subsets(cs, r):
                if sub not in sets:
                    errors.append((path, f"intersection {list(sub)} implied by {list(cs)} has no stratum"))
    for c in sd.components:
        if (c.id,) not in sets:
            errors.append((f"/components/{[x.id for x in sd.components].index(c.id)}",
                           f"component {c.name} has no generic stratum"))
        if c.exceptional and c.compact:
            ambient = c.euler if c.euler is not None else (2 if sd.n == 1 else None)
            if ambient is not None:
                total = sum(sd.strata[k].euler for k in sd.closure([c.id]))
                if total != ambient:
                    errors.append((f"/components/{[x.id for x in sd.components].index(c.id)}",
                                   f"Euler characteristics over {c.name} sum to {total}, expected {ambient}"))
    errors = list(dict.fromkeys(errors))
    return ValidationReport(not errors, errors, mvals)


def _subsets(items, r):
    from itertools import combinations

    return [tuple(x) for x in combinations(items, r)]


def checked(sd: StratifiedDivisor) -> tuple[StratifiedDivisor, list[int]]:
    rep = validate(sd)
    if not rep.ok:
        raise StrataError(rep.errors)
    return sd, rep.mvalues


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def _stratum(components, T: QuotientType, mult: dict, euler, dim, label=None) -> Stratum:
    comps = tuple(sorted(components))
    return Stratum(comps, T.d, T.A, tuple(sorted((c, mult[c]) for c in comps)), euler, dim, label)


def _smooth(ncols):
    return QuotientType.smooth(ncols)


def gen_one_branch(p: int, q: int) -> StratifiedDivisor:
    """Weighted blow-up resolution of x^p + y^q."""
    if p < 2 or q < 2:
        raise StrataError([("", f"need p, q >= 2, got {(p, q)}")])
    g = gcd(p, q)
    p1, q1 = p // g, q // g
    L = lcm(p, q)
    E, C = 0, 1
    mult = {E: L, C: 1}
    comps = [Component(E, "E", "exceptional", True, L), Component(C, "C", "strict", False, 1)]
    strata = [
        _stratum([E], _smooth(2), mult, -g, 1),
        _stratum([E], QuotientType.cyclic(q1, -1, p1), mult, 1, 0, "P1"),
        _stratum([E], QuotientType.cyclic(p1, -1, q1), mult, 1, 0, "P2"),
        _stratum([E, C], _smooth(2), mult, g, 0),
        _stratum([C], _smooth(2), mult, 0, 1),
    ]
    return StratifiedDivisor(1, comps, strata, f"one-branch:{p},{q}", {"family": "one-branch", "params": [p, q]})


def _check_two_branch(p, q, r, s):
    if min(p, q, r, s) < 1:
        raise StrataError([("", "parameters must be positive")])
    if gcd(p, q) != 1 or gcd(r, s) != 1:
        raise StrataError([("", f"need gcd(p,q) = gcd(r,s) = 1, got {(p, q, r, s)}")])
    if not p * s < q * r:
        raise StrataError([("", f"need p/q < r/s, got {(p, q, r, s)}")])


def gen_two_branch(p: int, q: int, r: int, s: int) -> StratifiedDivisor:
    """Resolution of (x^p + y^q)(x^r + y^s): a (q,p) blow-up, then (s, qr-ps)."""
    _check_two_branch(p, q, r, s)
    E1, E2, C1, C2 = 0, 1, 2, 3
    delta = q * r - p * s
    mult = {E1: p * (q + s), E2: s * (p + r), C1: 1, C2: 1}
    comps = [
        Component(E1, "E1", "exceptional", True, mult[E1]),
        Component(E2, "E2", "exceptional", True, mult[E2]),
        Component(C1, "C1", "strict", False, 1),
        Component(C2, "C2", "strict", False, 1),
    ]
    # the weight vector (s, qr - ps) need not be primitive; only its ray matters
    g = gcd(s, delta)
    second = blowup_2d(QuotientType.cyclic(q, -1, p), (s // g, delta // g))
    chart1, chart2 = second["charts"]
    p2_type = chart1.target  # E2 is the exceptional (first) coordinate there
    q_type = QuotientType((delta, delta), ((s, -q), (-r, p)))
    if q_type != chart2.target:
        raise AssertionError("intersection point type disagrees with the blow-up chart")
    strata = [
        _stratum([E1], _smooth(2), mult, -1, 1),
        _stratum([E1], QuotientType.cyclic(p, -1, q), mult, 1, 0, "P1"),
        _stratum([E2], _smooth(2), mult, -1, 1),
        _stratum([E2], p2_type, mult, 1, 0, "P2"),
        _stratum([E1, E2], q_type, mult, 1, 0, "Q"),
        _stratum([E1, C1], _smooth(2), mult, 1, 0),
        _stratum([E2, C2], _smooth(2), mult, 1, 0),
        _stratum([C1], _smooth(2), mult, 0, 1),
        _stratum([C2], _smooth(2), mult, 0, 1),
    ]
    return StratifiedDivisor(1, comps, strata, f"two-branch:{p},{q},{r},{s}",
                             {"family": "two-branch", "params": [p, q, r, s]})


def gen_multi_branch(pairs: Sequence[Sequence[int]]) -> StratifiedDivisor:
    """Toric resolution of prod_i (x^{p_i} + y^{q_i}) with p_i/q_i increasing."""
    pairs = [(int(a), int(b)) for a, b in pairs]
    if not pairs or any(min(pq) < 1 for pq in pairs):
        raise StrataError([("", "need at least one pair of positive integers")])
    for (a, b), (c, d) in zip(pairs, pairs[1:]):
        if not a * d < b * c:
            raise StrataError([("", f"need p_i/q_i strictly increasing, got {pairs}")])
    k = len(pairs)
    P = sum(a for a, _ in pairs)
    Q = sum(b for _, b in pairs)
    vertices = []
    acc_p = 0
    for i in range(k + 1):
        vertices.append((acc_p, sum(b for _, b in pairs[i:])))
        if i < k:
            acc_p += pairs[i][0]
    assert vertices[0] == (0, Q) and vertices[-1] == (P, 0)
    rays = [((1, 0), None)]
    comps, mult = [], {}
    for i, (a, b) in enumerate(pairs):
        w = _toric.primitive((b, a))
        N = _toric.order_along(w, vertices)
        comps.append(Component(i, f"E{i + 1}", "exceptional", True, N))
        mult[i] = N
        rays.append((w, i))
    rays.append(((0, 1), None))
    for i in range(k):
        comps.append(Component(k + i, f"C{i + 1}", "strict", False, 1))
        mult[k + i] = 1
    strata = []
    for i, (a, b) in enumerate(pairs):
        di = gcd(a, b)
        strata.append(_stratum([i], _smooth(2), mult, -di, 1))
        strata.append(_stratum([i, k + i], _smooth(2), mult, di, 0))
        strata.append(_stratum([k + i], _smooth(2), mult, 0, 1))
    for (u, cu), (v, cv) in zip(rays, rays[1:]):
        T = _toric.cone_type([u, v], 2)
        # component coordinates first (by id), then the non-component axis
        order = sorted((0, 1), key=lambda j: (cu, cv)[j] if (cu, cv)[j] is not None else 10 ** 9)
        T = T.permute(order)
        ids = sorted(c for c in (cu, cv) if c is not None)
        if len(ids) == 2:
            strata.append(_stratum(ids, T, mult, 1, 0))
        else:
            strata.append(_stratum(ids, T, mult, 1, 0, "x-axis" if cu is None else "y-axis"))
    name = "multi-branch:" + ";".join(f"{a},{b}" for a, b in pairs)
    return StratifiedDivisor(1, comps, strata, name, {"family": "multi-branch", "params": [list(x) for x in pairs]})


# -- Yomdin-Le surfaces -------------------------------------------------------

def _yls(faces, vertices, cones, m, k, mu, branches, mult_point, label):
    """Assemble the surface divisor from a toric resolution of g(x,y) + z^k.

    ``faces`` maps a name to (normal, vertices in cyclic order); ``cones`` lists
    the maximal cones as tuples of ray names.  Global data of the projective
    tangent cone (degree m, one singular point of Milnor number mu) enters
    through its Euler characteristic.
    """
    chi_C = 3 * m - m * m + mu
    V, E0 = 0, 1
    rays = {"ex": (1, 0, 0), "ey": (0, 1, 0), "ez": (0, 0, 1)}
    comp_of = {"ez": E0}
    comps = [
        Component(V, "V", "strict", False, 1),
    ]
    mult = {V: 1, E0: m}
    fnames = list(faces)
    for i, fname in enumerate(fnames):
        w, _ = faces[fname]
        rays[fname] = _toric.primitive(w)
        comp_of[fname] = 2 + i
    for name, cid in comp_of.items():
        if cid != E0:
            r = rays[name]
            mult[cid] = m * r[2] + _toric.order_along(r, vertices)
    # closure Euler characteristics: toric surfaces count their fixed points
    two_cones = set()
    for cone in cones:
        for a in range(3):
            for b in range(a + 1, 3):
                two_cones.add(tuple(sorted((cone[a], cone[b]))))
    e0_curves = sum(1 for c in two_cones if "ez" in c and any(x in faces for x in c))
    comps.append(Component(E0, "E0", "exceptional", True, m, 3 + e0_curves))
    for fname in fnames:
        fixed = sum(1 for cone in cones if fname in cone)
        comps.append(Component(comp_of[fname], fname, "exceptional", True, mult[comp_of[fname]], fixed))

    strata = [
        _stratum([V], _smooth(3), mult, 0, 2),
        _stratum([E0], _smooth(3), mult, 3 - chi_C, 2),
        _stratum([V, E0], _smooth(3), mult, chi_C - 1, 1),
    ]

    def local(cone):
        names = list(cone)
        comps_in = sorted((comp_of[x], x) for x in names if x in comp_of)
        others = [x for x in names if x not in comp_of]
        ordered = [x for _, x in comps_in] + others
        T = _toric.cone_type([rays[x] for x in ordered], 3)
        return [c for c, _ in comps_in], T, others

    def with_v(T: QuotientType) -> QuotientType:
        # V is transverse to the orbit: prepend a weight-zero coordinate, drop the last one
        return QuotientType(T.d, tuple((0,) + row[:-1] for row in T.A), 3)

    for fname in fnames:
        w, fverts = faces[fname]
        area = _toric.twice_lattice_area(fverts, rays[fname])
        cid = comp_of[fname]
        strata.append(_stratum([cid], _smooth(3), mult, area, 2))
        strata.append(_stratum([V, cid], _smooth(3), mult, -area, 1))
    for c in sorted(two_cones):
        if not any(x in faces for x in c):
            continue
        ids, T, others = local(c)
        face = _toric.dual_face([rays[x] for x in c], vertices)
        ell = _toric.lattice_length(face)
        tag = None if not others else f"{'|'.join(sorted(c))}"
        strata.append(_stratum(ids, T, mult, -ell, 1, tag))
        if ell:
            strata.append(_stratum([V] + ids, with_v(T), mult, ell, 0, tag))
    for cone in cones:
        if not any(x in faces for x in cone):
            continue
        ids, T, others = local(cone)
        tag = None if not others else f"{'|'.join(sorted(cone))}"
        strata.append(_stratum(ids, T, mult, 1, 0, tag))
    sd = StratifiedDivisor(2, sorted(comps, key=lambda c: c.id), strata, label[0], label[1])
    sd.meta["tangent_cone"] = {"degree": m, "milnor": mu, "branches": branches, "point_multiplicity": mult_point,
                               "euler": chi_C}
    return sd


def _check_yls(m, k, mu, branches, point_mult):
    if k < 1:
        raise StrataError([("", f"need k >= 1, got {k}")])
    if m < max(point_mult, 2):
        raise StrataError([("", f"degree m = {m} below the multiplicity {point_mult} of the singular point")])
    if (m - 1) * (m - 2) < mu + branches - 1:
        raise StrataError([("", f"no irreducible curve of degree {m} with a singularity of Milnor number {mu}")])


def gen_yls_cusp(p: int, q: int, k: int, m: int) -> StratifiedDivisor:
    """f_m + z^{m+k} with tangent cone singular only at [0:0:1], locally x^q + y^p."""
    if min(p, q) < 2 or gcd(p, q) != 1:
        raise StrataError([("", f"need coprime p, q >= 2, got {(p, q)}")])
    mu = (p - 1) * (q - 1)
    _check_yls(m, k, mu, 1, min(p, q))
    vertices = [(q, 0, 0), (0, p, 0), (0, 0, k)]
    k1, k2 = gcd(k, p), gcd(k, q)
    w = (k * p // (k1 * k2), k * q // (k1 * k2), p * q // (k1 * k2))
    faces = {"E1": (w, vertices)}
    cones = [("E1", "ex", "ey"), ("E1", "ey", "ez"), ("E1", "ex", "ez")]
    return _yls(faces, vertices, cones, m, k, mu, 1, min(p, q),
                (f"yls-cusp:{p},{q},{k},{m}", {"family": "yls-cusp", "params": [p, q, k, m]}))


def gen_yls_two_branch(p: int, q: int, r: int, s: int, k: int, m: int) -> StratifiedDivisor:
    """f_m + z^{m+k} with tangent cone locally (x^p + y^q)(x^r + y^s) at [0:0:1]."""
    _check_two_branch(p, q, r, s)
    mu = (p - 1) * (q - 1) + (r - 1) * (s - 1) + 2 * p * s - 1
    _check_yls(m, k, mu, 2, min(p, q) + min(r, s))
    a, b, c, z = (p + r, 0, 0), (p, s, 0), (0, q + s, 0), (0, 0, k)
    vertices = [a, b, c, z]
    # E1 belongs to the branch x^p + y^q, E2 to x^r + y^s
    w1 = _toric.primitive((q * k, p * k, p * (q + s)))
    w2 = _toric.primitive((s * k, r * k, s * (p + r)))
    faces = {"E1": (w1, [b, c, z]), "E2": (w2, [a, b, z])}
    # the four-ray cone (ey, E2, E1, ex) is split along E2-ex
    cones = [("E2", "ey", "ez"), ("E1", "E2", "ez"), ("E1", "ex", "ez"), ("E2", "ex", "ey"), ("E1", "E2", "ex")]
    return _yls(faces, vertices, cones, m, k, mu, 2, min(p, q) + min(r, s),
                (f"yls-two-branch:{p},{q},{r},{s},{k},{m}",
                 {"family": "yls-two-branch", "params": [p, q, r, s, k, m]}))


GENERATORS = {
    "one-branch": (gen_one_branch, 2),
    "two-branch": (gen_two_branch, 4),
    "yls-cusp": (gen_yls_cusp, 4),
    "yls-two-branch": (gen_yls_two_branch, 6),
}


def generate(spec: str) -> StratifiedDivisor:
    """Build from ``family:a,b,...``; ``multi-branch:p1,q1;p2,q2;...`` is also accepted."""
    try:
        family, _, args = spec.partition(":")
        if family == "multi-branch":
            pairs = [tuple(int(x) for x in part.split(",")) for part in args.split(";")]
            return gen_multi_branch(pairs)
        fn, arity = GENERATORS[family]
        values = [int(x) for x in args.split(",")]
    except (KeyError, ValueError) as exc:
        raise StrataError([("", f"bad generator spec {spec!r}: {exc}")]) from None
    if len(values) != arity:
        raise StrataError([("", f"{family} takes {arity} parameters, got {len(values)}")])
    return fn(*values)
