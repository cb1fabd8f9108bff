"""First page of the weight spectral sequence and graded monodromy reports.

Curves get the full computation.  Surfaces get the page layout, the weight 0,
1 and 4 pieces and the Jordan summary they determine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .exactalg import CycloProduct, charpoly_exact, cyclo_factor
from .monodromy import (
    GradedCharData,
    MonodromyError,
    acampo_charpoly,
    complex_cohomology_action,
    cyclic_cover_curve,
    cyclic_cover_h1_formula,
    induced_action,
    jordan_from_graded,
    perm_charpoly,
    plus_part,
    spectrum_to_json,
)
from .semistable import SemistableComplex, build_dual_complex, curve_cover_data
from .strata import StratifiedDivisor, checked


class SteenbrinkError(ValueError):
    pass


class InconsistentPage(SteenbrinkError):
    """Input passed validation but the computed pieces contradict each other."""


# ---------------------------------------------------------------------------
# E1 page
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Entry:
    weight: int
    degree: int  # total degree; the entry contributes to H^degree(F)
    space: str
    dim: int
    twist: int = 0  # 0 when built from the exceptional part only
    delta: CycloProduct | None = None


@dataclass
class E1Page:
    n: int
    entries: list = field(default_factory=list)
    arrows: list = field(default_factory=list)  # (source space, target space, kind)

    def row(self, weight: int) -> list[Entry]:
        return sorted((e for e in self.entries if e.weight == weight), key=lambda e: e.degree)

    def dims(self, weight: int) -> list[int]:
        """Total dimension per degree along a row (mixed entries summed)."""
        out: dict[int, int] = {}
        for e in self.row(weight):
            out[e.degree] = out.get(e.degree, 0) + e.dim
        return [out[k] for k in sorted(out)]

    def euler(self) -> int:
        return sum((-1) ** e.degree * e.dim for e in self.entries)

    def to_json(self) -> dict:
        return {"n": self.n,
                "entries": [{"weight": e.weight, "degree": e.degree, "space": e.space, "dim": e.dim,
                             "twist": e.twist, **({"delta": e.delta.to_json()} if e.delta is not None else {})}
                            for e in self.entries],
                "arrows": [{"from": a, "to": b, "kind": k} for a, b, k in self.arrows]}


def gysin_matrix(K: SemistableComplex) -> list[list[int]]:
    """H^0(D^[1]) -> H^2(D_+^[0]) for curves: signed incidence, zero on strict vertices."""
    rows = [k for k, c in enumerate(K.cells.get(0, [])) if c.compact]
    pos = {v: i for i, v in enumerate(rows)}
    M = [[0] * K.count(1) for _ in rows]
    for j, faces in enumerate(K.faces.get(1, [])):
        for l, v in enumerate(faces):
            if v in pos:
                M[pos[v]][j] += (-1) ** (l + 1)
    return M


def e1_curve(K: SemistableComplex) -> E1Page:
    if K.n != 1:
        raise SteenbrinkError("curve page needs n = 1")
    L = plus_part(K)
    genus = 0
    for c in L.cells.get(0, []):
        deco = K.decorations.get(c.family, {})
        if "genus" not in deco:
            raise SteenbrinkError(f"vertex {c.label} has no genus decoration")
        genus += deco["genus"]
    page = E1Page(1)
    page.entries += [
        Entry(0, 0, "H0(D+[0])", L.count(0), delta=perm_charpoly(L.deck(0))),
        Entry(0, 1, "H0(D+[1])", L.count(1), delta=perm_charpoly(L.deck(1))),
        Entry(1, 1, "H1(D+[0])", 2 * genus),
        Entry(2, 1, "H0(D[1])", K.count(1), twist=1, delta=perm_charpoly(K.deck(1))),
        Entry(2, 2, "H2(D+[0])", L.count(0), delta=perm_charpoly(L.deck(0))),
    ]
    page.arrows += [("H0(D+[0])", "H0(D+[1])", "restriction"), ("H0(D[1])", "H2(D+[0])", "gysin")]
    return page


def _betti(betti: dict, name: str, key: str):
    try:
        value = betti[name][key]
    except (KeyError, TypeError):
        raise SteenbrinkError(f"missing Betti number {key} for {name}") from None
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise SteenbrinkError(f"Betti number {key} for {name} must be a non-negative integer")
    return value


def e1_surface(sd: StratifiedDivisor, K: SemistableComplex, betti: dict) -> E1Page:
    """Page for n = 2.

    ``betti`` maps exceptional component names to {"b1", "b2", "b3"} of one
    piece of the reduced surface over it.  Curve Betti numbers come from the
    cyclic covers and are checked against optional "curves" entries.
    """
    if K.n != 2:
        raise SteenbrinkError("surface page needs n = 2")
    mv = checked(sd)[1]
    L = plus_part(K)
    b = {1: 0, 2: 0, 3: 0}
    for c in L.cells.get(0, []):
        for k in b:
            b[k] += _betti(betti, c.label, f"b{k}")
    curve_h1 = {"all": 0, "plus": 0}
    pairs = sorted({c.components for c in K.cells.get(1, [])})
    supplied = betti.get("curves", {}) if isinstance(betti, dict) else {}
    for pair in pairs:
        data = curve_cover_data(sd, pair, mv)
        res = cyclic_cover_curve(data["sheets"], data["fibers"], data["base_euler"], data["pieces"])
        h1 = 2 * res["genus"] * res["pieces"]
        key = "&".join(sd.component(x).name for x in pair)
        if key in supplied and supplied[key] != h1:
            raise SteenbrinkError(f"curve {key}: supplied b1 = {supplied[key]}, covering data give {h1}")
        curve_h1["all"] += h1
        if all(sd.component(x).exceptional for x in pair):
            curve_h1["plus"] += h1
    page = E1Page(2)
    page.entries += [
        Entry(0, 0, "H0(D+[0])", L.count(0)),
        Entry(0, 1, "H0(D+[1])", L.count(1)),
        Entry(0, 2, "H0(D+[2])", L.count(2)),
        Entry(1, 1, "H1(D+[0])", b[1]),
        Entry(1, 2, "H1(D+[1])", curve_h1["plus"]),
        Entry(2, 1, "H0(D[1])", K.count(1), twist=1),
        Entry(2, 2, "H2(D+[0])", b[2]),
        Entry(2, 2, "H0(D[2])", K.count(2), twist=1),
        Entry(2, 3, "H2(D+[1])", L.count(1)),
        Entry(3, 2, "H1(D[1])", curve_h1["all"], twist=1),
        Entry(3, 3, "H3(D+[0])", b[3]),
        Entry(4, 2, "H0(D[2])", K.count(2), twist=2),
        Entry(4, 3, "H2(D[1])", K.count(1), twist=1),
        Entry(4, 4, "H4(D+[0])", L.count(0)),
    ]
    page.arrows += [
        ("H0(D+[0])", "H0(D+[1])", "restriction"), ("H0(D+[1])", "H0(D+[2])", "restriction"),
        ("H1(D+[0])", "H1(D+[1])", "restriction"),
        ("H0(D[1])", "H2(D+[0]) + H0(D[2])", "gysin+restriction"),
        ("H2(D+[0]) + H0(D[2])", "H2(D+[1])", "restriction+gysin"),
        ("H1(D[1])", "H3(D+[0])", "gysin"),
        ("H0(D[2])", "H2(D[1])", "gysin"), ("H2(D[1])", "H4(D+[0])", "gysin"),
    ]
    return page


def column_exact_solver(sequence) -> int:
    """Unknown term of an exact sequence 0 -> a_0 -> a_1 -> ... -> 0 (one entry is None)."""
    unknown = [i for i, x in enumerate(sequence) if x is None]
    if len(unknown) != 1:
        raise SteenbrinkError("exactly one unknown dimension is required")
    i = unknown[0]
    total = sum((-1) ** j * x for j, x in enumerate(sequence) if x is not None)
    value = -total * (-1) ** i
    if value < 0:
        raise SteenbrinkError(f"exact sequence {list(sequence)} forces a negative dimension {value}")
    return value


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class MHSReport:
    name: str
    n: int
    delta: CycloProduct
    weights: dict  # weight -> {"dim": int | None, "delta": CycloProduct | None, ...}
    jordan: dict  # "blocks": {size: CycloProduct} and/or summary entries
    spectrum: dict | None = None
    notes: list = field(default_factory=list)

    @property
    def total_dim(self) -> int:
        return self.delta.degree

    def dims(self) -> tuple:
        return tuple(self.weights[w]["dim"] for w in sorted(self.weights))

    def to_json(self) -> dict:
        weights = {}
        for w in sorted(self.weights):
            item: dict[str, Any] = {}
            for key, val in self.weights[w].items():
                item[key] = val.to_json() if isinstance(val, CycloProduct) else val
            weights[str(w)] = item
        jordan = {k: (v.to_json() if isinstance(v, CycloProduct) else
                      {str(a): b.to_json() for a, b in v.items()} if isinstance(v, dict) else v)
                  for k, v in self.jordan.items()}
        out = {"name": self.name, "n": self.n, "delta": self.delta.to_json(), "dim": self.total_dim,
               "weights": weights, "jordan": jordan}
        if self.spectrum is not None:
            out["spectrum"] = spectrum_to_json(self.spectrum)
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_text(self) -> str:
        lines = [f"{self.name}  (n = {self.n})", f"Delta(t) = {self.delta}", f"dim H^{self.n}(F) = {self.total_dim}",
                 "", f"{'weight':>6}  {'dim':>6}  char. polynomial"]
        for w in sorted(self.weights):
            item = self.weights[w]
            dim = "?" if item.get("dim") is None else str(item["dim"])
            delta = item.get("delta")
            lines.append(f"{w:>6}  {dim:>6}  {delta if delta is not None else 'not computed'}")
        lines.append("")
        for key, val in self.jordan.items():
            if isinstance(val, dict):
                for size, poly in sorted(val.items()):
                    lines.append(f"blocks of size {size}: {poly}")
            else:
                lines.append(f"{key.replace('_', ' ')}: {val}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def mhs_curve(sd: StratifiedDivisor, K: SemistableComplex | None = None) -> MHSReport:
    if sd.n != 1:
        raise SteenbrinkError("curve report needs n = 1")
    sd, mv = checked(sd)
    K = K or build_dual_complex(sd, mv)
    delta = acampo_charpoly(sd, mv)
    page = e1_curve(K)
    coh = complex_cohomology_action(K, "plus")
    gr0 = coh["deltas"][1]
    M = induced_action([], gysin_matrix(K), K.deck(1), K.count(1))
    gr2 = cyclo_factor(charpoly_exact(M), K.e) if M else CycloProduct.one()
    gr1 = delta / (gr0 * gr2)
    if not gr1.is_polynomial():
        raise InconsistentPage(f"weight 1 quotient {gr1} is not a polynomial")
    genus = page.row(1)[0].dim // 2
    if gr1.degree != 2 * genus:
        raise InconsistentPage(f"weight 1 has degree {gr1.degree}, genera give {2 * genus}")
    # second route for weight 1: the covers of the exceptional curves one by one
    cover = CycloProduct.one()
    for comp in sd.components:
        if comp.exceptional:
            data = curve_cover_data(sd, (comp.id,), mv)
            cover = cover * cyclic_cover_h1_formula(data["sheets"], data["fibers"], data["base_euler"],
                                                    data["pieces"])
    if cover != gr1:
        raise InconsistentPage(f"weight 1 from the covers {cover} differs from {gr1}")
    G = GradedCharData(1, {0: gr0, 1: gr1, 2: gr2})
    try:
        blocks, spectrum = jordan_from_graded(G)
    except MonodromyError as exc:
        raise InconsistentPage(str(exc)) from None
    weights = {0: {"dim": gr0.degree, "delta": gr0},
               1: {"dim": gr1.degree, "delta": gr1, "hodge": {"h01": genus, "h10": genus}},
               2: {"dim": gr2.degree, "delta": gr2}}
    return MHSReport(sd.name or "curve", 1, delta, weights, {"blocks": blocks}, spectrum)


def _aux_h1(aux: dict, name: str) -> CycloProduct:
    comps = aux.get("components", {}) if isinstance(aux, dict) else {}
    if name not in comps or "h1" not in comps[name]:
        raise SteenbrinkError(f"auxiliary data lacks H^1 of the piece over {name}")
    value = comps[name]["h1"]
    if isinstance(value, str):
        return CycloProduct.symbol(value)
    if isinstance(value, dict):
        return CycloProduct.from_json(value)
    raise SteenbrinkError(f"H^1 entry for {name} must be a symbol name or a factor map")


def mhs_surface_partial(sd: StratifiedDivisor, aux: dict, K: SemistableComplex | None = None) -> MHSReport:
    if sd.n != 2:
        raise SteenbrinkError("surface report needs n = 2")
    sd, mv = checked(sd)
    K = K or build_dual_complex(sd, mv)
    delta = acampo_charpoly(sd, mv)
    L = plus_part(K)
    notes = []

    # weight 0: top cohomology of the exceptional dual complex
    coh = complex_cohomology_action(K, "plus")
    gr0 = coh["deltas"][2]
    try:
        complex_cohomology_action(K, "plus", mode="both")
    except MonodromyError:
        notes.append("H^1 of the exceptional dual complex does not vanish")

    # weight 4: 0 -> gr4 -> H0(D[2]) -> H2(D[1]) -> H4(D+[0]) -> 0
    dim4 = column_exact_solver([None, K.count(2), K.count(1), L.count(0)])
    gr4 = perm_charpoly(K.deck(2)) * perm_charpoly(L.deck(0)) / perm_charpoly(K.deck(1))
    if not gr4.is_polynomial() or gr4.degree != dim4:
        raise InconsistentPage(f"weight 4 column gives {gr4}, expected dimension {dim4}")

    # weight 1: 0 -> H1(D+[0]) -> H1(D+[1]) -> gr1 -> 0
    curves = CycloProduct.one()
    exc = [c.id for c in sd.components if c.exceptional]
    pairs = sorted({s.components for s in sd.strata
                    if len(s.components) == 2 and all(x in exc for x in s.components)})
    for pair in pairs:
        data = curve_cover_data(sd, pair, mv)
        curves = curves * cyclic_cover_curve(data["sheets"], data["fibers"], data["base_euler"],
                                             data["pieces"])["delta_h1"]
    surfaces = CycloProduct.one()
    for cid in exc:
        surfaces = surfaces * _aux_h1(aux, sd.component(cid).name)
    gr1 = curves / surfaces
    if not (curves / CycloProduct(dict(surfaces.factors))).is_polynomial():
        raise InconsistentPage(f"weight 1 quotient {gr1} is not a polynomial")

    four_other, four_one = gr4.split_one()
    zero_other, _ = gr0.split_one()
    if four_other != zero_other:
        raise InconsistentPage(f"weights 0 and 4 disagree away from eigenvalue 1: {gr0} vs {gr4}")
    one_other, _ = gr1.split_one()
    summary = {
        "size3_not_one": four_other,
        "size2_not_one": one_other,
        "size2_one": four_one.eigen_one(),
    }
    weights = {0: {"dim": gr0.degree, "delta": gr0},
               1: {"dim": None if gr1.symbols else gr1.degree, "delta": gr1},
               2: {"dim": None, "delta": None},
               3: {"dim": None, "delta": None},
               4: {"dim": dim4, "delta": gr4}}
    if gr1.symbols:
        notes.append("weight 1 involves H^1 factors given only symbolically")
    return MHSReport(sd.name or "surface", 2, delta, weights, summary, None, notes)


def load_aux(path) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise SteenbrinkError("auxiliary file must hold a JSON object")
    return data
