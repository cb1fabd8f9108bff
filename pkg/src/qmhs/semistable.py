"""Combinatorics of the semistable reduction of a stratified divisor.

After the base change t -> t^e and normalization, the stratum S is covered
m(S) times without ramification, the preimage of E_i splits into c_i
connected pieces, and the deck generator shifts sheets cyclically.  The dual
complex records one cell per connected piece of every intersection.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .exactalg import gcd_all, lcm
from .strata import StrataError, StratifiedDivisor, checked


class ComplexError(ValueError):
    pass


def exponent(sd: StratifiedDivisor) -> int:
    return lcm(*(c.multiplicity for c in sd.components))


def _mvalues(sd):
    return checked(sd)[1]


def component_count(sd: StratifiedDivisor, i: int, mvalues=None) -> int:
    """Number of connected pieces over the closure of E_i (or of E_I for a tuple)."""
    ids = (i,) if isinstance(i, int) else tuple(i)
    for cid in ids:
        try:
            sd.component(cid)
        except KeyError:
            raise StrataError([("", f"unknown component id {cid}")]) from None
    mv = mvalues if mvalues is not None else _mvalues(sd)
    idx = sd.closure(ids)
    if not idx:
        raise StrataError([("", f"no strata over {list(ids)}")])
    return gcd_all(mv[k] for k in idx)


def component_euler(sd: StratifiedDivisor, i: int, mvalues=None) -> dict:
    """Euler characteristic (and genus when compact, n = 1) of each piece over E_i."""
    mv = mvalues if mvalues is not None else _mvalues(sd)
    c = component_count(sd, i, mv)
    total = sum(mv[k] * sd.strata[k].euler for k in sd.closure([i]))
    if total % c:
        raise StrataError([("", f"Euler characteristic {total} of the cover of {sd.component(i).name} "
                                f"is not divisible by its {c} pieces")])
    chi = total // c
    out = {"component": sd.component(i).name, "pieces": c, "euler": chi, "total_euler": total}
    comp = sd.component(i)
    if sd.n == 1 and comp.compact:
        if (2 - chi) % 2 or chi > 2:
            raise StrataError([("", f"{comp.name}: Euler characteristic {chi} gives no integral genus")])
        out["genus"] = (2 - chi) // 2
    return out


def curve_cover_data(sd: StratifiedDivisor, ids, mvalues=None) -> dict:
    """Sheets, branch fibers and base Euler characteristic of the cover of a curve.

    ``ids`` names a compact curve: a component when n = 1, a pair when n = 2.
    """
    ids = tuple(sorted(ids))
    mv = mvalues if mvalues is not None else _mvalues(sd)
    idx = sd.closure(ids)
    top = [k for k in idx if sd.strata[k].components == ids and sd.strata[k].dim == 1]
    if len(top) != 1:
        raise StrataError([("", f"curve {list(ids)} needs exactly one open stratum, found {len(top)}")])
    N = mv[top[0]]
    fibers = []
    for k in idx:
        s = sd.strata[k]
        if s.dim == 0:
            if N % mv[k]:
                raise StrataError([("", f"fiber {mv[k]} over {s.label} does not divide {N}")])
            fibers.extend([mv[k]] * s.euler)
        elif k != top[0]:
            raise StrataError([("", f"curve {list(ids)} has a second open stratum {s.label}")])
    base_chi = sum(sd.strata[k].euler for k in idx)
    return {"sheets": N, "fibers": sorted(fibers), "base_euler": base_chi,
            "pieces": gcd_all(mv[k] for k in idx)}


def riemann_hurwitz_check(sd: StratifiedDivisor, i: int, mvalues=None) -> dict:
    if sd.n != 1:
        raise StrataError([("", "Riemann-Hurwitz check is for curves")])
    mv = mvalues if mvalues is not None else _mvalues(sd)
    data = curve_cover_data(sd, (i,), mv)
    N = data["sheets"]
    rh = N * data["base_euler"] - sum(N - r for r in data["fibers"])
    euler = component_euler(sd, i, mv)
    return {"component": sd.component(i).name, "ok": rh == euler["total_euler"],
            "riemann_hurwitz": rh, "stratum_sum": euler["total_euler"]}


# ---------------------------------------------------------------------------
# dual complex
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    dim: int
    components: tuple  # component ids (names for level-B input) of the intersection
    family: int  # index of the orbit family
    copy: int
    compact: bool
    label: str = ""


@dataclass
class SemistableComplex:
    """Cells by dimension, faces by index, and the deck permutation."""

    n: int
    e: int
    cells: dict = field(default_factory=dict)  # dim -> list[Cell]
    faces: dict = field(default_factory=dict)  # dim -> list[tuple[int, ...]] (faces in dim-1)
    family_sizes: list = field(default_factory=list)
    names: dict = field(default_factory=dict)  # component id -> name
    decorations: dict = field(default_factory=dict)  # vertex family -> {"euler", "genus"}

    def deck(self, dim: int) -> list[int]:
        index = {(c.family, c.copy): k for k, c in enumerate(self.cells.get(dim, []))}
        out = []
        for c in self.cells.get(dim, []):
            size = self.family_sizes[c.family]
            out.append(index[(c.family, (c.copy + 1) % size)])
        return out

    def count(self, dim: int) -> int:
        return len(self.cells.get(dim, []))

    def orbit_sizes(self, dim: int) -> list[int]:
        fams = []
        for c in self.cells.get(dim, []):
            if c.copy == 0:
                fams.append(self.family_sizes[c.family])
        return fams

    def restrict(self, keep) -> "SemistableComplex":
        """Subcomplex of cells whose components all satisfy ``keep``."""
        out = SemistableComplex(self.n, self.e, names=dict(self.names), family_sizes=list(self.family_sizes),
                                decorations=dict(self.decorations))
        remap: dict[int, dict[int, int]] = {}
        for dim in sorted(self.cells):
            remap[dim] = {}
            cells, faces = [], []
            for k, c in enumerate(self.cells[dim]):
                if all(keep(x) for x in c.components):
                    remap[dim][k] = len(cells)
                    cells.append(c)
                    if dim:
                        faces.append(tuple(remap[dim - 1][f] for f in self.faces[dim][k]))
            out.cells[dim] = cells
            if dim:
                out.faces[dim] = faces
        return out

    def check(self) -> None:
        """Deck equivariance of incidences, deck^e = id, orbit sizes divide e."""
        for dim, cells in self.cells.items():
            perm = self.deck(dim)
            cur = list(range(len(cells)))
            for _ in range(self.e):
                cur = [perm[x] for x in cur]
            if cur != list(range(len(cells))):
                raise ComplexError(f"deck^{self.e} is not the identity in dimension {dim}")
            if dim:
                below = self.deck(dim - 1)
                for k, fs in enumerate(self.faces[dim]):
                    image = tuple(below[f] for f in fs)
                    if image != self.faces[dim][perm[k]]:
                        raise ComplexError(f"deck does not commute with incidences at {cells[k]}")
        for fam, size in enumerate(self.family_sizes):
            if self.e % size:
                raise ComplexError(f"orbit size {size} does not divide {self.e}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(c) for d, c in self.cells.items())

    def to_json(self) -> dict:
        out: dict[str, Any] = {"n": self.n, "e": self.e, "cells": {}}
        for dim in sorted(self.cells):
            items = []
            for k, c in enumerate(self.cells[dim]):
                item = {"components": [self.names.get(x, x) for x in c.components], "copy": c.copy,
                        "orbit": self.family_sizes[c.family], "compact": c.compact}
                if dim:
                    item["faces"] = list(self.faces[dim][k])
                if c.label:
                    item["label"] = c.label
                deco = self.decorations.get(c.family) if dim == 0 else None
                if deco:
                    item.update(deco)
                items.append(item)
            out["cells"][str(dim)] = items
        return out


def _name(sd, cid):
    return sd.component(cid).name


def build_dual_complex(sd: StratifiedDivisor, mvalues=None) -> SemistableComplex:
    if sd.n not in (1, 2):
        raise ComplexError("dual complexes are built for n = 1 and n = 2")
    mv = mvalues if mvalues is not None else _mvalues(sd)
    K = SemistableComplex(sd.n, exponent(sd), names={c.id: c.name for c in sd.components})
    compact = {c.id: c.compact and c.exceptional for c in sd.components}

    def new_family(size):
        K.family_sizes.append(size)
        return len(K.family_sizes) - 1

    vertex_of: dict[int, tuple[int, int]] = {}  # component -> (first index, copies)
    verts = []
    for comp in sorted(sd.components, key=lambda c: c.id):
        c = component_count(sd, comp.id, mv)
        fam = new_family(c)
        deco = component_euler(sd, comp.id, mv)
        K.decorations[fam] = {k: deco[k] for k in ("euler", "genus") if k in deco}
        vertex_of[comp.id] = (len(verts), c)
        for s in range(c):
            verts.append(Cell(0, (comp.id,), fam, s, compact[comp.id], comp.name))
    K.cells[0] = verts

    def attach_vertex(cid, s):
        first, c = vertex_of[cid]
        return first + s % c

    edges, edge_faces = [], []
    if sd.n == 1:
        families_between: dict[tuple, int] = {}
        for k, st in enumerate(sd.strata):
            if len(st.components) < 2:
                continue
            if len(st.components) > 2:
                raise ComplexError(f"stratum {st.label} meets more than two curves")
            i, j = st.components
            if i == j:
                raise ComplexError("self-intersecting component")
            for point in range(st.euler):
                size = mv[k]
                families_between[(i, j)] = families_between.get((i, j), 0) + 1
                fam = new_family(size)
                for s in range(size):
                    edges.append(Cell(1, (i, j), fam, s, compact[i] and compact[j], st.label))
                    edge_faces.append((attach_vertex(i, s), attach_vertex(j, s)))
        for (i, j), count in families_between.items():
            if count > 1 and vertex_of[i][1] > 1 and vertex_of[j][1] > 1:
                raise ComplexError(f"{count} edge orbits join the multi-copy pieces of {_name(sd, i)} and "
                                   f"{_name(sd, j)}; their relative offsets are not determined")
        K.cells[1], K.faces[1] = edges, edge_faces
        K.check()
        return K

    # n = 2: one edge family per double curve, one triangle family per triple point
    edge_of: dict[tuple, tuple[int, int]] = {}
    pairs = sorted({st.components for st in sd.strata if len(st.components) == 2})
    for i, j in pairs:
        c = component_count(sd, (i, j), mv)
        fam = new_family(c)
        edge_of[(i, j)] = (len(edges), c)
        for s in range(c):
            edges.append(Cell(1, (i, j), fam, s, compact[i] and compact[j]))
            edge_faces.append((attach_vertex(i, s), attach_vertex(j, s)))
    K.cells[1], K.faces[1] = edges, edge_faces
    tris, tri_faces = [], []
    for k, st in enumerate(sd.strata):
        if len(st.components) < 3:
            continue
        if len(st.components) > 3 or st.dim != 0:
            raise ComplexError(f"stratum {st.label} is not a triple point")
        if sum(not sd.component(x).exceptional for x in st.components) > 1:
            raise ComplexError(f"triple point {st.label} meets several strict components")
        i, j, l = st.components
        for point in range(st.euler):
            size = mv[k]
            fam = new_family(size)
            for s in range(size):
                faces = []
                for pair in ((j, l), (i, l), (i, j)):
                    first, c = edge_of[pair]
                    if size % c:
                        raise ComplexError(f"triple point {st.label} has {size} sheets, not a multiple of {c}")
                    faces.append(first + s % c)
                tris.append(Cell(2, (i, j, l), fam, s, all(compact[x] for x in (i, j, l)), st.label))
                tri_faces.append(tuple(faces))
    K.cells[2], K.faces[2] = tris, tri_faces
    K.check()
    return K


def complex_from_json(data: dict) -> SemistableComplex:
    """Build a complex from a direct description (vertices and edge orbits, n = 1)."""
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise ComplexError("complex input needs 'vertices' and 'edges'")
    n = data.get("n", 1)
    if n != 1:
        raise ComplexError("direct complex input supports n = 1")
    K = SemistableComplex(1, 1)
    index: dict[str, tuple[int, int]] = {}
    verts = []
    sizes = []
    for pos, v in enumerate(data["vertices"]):
        name = v.get("name")
        copies = v.get("copies", 1)
        if not isinstance(name, str) or name in index:
            raise ComplexError(f"/vertices/{pos}: vertex names must be distinct strings")
        if not isinstance(copies, int) or isinstance(copies, bool) or copies < 1:
            raise ComplexError(f"/vertices/{pos}/copies: positive integer required")
        K.family_sizes.append(copies)
        fam = len(K.family_sizes) - 1
        K.names[pos] = name
        deco = {k: v[k] for k in ("genus", "euler") if k in v}
        if deco:
            K.decorations[fam] = deco
        index[name] = (len(verts), copies)
        for s in range(copies):
            verts.append(Cell(0, (pos,), fam, s, bool(v.get("compact", True)), name))
        sizes.append(copies)
    K.cells[0] = verts
    edges, faces = [], []
    between: dict[tuple, int] = {}
    for pos, e in enumerate(data["edges"]):
        ends = e.get("ends")
        orbit = e.get("orbit", 1)
        count = e.get("count", 1)
        if not (isinstance(ends, list) and len(ends) == 2 and all(x in index for x in ends)):
            raise ComplexError(f"/edges/{pos}/ends: two known vertex names required")
        if ends[0] == ends[1]:
            raise ComplexError(f"/edges/{pos}: self-intersecting component")
        for key, val in (("orbit", orbit), ("count", count)):
            if not isinstance(val, int) or isinstance(val, bool) or val < 1:
                raise ComplexError(f"/edges/{pos}/{key}: positive integer required")
        (fa, ca), (fb, cb) = index[ends[0]], index[ends[1]]
        if orbit % ca or orbit % cb:
            raise ComplexError(f"/edges/{pos}: orbit {orbit} not a multiple of the vertex copies")
        pa = list(index).index(ends[0])
        pb = list(index).index(ends[1])
        key = tuple(sorted((pa, pb)))
        between[key] = between.get(key, 0) + count
        for _ in range(count):
            K.family_sizes.append(orbit)
            fam = len(K.family_sizes) - 1
            for s in range(orbit):
                edges.append(Cell(1, key, fam, s, True, f"{ends[0]}-{ends[1]}"))
                faces.append(tuple(sorted((fa + s % ca, fb + s % cb))))
    for key, count in between.items():
        if count > 1 and sizes[key[0]] > 1 and sizes[key[1]] > 1:
            raise ComplexError("several edge orbits join the same multi-copy vertex families")
    K.cells[1], K.faces[1] = edges, faces
    K.e = data.get("e") or lcm(*K.family_sizes)
    K.check()
    return K


def chain_complex_input(pairs) -> dict:
    """Direct complex input for prod (x^{p_i} + y^{q_i}): a chain with e_i parallel edges."""
    k = len(pairs)
    verts = [{"name": f"E{i + 1}", "copies": 1} for i in range(k)]
    edges = []
    for i in range(k - 1):
        P = sum(p for p, _ in pairs[: i + 1])
        Q = sum(q for _, q in pairs[i + 1:])
        edges.append({"ends": [f"E{i + 1}", f"E{i + 2}"], "orbit": gcd_all([P, Q])})
    return {"n": 1, "vertices": verts, "edges": edges}


def to_dot(K: SemistableComplex) -> str:
    palette = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4", "gold4"]
    lines = ["graph dual_complex {", "  node [shape=circle];"]
    for k, c in enumerate(K.cells.get(0, [])):
        name = K.names.get(c.components[0], c.components[0])
        deco = K.decorations.get(c.family, {})
        text = f"{name}#{c.copy}"
        if "genus" in deco:
            text += f"\\ng={deco['genus']}"
        style = "" if c.compact else ", style=dashed"
        lines.append(f'  v{k} [label="{text}", color={palette[c.family % len(palette)]}{style}];')
    for k, (c, (a, b)) in enumerate(zip(K.cells.get(1, []), K.faces.get(1, []))):
        style = "" if c.compact else ", style=dashed"
        lines.append(f"  v{a} -- v{b} [color={palette[c.family % len(palette)]}{style}];")
    for k, (c, fs) in enumerate(zip(K.cells.get(2, []), K.faces.get(2, []))):
        lines.append(f"  // triangle {k} copy {c.copy} over {c.label or c.components}: edges {list(fs)}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def semistable_report(sd: StratifiedDivisor) -> dict:
    mv = _mvalues(sd)
    comps = []
    for c in sorted(sd.components, key=lambda x: x.id):
        item = component_euler(sd, c.id, mv)
        item["multiplicity"] = c.multiplicity
        item["role"] = c.role
        if sd.n == 1:
            rh = riemann_hurwitz_check(sd, c.id, mv)
            item["riemann_hurwitz"] = rh["riemann_hurwitz"]
            item["riemann_hurwitz_ok"] = rh["ok"]
        comps.append(item)
    K = build_dual_complex(sd, mv)
    strata = [{"stratum": s.label, "m": m, "euler": s.euler, "dim": s.dim} for s, m in zip(sd.strata, mv)]
    return {"name": sd.name, "n": sd.n, "e": exponent(sd), "components": comps, "strata": strata,
            "complex": {str(d): K.count(d) for d in sorted(K.cells)}}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
