"""Command line entry point: ``qmhs <command> ...``.

Exit status 0 on success, 1 when the input is rejected, 2 when a computation
contradicts itself.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from .exactalg import CycloProduct
from .monodromy import (
    GradedCharData,
    MonodromyError,
    acampo_charpoly,
    jordan_blocks_matrix,
    jordan_from_graded,
    spectrum_to_json,
)
from .qspace import Chart, QSpaceError, QuotientType, blowup_2d, blowup_3d_quotient, blowup_3d_smooth, normalize
from .semistable import (
    ComplexError,
    build_dual_complex,
    complex_from_json,
    semistable_report,
    to_dot,
)
from .steenbrink import InconsistentPage, SteenbrinkError, load_aux, mhs_curve, mhs_surface_partial
from .strata import StrataError, from_json, generate, validate


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------

def parse_type(text: str) -> QuotientType:
    """``smooth:3``, ``10:1,7`` or ``10:1,-3/10:-4,2``; a JSON object also works."""
    text = text.strip()
    try:
        if text.startswith("{"):
            data = json.loads(text)
            n = data.get("n")
            return QuotientType(tuple(data["d"]), tuple(tuple(r) for r in data["A"]), None if n is None else n + 1)
        if text.startswith("smooth:"):
            return QuotientType.smooth(int(text.split(":", 1)[1]))
        d, rows = [], []
        for part in text.split("/"):
            order, _, weights = part.partition(":")
            d.append(int(order))
            rows.append(tuple(int(x) for x in weights.split(",")))
        return QuotientType(tuple(d), tuple(rows))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read quotient type {text!r}: {exc}") from None


def parse_ints(text: str, count: int) -> tuple:
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"expected {count} integers, got {text!r}") from None
    if len(values) != count:
        raise InputError(f"expected {count} integers, got {text!r}")
    return values


def resolve(name: str) -> Path | None:
    """A path on disk, or a file shipped with the package (``.json`` optional)."""
    path = Path(name)
    if path.exists():
        return path
    data = resources.files("qmhs") / "data"
    base = path.name
    for candidate in (base, base + ".json"):
        item = data / candidate
        if item.is_file():
            return Path(str(item))
    return None


def read_json(name: str):
    path = resolve(name)
    if path is None:
        raise InputError(f"no such input {name!r}")
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{name}: invalid JSON ({exc})") from None


def load_divisor(args):
    if (args.input is None) == (args.gen is None):
        raise InputError("give exactly one of an input file or --gen")
    if args.gen is not None:
        return generate(args.gen)
    return from_json(read_json(args.input), strict=args.strict)


def _plain(obj):
    if isinstance(obj, (QuotientType, Chart, CycloProduct)):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    return obj


def emit(obj, fmt: str, text: str | None = None) -> None:
    if fmt == "text" and text is not None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(json.dumps(_plain(obj), indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_normalize(args):
    T = parse_type(args.type)
    N, rescale = normalize(T)
    emit({"input": T, "normalized": N, "rescale": list(rescale)}, args.format, f"{T} -> {N}  rescale {rescale}")


def _charts_text(res):
    lines = []
    for i, c in enumerate(res["charts"]):
        lines.append(f"chart {i}: {c.raw} ~ {c.target}  rescale {c.rescale}")
    return "\n".join(lines)


def cmd_blowup2(args):
    res = blowup_2d(parse_type(args.type), parse_ints(args.weights, 2))
    emit(res, args.format, f"e = {res['e']}\n" + _charts_text(res))


def cmd_blowup3(args):
    T = parse_type(args.type)
    w = parse_ints(args.weights, 3)
    res = blowup_3d_smooth(w) if T.is_smooth() and T.ncols == 3 else blowup_3d_quotient(T, w)
    emit(res, args.format, _charts_text(res))


def cmd_validate(args):
    sd = load_divisor(args)
    rep = validate(sd)
    text = "ok" if rep.ok else "\n".join(f"{ptr or '/'}: {msg}" for ptr, msg in rep.errors)
    emit(rep.to_json(), args.format, text)
    return 0 if rep.ok else 1


def cmd_semistable(args):
    sd = load_divisor(args)
    rep = semistable_report(sd)
    if sd.n == 2:
        # weight 4 does not involve the H^1 data, so placeholders suffice without --aux
        aux = load_aux_arg(args.aux) if args.aux else {
            "components": {sd.component(i).name: {"h1": f"H1({sd.component(i).name})"} for i in sd.exceptional_ids}}
        surf = mhs_surface_partial(sd, aux)
        rep["weight4"] = {"dim": surf.weights[4]["dim"], "delta": surf.weights[4]["delta"]}
    lines = [f"{rep['name']}: n = {rep['n']}, covering exponent e = {rep['e']}"]
    for c in rep["components"]:
        extra = f", genus {c['genus']}" if "genus" in c else ""
        lines.append(f"  {c['component']}: multiplicity {c['multiplicity']}, {c['pieces']} piece(s), "
                     f"Euler characteristic {c['euler']}{extra}")
    lines.append("  cells per dimension: " + ", ".join(f"{d}: {k}" for d, k in rep["complex"].items()))
    if "weight4" in rep:
        lines.append(f"  weight 4: dim {rep['weight4']['dim']}, {rep['weight4']['delta']}")
    emit(rep, args.format, "\n".join(lines))


def cmd_dualgraph(args):
    if args.input is not None and args.gen is None:
        data = read_json(args.input)
        if isinstance(data, dict) and "vertices" in data:
            K = complex_from_json(data)
        else:
            K = build_dual_complex(from_json(data, strict=args.strict))
    else:
        K = build_dual_complex(load_divisor(args))
    if args.format == "json":
        emit(K.to_json(), "json")
    else:
        sys.stdout.write(to_dot(K))


def cmd_charpoly(args):
    sd = load_divisor(args)
    delta = acampo_charpoly(sd)
    emit(delta.to_json(), args.format, f"{delta}\ncanonical: {delta.canonical_str()}")


def load_aux_arg(name):
    path = resolve(name)
    if path is None:
        raise InputError(f"no such auxiliary file {name!r}")
    return load_aux(path)


def cmd_mhs(args):
    sd = load_divisor(args)
    if sd.n == 1:
        rep = mhs_curve(sd)
    else:
        if not args.aux:
            raise InputError("surface reports need --aux with H^1 data of the exceptional pieces")
        rep = mhs_surface_partial(sd, load_aux_arg(args.aux))
    emit(rep.to_json(), args.format, rep.to_text())


def cmd_jordan(args):
    data = read_json(args.input)
    if not isinstance(data, dict):
        raise InputError("jordan input must be a JSON object")
    if "matrix" in data:
        M = data["matrix"]
        e = data.get("e")
        if not isinstance(e, int) or e < 1:
            raise InputError("matrix input needs a positive integer 'e'")
        spectrum = jordan_blocks_matrix(M, e)
        text = "\n".join(f"order {d}, size {l}: {c}" for (d, l), c in sorted(spectrum.items()))
        emit({"spectrum": spectrum_to_json(spectrum)}, args.format, text)
    elif "levels" in data:
        G = GradedCharData(int(data.get("n", 1)),
                           {int(w): CycloProduct.from_json(p) for w, p in data["levels"].items()})
        blocks, spectrum = jordan_from_graded(G)
        text = "\n".join(f"blocks of size {l}: {p}" for l, p in sorted(blocks.items()))
        emit({"blocks": {str(l): p for l, p in blocks.items()}, "spectrum": spectrum_to_json(spectrum)},
             args.format, text)
    else:
        raise InputError("jordan input needs 'matrix' or 'levels'")


COMMANDS = {
    "normalize": cmd_normalize,
    "blowup2": cmd_blowup2,
    "blowup3": cmd_blowup3,
    "validate": cmd_validate,
    "semistable": cmd_semistable,
    "dualgraph": cmd_dualgraph,
    "charpoly": cmd_charpoly,
    "mhs": cmd_mhs,
    "jordan": cmd_jordan,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmhs", description="Semistable reduction and monodromy of "
                                                             "Q-resolutions")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt="json", choices=("json", "text")):
        p.add_argument("--format", choices=choices, default=fmt)
        p.add_argument("--strict", action="store_true", help="reject unknown fields in input files")

    p = sub.add_parser("normalize", help="normalize a quotient type")
    p.add_argument("type")
    common(p)
    for name, count in (("blowup2", 2), ("blowup3", 3)):
        p = sub.add_parser(name, help=f"weighted blow-up charts ({count} weights)")
        p.add_argument("type")
        p.add_argument("--weights", required=True)
        common(p)
    for name in ("validate", "semistable", "charpoly", "mhs"):
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?")
        p.add_argument("--gen", help="generator spec such as one-branch:2,3")
        if name in ("mhs", "semistable"):
            p.add_argument("--aux", help="auxiliary H^1 data for surfaces")
        common(p, "text" if name in ("mhs", "charpoly") else "json")
    p = sub.add_parser("dualgraph", help="dual complex of the semistable reduction")
    p.add_argument("input", nargs="?")
    p.add_argument("--gen")
    common(p, "dot", ("dot", "json"))
    p = sub.add_parser("jordan", help="Jordan spectrum from a matrix or graded data file")
    p.add_argument("input")
    common(p)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if os.environ.get("QRES_STRICT") == "1":
        args.strict = True
    try:
        code = COMMANDS[args.command](args)
    except (InconsistentPage, MonodromyError, AssertionError) as exc:
        sys.stderr.write(f"internal inconsistency: {exc}\n")
        return 2
    except StrataError as exc:
        for ptr, msg in exc.issues:
            sys.stderr.write(f"{ptr or '/'}: {msg}\n")
        return 1
    except (InputError, QSpaceError, ComplexError, SteenbrinkError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
