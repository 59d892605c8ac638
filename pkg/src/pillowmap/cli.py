"""Command line interface, stable serialization, and SVG rendering.

Exit codes: 0 success, 1 validation problem, 2 budget exhaustion.  All
outputs are byte-deterministic for a fixed configuration: exact values
serialize as integer or fraction strings, floats only appear in fields
tagged _f64, and nothing is timestamped.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import geometry
from .classify import ClassificationVerdict, lattes_verdict
from .errors import CELL_BUDGET, FRONTIER_BUDGET, BudgetExceededError
from .exact import AlgebraicModulus, IntMat2
from .expansion import (
    DnReport,
    Lambda0Report,
    MengerReport,
    dn_report,
    lambda0_estimate,
    menger_verify,
)
from .metrics import (
    PairSample,
    VisualReport,
    default_sample_pairs,
    stress_sample_pairs,
    visual_report,
)
from .orbifold import INFINITY, OrbifoldData, Portrait, nu_minimal
from .pillow import (
    LattesTypeMap,
    PillowPoint,
    cell_counts,
    level_inverse,
    level_matrix,
    make_map,
)

# ---------------------------------------------------------------------------
# serialization


def fraction_to_str(value: Fraction) -> str:
    return str(Fraction(value))


def str_to_fraction(text: str) -> Fraction:
    return Fraction(text)


def modulus_to_dict(value: AlgebraicModulus) -> dict:
    return {
        "p": fraction_to_str(value.p),
        "q": fraction_to_str(value.q),
        "r": value.r,
        "value_f64": float(value),
    }


def modulus_from_dict(data: dict) -> AlgebraicModulus:
    return AlgebraicModulus(
        str_to_fraction(data["p"]), str_to_fraction(data["q"]), data["r"]
    )


def extnat_to_json(value):
    return "inf" if value is INFINITY else value


def extnat_from_json(value):
    return INFINITY if value == "inf" else int(value)


def dn_report_to_dict(report: DnReport) -> dict:
    return {
        "level": report.level,
        "dn": report.dn,
        "lower_bound": fraction_to_str(report.lower_bound),
        "lower_bound_f64": float(report.lower_bound),
        "upper_bound": fraction_to_str(report.upper_bound),
        "upper_bound_f64": float(report.upper_bound),
        "method": report.method,
        "agreement": report.agreement,
    }


def dn_report_from_dict(data: dict) -> DnReport:
    return DnReport(
        data["level"],
        data["dn"],
        str_to_fraction(data["lower_bound"]),
        str_to_fraction(data["upper_bound"]),
        data["method"],
        data["agreement"],
    )


def menger_report_to_dict(report: MengerReport) -> dict:
    return {
        "level": report.level,
        "dn": report.dn,
        "path_min_tiles": report.path_min_tiles,
        "max_disjoint_paths": report.max_disjoint_paths,
        "tile_budget": report.tile_budget,
        "within_single_tile_budget": report.within_single_tile_budget,
    }


def menger_report_from_dict(data: dict) -> MengerReport:
    return MengerReport(
        data["level"],
        data["dn"],
        data["path_min_tiles"],
        data["max_disjoint_paths"],
        data["tile_budget"],
        data["within_single_tile_budget"],
    )


def lambda0_report_to_dict(report: Lambda0Report) -> dict:
    return {
        "entries": [
            {"n": n, "dn": dn, "root_f64": root} for n, dn, root in report.entries
        ],
        "target": modulus_to_dict(report.target),
        "tolerance": report.tolerance,
        "within_tolerance": report.within_tolerance,
    }


def lambda0_report_from_dict(data: dict) -> Lambda0Report:
    return Lambda0Report(
        tuple((e["n"], e["dn"], e["root_f64"]) for e in data["entries"]),
        modulus_from_dict(data["target"]),
        data["tolerance"],
        data["within_tolerance"],
    )


def _point_to_json(p: PillowPoint) -> list[str]:
    return [fraction_to_str(p.x), fraction_to_str(p.y)]


def _point_from_json(data) -> PillowPoint:
    return PillowPoint(str_to_fraction(data[0]), str_to_fraction(data[1]))


def visual_report_to_dict(report: VisualReport) -> dict:
    return {
        "lambda0": modulus_to_dict(report.lambda0),
        "window": report.window,
        "samples": [
            {
                "x": _point_to_json(s.x),
                "y": _point_to_json(s.y),
                "m": s.m,
                "m_prime": s.m_prime,
                "m_prime_exact": s.m_prime_exact,
                "dn_counts": [list(pair) for pair in s.dn_counts],
            }
            for s in report.samples
        ],
        "excluded_pairs": report.excluded_pairs,
        "empirical_c": modulus_to_dict(report.empirical_c),
        "empirical_C": modulus_to_dict(report.empirical_C),
        "max_m_minus_mprime": report.max_m_minus_mprime,
        "tile_diameter_scale": modulus_to_dict(report.tile_diameter_scale),
        "tile_diameter_spread": [
            modulus_to_dict(report.tile_diameter_spread[0]),
            modulus_to_dict(report.tile_diameter_spread[1]),
        ],
    }


def visual_report_from_dict(data: dict) -> VisualReport:
    return VisualReport(
        lambda0=modulus_from_dict(data["lambda0"]),
        window=data["window"],
        samples=tuple(
            PairSample(
                _point_from_json(s["x"]),
                _point_from_json(s["y"]),
                s["m"],
                s["m_prime"],
                s["m_prime_exact"],
                tuple((n, c) for n, c in s["dn_counts"]),
            )
            for s in data["samples"]
        ),
        excluded_pairs=data["excluded_pairs"],
        empirical_c=modulus_from_dict(data["empirical_c"]),
        empirical_C=modulus_from_dict(data["empirical_C"]),
        max_m_minus_mprime=data["max_m_minus_mprime"],
        tile_diameter_scale=modulus_from_dict(data["tile_diameter_scale"]),
        tile_diameter_spread=(
            modulus_from_dict(data["tile_diameter_spread"][0]),
            modulus_from_dict(data["tile_diameter_spread"][1]),
        ),
    )


def verdict_to_dict(verdict: ClassificationVerdict) -> dict:
    return {
        "verdict": verdict.verdict,
        "algebraic_evidence": verdict.algebraic_evidence,
        "empirical_evidence": [
            {"n": n, "ratio_f64": r} for n, r in verdict.empirical_evidence
        ],
        "consistent": verdict.consistent,
    }


def verdict_from_dict(data: dict) -> ClassificationVerdict:
    return ClassificationVerdict(
        data["verdict"],
        data["algebraic_evidence"],
        tuple((e["n"], e["ratio_f64"]) for e in data["empirical_evidence"]),
        data["consistent"],
    )


def orbifold_data_to_dict(data: OrbifoldData) -> dict:
    return {
        "nu": {k: extnat_to_json(v) for k, v in sorted(data.nu.items())},
        "signature": [extnat_to_json(v) for v in data.signature],
        "chi": fraction_to_str(data.chi),
        "chi_f64": float(data.chi),
        "class": data.orbifold_class,
    }


def orbifold_data_from_dict(data: dict) -> OrbifoldData:
    return OrbifoldData(
        {k: extnat_from_json(v) for k, v in data["nu"].items()},
        tuple(extnat_from_json(v) for v in data["signature"]),
        str_to_fraction(data["chi"]),
        data["class"],
    )


def portrait_from_json_dict(data: dict) -> Portrait:
    if not isinstance(data, dict) or "nodes" not in data:
        raise ValueError("portrait JSON must be an object with a 'nodes' list")
    nodes = data["nodes"]
    if not isinstance(nodes, list):
        raise ValueError("'nodes' must be a list")
    triples = []
    for node in nodes:
        try:
            triples.append((node["id"], node["image"], node["degree"]))
        except (TypeError, KeyError) as exc:
            raise ValueError(f"malformed portrait node: {node!r}") from exc
    return Portrait.from_nodes(triples)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _csv_text(header, rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


# ---------------------------------------------------------------------------
# SVG rendering

_SVG_SCALE = 512
_WINDOW = (2, 1)  # two unit squares side by side
_FILL_EVEN = "#ffffff"
_FILL_ODD = "#000000"
_GRID_COLOR = "#808080"
_CONE_COLOR = "#cc0000"


def _svg_coord(x: Fraction, y: Fraction) -> tuple[str, str]:
    sx = float(x) * _SVG_SCALE
    sy = (_WINDOW[1] - float(y)) * _SVG_SCALE
    return (f"{sx:.12g}", f"{sy:.12g}")


def visible_cells(map: LattesTypeMap, n: int, *, budget: int = CELL_BUDGET):
    """Index squares whose open tile meets the open drawing window."""
    if 2 * map.degree**n > budget:
        raise BudgetExceededError("level too deep")
    p = level_matrix(map, n)
    # the window pushed forward by L**n is the parallelogram spanned by
    # 2*L**n(e1) and L**n(e2)
    window_mat = IntMat2(2 * p.a, p.b, 2 * p.c, p.d)
    corners = [(0, 0), (window_mat.a, window_mat.c), (window_mat.b, window_mat.d),
               (window_mat.a + window_mat.b, window_mat.c + window_mat.d)]
    xs = [c[0] for c in corners]
    ys = [c[1] for c in corners]
    return sorted(
        (i, j)
        for i in range(min(xs), max(xs))
        for j in range(min(ys), max(ys))
        if geometry.square_interior_overlaps_parallelogram(i, j, window_mat)
    )


def _clip_line_to_window(p0, direction):
    """Clip the line p0 + t*direction to the drawing window, exactly."""
    t_lo, t_hi = None, None
    for pos, vel, hi in ((p0[0], direction[0], _WINDOW[0]),
                         (p0[1], direction[1], _WINDOW[1])):
        if vel == 0:
            if pos < 0 or pos > hi:
                return None
            continue
        ta = (0 - pos) / vel
        tb = (hi - pos) / vel
        if ta > tb:
            ta, tb = tb, ta
        t_lo = ta if t_lo is None else max(t_lo, ta)
        t_hi = tb if t_hi is None else min(t_hi, tb)
    if t_lo is None or t_lo > t_hi:
        return None
    a = (p0[0] + t_lo * direction[0], p0[1] + t_lo * direction[1])
    b = (p0[0] + t_hi * direction[0], p0[1] + t_hi * direction[1])
    return a, b


def render_svg(map: LattesTypeMap, n: int, out=None, *,
               budget: int = CELL_BUDGET) -> str:
    """Deterministic SVG of the level-n decomposition over two faces.

    Checkerboard fill by index parity, level-n grid lines, and the four
    cone points marked.  Identical inputs yield identical bytes.
    """
    p = level_matrix(map, n)
    inv = level_inverse(map, n)
    width = _WINDOW[0] * _SVG_SCALE
    height = _WINDOW[1] * _SVG_SCALE
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<defs><clipPath id="window"><rect x="0" y="0" width="{width}" '
        f'height="{height}"/></clipPath></defs>',
        '<g clip-path="url(#window)">',
    ]
    for i, j in visible_cells(map, n, budget=budget):
        points = []
        for dx, dy in ((0, 0), (1, 0), (1, 1), (0, 1)):
            x, y = inv.apply((Fraction(i + dx), Fraction(j + dy)))
            points.append(",".join(_svg_coord(x, y)))
        fill = _FILL_EVEN if (i + j) % 2 == 0 else _FILL_ODD
        parts.append(f'<polygon points="{" ".join(points)}" fill="{fill}"/>')
    # level-n grid: images of the integer grid lines under L**(-n)
    cols = ((Fraction(inv.a), Fraction(inv.c)), (Fraction(inv.b), Fraction(inv.d)))
    corner_imgs = [(0, 0), (2 * p.a, 2 * p.c), (p.b, p.d), (2 * p.a + p.b, 2 * p.c + p.d)]
    for axis, (fixed_col, moving_col) in enumerate((cols, cols[::-1])):
        values = [c[axis] for c in corner_imgs]
        for k in range(min(values), max(values) + 1):
            base = (k * fixed_col[0], k * fixed_col[1])
            clipped = _clip_line_to_window(base, moving_col)
            if clipped is None:
                continue
            (x1, y1), (x2, y2) = clipped
            a = _svg_coord(x1, y1)
            b = _svg_coord(x2, y2)
            parts.append(
                f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" '
                f'stroke="{_GRID_COLOR}" stroke-width="1"/>'
            )
    parts.append("</g>")
    for cx, cy in ((0, 0), (1, 0), (0, 1), (1, 1)):
        sx, sy = _svg_coord(Fraction(cx), Fraction(cy))
        parts.append(f'<circle cx="{sx}" cy="{sy}" r="6" fill="{_CONE_COLOR}"/>')
    parts.append("</svg>")
    text = "\n".join(parts) + "\n"
    if out is not None:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    return text


# ---------------------------------------------------------------------------
# argument handling


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliError(message)


def _parse_matrix(text: str) -> LattesTypeMap:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"matrix must be four comma-separated integers, got {text!r}")
    try:
        a, b, c, d = (int(part) for part in parts)
    except ValueError:
        raise ValueError(f"matrix entries must be integers, got {text!r}") from None
    return make_map(IntMat2(a, b, c, d))


def _parse_levels(text: str) -> list[int]:
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise ValueError(f"empty level range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _build_parser() -> _Parser:
    parser = _Parser(prog="pillowmap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, levels=False, level=False):
        p.add_argument("--matrix", required=True, help="row-major a,b,c,d")
        if levels:
            p.add_argument("--levels", default="0..3", help="N or A..B")
        if level:
            p.add_argument("--level", type=int, default=1)
        p.add_argument("--format", default="text",
                       choices=("text", "json", "csv", "svg"))
        p.add_argument("--output", default=None, help="output path (default stdout)")

    p = sub.add_parser("cells", help="cell counts and Euler check per level")
    common(p, levels=True)
    p.set_defaults(handler=_cmd_cells)

    p = sub.add_parser("dn", help="joining numbers with norm bounds per level")
    common(p, levels=True)
    p.add_argument("--method", default="both", choices=("planar", "folded", "both"))
    p.set_defaults(handler=_cmd_dn)

    p = sub.add_parser("lambda0", help="expansion factor estimate")
    common(p)
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(handler=_cmd_lambda0)

    p = sub.add_parser("menger", help="disjoint-path verification at one level")
    common(p, level=True)
    p.set_defaults(handler=_cmd_menger)

    p = sub.add_parser("orbifold", help="orbifold data from a portrait JSON file")
    p.add_argument("--portrait", required=True, help="path to portrait JSON")
    p.add_argument("--format", default="text",
                   choices=("text", "json", "csv", "svg"))
    p.add_argument("--output", default=None)
    p.set_defaults(handler=_cmd_orbifold)

    p = sub.add_parser("metric", help="visual-metric sample report")
    common(p)
    p.add_argument("--pairs", default=None, help="JSON file with sample pairs")
    p.add_argument("--window", type=int, default=5)
    p.set_defaults(handler=_cmd_metric)

    p = sub.add_parser("classify", help="conformal-quotient verdict")
    common(p)
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("render", help="SVG of the level-n decomposition")
    common(p, level=True)
    p.set_defaults(handler=_cmd_render)
    return parser


def _budgets(args):
    raw = os.environ.get("PILLOW_BUDGET")
    if raw is None:
        return CELL_BUDGET, FRONTIER_BUDGET
    try:
        value = int(raw)
        if value <= 0:
            raise ValueError
    except ValueError:
        raise ValueError(f"PILLOW_BUDGET must be a positive integer, got {raw!r}") from None
    return value, value


def _cmd_cells(args) -> str:
    map = _parse_matrix(args.matrix)
    cell_budget, _ = _budgets(args)
    rows = []
    for n in _parse_levels(args.levels):
        v, e, f = cell_counts(map, n, budget=cell_budget)
        rows.append({"level": n, "vertices": v, "edges": e, "tiles": f,
                     "euler": v - e + f})
    if args.format == "json":
        return _json_text({"command": "cells", "matrix": args.matrix, "levels": rows})
    if args.format == "csv":
        return _csv_text(
            ["n", "vertices", "edges", "tiles", "euler"],
            [[r["level"], r["vertices"], r["edges"], r["tiles"], r["euler"]] for r in rows],
        )
    if args.format == "svg":
        raise ValueError("cells has no svg form")
    return "".join(
        f"n={r['level']} V={r['vertices']} E={r['edges']} F={r['tiles']} "
        f"euler={r['euler']}\n"
        for r in rows
    )


def _cmd_dn(args) -> str:
    map = _parse_matrix(args.matrix)
    cell_budget, frontier_budget = _budgets(args)
    reports = [
        dn_report(map, n, method=args.method, budget=cell_budget,
                  frontier_budget=frontier_budget)
        for n in _parse_levels(args.levels)
    ]
    if args.format == "json":
        return _json_text({
            "command": "dn",
            "matrix": args.matrix,
            "reports": [dn_report_to_dict(r) for r in reports],
        })
    if args.format == "csv":
        return _csv_text(
            ["n", "dn", "lower_bound", "upper_bound", "method", "agreement"],
            [
                [r.level, r.dn, fraction_to_str(r.lower_bound),
                 fraction_to_str(r.upper_bound), r.method, r.agreement]
                for r in reports
            ],
        )
    if args.format == "svg":
        raise ValueError("dn has no svg form")
    return "".join(
        f"n={r.level} dn={r.dn} bounds=[{fraction_to_str(r.lower_bound)}, "
        f"{fraction_to_str(r.upper_bound)}] method={r.method} "
        f"agreement={r.agreement}\n"
        for r in reports
    )


def _cmd_lambda0(args) -> str:
    map = _parse_matrix(args.matrix)
    _, frontier_budget = _budgets(args)
    report = lambda0_estimate(map, args.n_max, frontier_budget=frontier_budget)
    if args.format == "json":
        return _json_text({
            "command": "lambda0",
            "matrix": args.matrix,
            "report": lambda0_report_to_dict(report),
        })
    if args.format == "csv":
        return _csv_text(
            ["n", "dn", "root_f64"],
            [[n, dn, repr(root)] for n, dn, root in report.entries],
        )
    if args.format == "svg":
        raise ValueError("lambda0 has no svg form")
    lines = [
        f"n={n} dn={dn} root_f64={root!r}\n" for n, dn, root in report.entries
    ]
    lines.append(
        f"target_f64={float(report.target)!r} "
        f"within_tolerance={report.within_tolerance}\n"
    )
    return "".join(lines)


def _cmd_menger(args) -> str:
    map = _parse_matrix(args.matrix)
    cell_budget, frontier_budget = _budgets(args)
    report = menger_verify(map, args.level, budget=cell_budget,
                           frontier_budget=frontier_budget)
    if args.format == "json":
        return _json_text({
            "command": "menger",
            "matrix": args.matrix,
            "report": menger_report_to_dict(report),
        })
    if args.format == "csv":
        return _csv_text(
            ["n", "dn", "path_min_tiles", "max_disjoint_paths", "tile_budget",
             "within_single_tile_budget"],
            [[report.level, report.dn, report.path_min_tiles,
              report.max_disjoint_paths, report.tile_budget,
              report.within_single_tile_budget]],
        )
    if args.format == "svg":
        raise ValueError("menger has no svg form")
    return (
        f"n={report.level} dn={report.dn} N={report.path_min_tiles} "
        f"k={report.max_disjoint_paths} budget={report.tile_budget} "
        f"single_tile_ok={report.within_single_tile_budget}\n"
    )


def _cmd_orbifold(args) -> str:
    with open(args.portrait, encoding="utf-8") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed portrait JSON: {exc}") from None
    portrait = portrait_from_json_dict(raw)
    data = nu_minimal(portrait)
    if args.format == "json":
        return _json_text({
            "command": "orbifold",
            "data": orbifold_data_to_dict(data),
        })
    if args.format == "csv":
        return _csv_text(
            ["node", "nu"],
            [[k, extnat_to_json(v)] for k, v in sorted(data.nu.items())],
        )
    if args.format == "svg":
        raise ValueError("orbifold has no svg form")
    signature = ",".join(str(extnat_to_json(v)) for v in data.signature)
    return (
        f"signature=({signature}) chi={fraction_to_str(data.chi)} "
        f"class={data.orbifold_class}\n"
    )


def _load_pairs(path: str):
    with open(path, encoding="utf-8") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed pairs JSON: {exc}") from None
    if not isinstance(raw, dict) or "pairs" not in raw:
        raise ValueError("pairs JSON must be an object with a 'pairs' list")
    pairs = []
    for entry in raw["pairs"]:
        (x1, y1), (x2, y2) = entry
        pairs.append((
            PillowPoint(str_to_fraction(x1), str_to_fraction(y1)),
            PillowPoint(str_to_fraction(x2), str_to_fraction(y2)),
        ))
    return tuple(pairs)


def _cmd_metric(args) -> str:
    map = _parse_matrix(args.matrix)
    cell_budget, _ = _budgets(args)
    if args.pairs is not None:
        pairs = _load_pairs(args.pairs)
    else:
        pairs = default_sample_pairs() + stress_sample_pairs()
    report = visual_report(map, pairs, args.window, budget=cell_budget)
    if args.format == "json":
        return _json_text({
            "command": "metric",
            "matrix": args.matrix,
            "report": visual_report_to_dict(report),
        })
    if args.format == "csv":
        rows = []
        for idx, s in enumerate(report.samples):
            for n, count in s.dn_counts:
                rows.append([
                    idx,
                    fraction_to_str(s.x.x), fraction_to_str(s.x.y),
                    fraction_to_str(s.y.x), fraction_to_str(s.y.y),
                    s.m, s.m_prime, n, count,
                ])
        return _csv_text(
            ["pair", "x1", "y1", "x2", "y2", "m", "m_prime", "n", "count"], rows
        )
    if args.format == "svg":
        raise ValueError("metric has no svg form")
    lines = [
        f"pairs={len(report.samples)} excluded={report.excluded_pairs} "
        f"window={report.window}\n",
        f"empirical_c_f64={float(report.empirical_c)!r} "
        f"empirical_C_f64={float(report.empirical_C)!r}\n",
        f"max_m_minus_mprime={report.max_m_minus_mprime}\n",
    ]
    return "".join(lines)


def _cmd_classify(args) -> str:
    map = _parse_matrix(args.matrix)
    _, frontier_budget = _budgets(args)
    verdict = lattes_verdict(map, args.n_max, frontier_budget=frontier_budget)
    if args.format == "json":
        return _json_text({
            "command": "classify",
            "matrix": args.matrix,
            "verdict": verdict_to_dict(verdict),
        })
    if args.format == "csv":
        return _csv_text(
            ["n", "ratio_f64"],
            [[n, repr(r)] for n, r in verdict.empirical_evidence],
        )
    if args.format == "svg":
        raise ValueError("classify has no svg form")
    return (
        f"verdict={verdict.verdict} evidence={verdict.algebraic_evidence!r} "
        f"consistent={verdict.consistent}\n"
    )


def _cmd_render(args) -> str:
    map = _parse_matrix(args.matrix)
    cell_budget, _ = _budgets(args)
    if args.format not in ("svg", "text"):
        raise ValueError("render only produces svg")
    return render_svg(map, args.level, budget=cell_budget)


def run(argv=None) -> int:
    """Dispatch one CLI invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        text = args.handler(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output is not None:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
