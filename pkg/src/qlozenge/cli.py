"""Command line surface: evaluate formulas, count and enumerate tilings,
run identity suites, probe four-point removals, and render SVG pictures.

Output is deterministic byte for byte: collections are sorted before
emission and coordinates use a fixed decimal precision.  Exit codes:
0 success (and all Pass for verify/kuo), 1 a check failed, 2 usage
error, 3 an enumeration budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

from .enumeration import (
    DEFAULT_TRIANGLE_BUDGET,
    BudgetExceeded,
    count_tilings,
    gen_function,
    iter_tilings,
    region_digest,
    tiling_json,
)
from .formulas import (
    hex_M1,
    hex_M2,
    k_region_M2,
    macmahon_q,
    magnet_M2,
    magnet_M3,
    semihex_dents_M2,
    theorem_main,
    theorem_qmain,
)
from .lattice import (
    DOWN,
    LEFT,
    RIGHT,
    UP,
    VERTICAL,
    Lozenge,
    Region,
    RegionParams,
    Triangle,
    build_hexagon,
    build_k_region,
    build_magnet_bar,
    build_q_region,
    build_semihexagon_dented,
    build_shamrock,
)
from .verify import (
    PASS,
    check_kuo,
    four_point_marks,
    report_json,
    report_line,
    run_suite,
    suite_names,
)
from .weights import weight_from_name

DEFAULT_MAX_STATES = 1 << 22

_BUILDER_NAMES = ("hexagon", "semihexagon", "k_region", "magnet_bar", "q_region")
_FORMULA_NAMES = (
    "macmahon",
    "main",
    "qmain",
    "hex_m1",
    "hex_m2",
    "semihex",
    "k_region",
    "magnet_m2",
    "magnet_m3",
)


# ---------------------------------------------------------------------------
# parameter plumbing


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(piece) for piece in text.split(",")]
    except ValueError:
        raise ValueError("expected comma-separated integers, got %r" % (text,))


def _need_abc(args) -> tuple[int, int, int]:
    if args.params is not None:
        values = _int_list(args.params)
        if len(values) != 3:
            raise ValueError("expected 3 values in --params a,b,c")
        return (values[0], values[1], values[2])
    if args.a is None or args.b is None or args.c is None:
        raise ValueError("need --a, --b and --c (or --params a,b,c)")
    return (args.a, args.b, args.c)


def _need_params(args, arity: int, names: str) -> tuple[int, ...]:
    if args.params is None:
        raise ValueError("need --params %s" % names)
    values = _int_list(args.params)
    if len(values) != arity:
        raise ValueError(
            "expected %d values in --params %s, got %d" % (arity, names, len(values))
        )
    return tuple(values)


def _need_semihex(args) -> tuple[int, int, list[int]]:
    if args.a is None or args.b is None:
        raise ValueError("need --a and --b for the semihexagon")
    dents = _int_list(args.dents) if args.dents is not None else []
    return (args.a, args.b, dents)


def _build_region(builder: str, args) -> Region:
    if builder == "hexagon":
        return build_hexagon(*_need_abc(args))
    if builder == "semihexagon":
        a, b, dents = _need_semihex(args)
        return build_semihexagon_dented(a, b, dents)
    if builder == "k_region":
        return build_k_region(*_need_params(args, 5, "a,x,y,z,t"))
    if builder == "magnet_bar":
        return build_magnet_bar(*_need_params(args, 6, "m,a,x,y,z,t"))
    return build_q_region(RegionParams(*_need_params(args, 8, "x,y,z,t,m,a,b,c")))


def _parse_marks(text: str) -> list[Triangle]:
    marks = []
    for piece in text.split(";"):
        bits = piece.split(",")
        if len(bits) != 3 or bits[2] not in (UP, DOWN):
            raise ValueError(
                "marks look like row,pos,U or row,pos,D joined by semicolons"
            )
        try:
            marks.append(Triangle(int(bits[0]), int(bits[1]), bits[2]))
        except ValueError:
            raise ValueError("bad mark %r" % (piece,))
    return marks


# ---------------------------------------------------------------------------
# SVG rendering

_ROOT3_HALF = math.sqrt(3.0) / 2.0
_LOZENGE_FILL = {RIGHT: "#c8c8c8", LEFT: "#8f8f8f", VERTICAL: "#efefef"}


def _point(i: int, j: int) -> tuple[float, float]:
    return (i + j / 2.0, -j * _ROOT3_HALF)


def _fmt(value: float) -> str:
    return "%.3f" % (value + 0.0)


def _triangle_corners(t: Triangle) -> list[tuple[int, int]]:
    r, p = t.row, t.pos
    if t.orient == UP:
        return [(p, r), (p + 1, r), (p, r + 1)]
    return [(p + 1, r), (p, r + 1), (p + 1, r + 1)]


def _lozenge_corners(loz: Lozenge) -> list[tuple[int, int]]:
    r, p = loz.first.row, loz.first.pos
    if loz.orientation == RIGHT:
        return [(p, r), (p + 1, r), (p + 1, r + 1), (p, r + 1)]
    if loz.orientation == LEFT:
        return [(p, r), (p + 1, r), (p, r + 1), (p - 1, r + 1)]
    return [(p + 1, r - 1), (p + 1, r), (p, r + 1), (p, r)]


def _points_attr(corners) -> str:
    pieces = []
    for i, j in corners:
        x, y = _point(i, j)
        pieces.append("%s,%s" % (_fmt(x), _fmt(y)))
    return " ".join(pieces)


def _boundary_segments(triangles):
    count: dict = {}
    for t in sorted(triangles):
        corners = _triangle_corners(t)
        for k in range(3):
            edge = tuple(sorted((corners[k], corners[(k + 1) % 3])))
            count[edge] = count.get(edge, 0) + 1
    return sorted(edge for edge, n in count.items() if n == 1)


def _path_attr(segments) -> str:
    pieces = []
    for (i1, j1), (i2, j2) in segments:
        x1, y1 = _point(i1, j1)
        x2, y2 = _point(i2, j2)
        pieces.append(
            "M %s %s L %s %s" % (_fmt(x1), _fmt(y1), _fmt(x2), _fmt(y2))
        )
    return " ".join(pieces)


def _recorded_hole(region: Region) -> set:
    if region.params is None:
        return set()
    p = region.params
    return build_shamrock(p.m, p.a, p.b, p.c, (p.x + p.c, 0))


def render_svg(region: Region, tiling: "Optional[frozenset[Lozenge]]" = None) -> str:
    """Static picture of a region, or of one of its tilings.

    With a tiling the three lozenge orientations get three fill shades;
    without one the unit triangles are drawn bare.  The region outline is
    stroked on top, and the notch is shaded and outlined whenever the
    region's recorded parameters describe one.
    """
    corners = [c for t in sorted(region.triangles) for c in _triangle_corners(t)]
    corners.extend(c for t in sorted(_recorded_hole(region)) for c in _triangle_corners(t))
    xs = [_point(i, j)[0] for i, j in corners] or [0.0, 1.0]
    ys = [_point(i, j)[1] for i, j in corners] or [-1.0, 0.0]
    pad = 0.5
    min_x, min_y = min(xs) - pad, min(ys) - pad
    width, height = max(xs) + pad - min_x, max(ys) + pad - min_y
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="%s %s %s %s" '
        'width="%d" height="%d">'
        % (
            _fmt(min_x),
            _fmt(min_y),
            _fmt(width),
            _fmt(height),
            round(40 * width),
            round(40 * height),
        )
    ]
    if tiling is None:
        for t in sorted(region.triangles):
            lines.append(
                '<polygon points="%s" fill="#ffffff" stroke="#bbbbbb" '
                'stroke-width="0.03"/>' % _points_attr(_triangle_corners(t))
            )
    else:
        for loz in sorted(tiling):
            lines.append(
                '<polygon points="%s" fill="%s" stroke="#444444" '
                'stroke-width="0.04"/>'
                % (_points_attr(_lozenge_corners(loz)), _LOZENGE_FILL[loz.orientation])
            )
    hole = _recorded_hole(region)
    for t in sorted(hole):
        lines.append(
            '<polygon points="%s" fill="#b0b0b0" stroke="none"/>'
            % _points_attr(_triangle_corners(t))
        )
    outline = _boundary_segments(region.triangles)
    if outline:
        lines.append(
            '<path d="%s" fill="none" stroke="#000000" stroke-width="0.08"/>'
            % _path_attr(outline)
        )
    if hole:
        lines.append(
            '<path d="%s" fill="none" stroke="#000000" stroke-width="0.08"/>'
            % _path_attr(_boundary_segments(hole))
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_formula(args) -> int:
    name = args.name
    if name == "main":
        ps = _need_params(args, 8, "x,y,z,t,m,a,b,c")
        value = theorem_main(RegionParams(*ps))
        if args.json:
            print(
                json.dumps(
                    {"count": value, "formula": name, "params": list(ps)},
                    sort_keys=True,
                )
            )
        else:
            print(value)
        return 0
    if name == "macmahon":
        ps: tuple = _need_abc(args)
        result = macmahon_q(*ps)
    elif name == "hex_m1":
        ps = _need_abc(args)
        result = hex_M1(*ps)
    elif name == "hex_m2":
        ps = _need_abc(args)
        result = hex_M2(*ps)
    elif name == "semihex":
        a, b, dents = _need_semihex(args)
        ps = (a, b, tuple(dents))
        result = semihex_dents_M2(a, b, dents)
    elif name == "k_region":
        ps = _need_params(args, 5, "a,x,y,z,t")
        result = k_region_M2(*ps)
    elif name == "magnet_m2":
        ps = _need_params(args, 6, "m,a,x,y,z,t")
        result = magnet_M2(*ps)
    elif name == "magnet_m3":
        ps = _need_params(args, 6, "m,a,x,y,z,t")
        result = magnet_M3(*ps)
    else:
        ps = _need_params(args, 8, "x,y,z,t,m,a,b,c")
        result = theorem_qmain(RegionParams(*ps))
    if args.json:
        print(
            json.dumps(
                {
                    "formula": name,
                    "params": ps,
                    "poly": str(result.poly),
                    "prefactor_exponent": result.prefactor_exponent,
                },
                sort_keys=True,
            )
        )
    else:
        print(result.poly)
    return 0


def cmd_count(args) -> int:
    region = _build_region(args.builder, args)
    value = count_tilings(region, args.max_states)
    if args.json:
        print(
            json.dumps(
                {
                    "builder": args.builder,
                    "count": value,
                    "digest": region_digest(region),
                },
                sort_keys=True,
            )
        )
    else:
        print(value)
    return 0


def cmd_genfun(args) -> int:
    region = _build_region(args.builder, args)
    gf = gen_function(region, weight_from_name(args.weight), args.max_states)
    if args.json:
        print(
            json.dumps(
                {
                    "builder": args.builder,
                    "digest": gf.region_digest,
                    "poly": str(gf.poly),
                    "weight": args.weight,
                },
                sort_keys=True,
            )
        )
    else:
        print(gf.poly)
    return 0


def cmd_tilings(args) -> int:
    region = _build_region(args.builder, args)
    for tiling in iter_tilings(region, args.max_triangles):
        print(tiling_json(tiling))
    return 0


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, args.max_sum, args.jobs)
    all_pass = True
    for report in reports:
        all_pass = all_pass and report.status == PASS
        print(report_json(report) if args.json else report_line(report))
    return 0 if all_pass else 1


def cmd_kuo(args) -> int:
    region = _build_region(args.builder, args)
    if args.marks is not None:
        marks = _parse_marks(args.marks)
    elif region.params is not None:
        marks = four_point_marks(region.params)
    else:
        raise ValueError("this builder records no parameters; pass --marks")
    report = check_kuo(region, marks, weight_from_name(args.weight), args.max_states)
    print(report_json(report) if args.json else report_line(report))
    return 0 if report.status == PASS else 1


def cmd_render(args) -> int:
    region = _build_region(args.builder, args)
    tiling = None
    if args.tiling_index is not None:
        for k, candidate in enumerate(iter_tilings(region, args.max_triangles)):
            if k == args.tiling_index:
                tiling = candidate
                break
        else:
            raise ValueError("tiling index %d out of range" % args.tiling_index)
    document = render_svg(region, tiling)
    if args.svg is not None:
        with open(args.svg, "w", encoding="ascii") as handle:
            handle.write(document)
    else:
        sys.stdout.write(document)
    return 0


# ---------------------------------------------------------------------------
# parser


def _region_flags(sub) -> None:
    sub.add_argument("--a", type=int, default=None, help="first side parameter")
    sub.add_argument("--b", type=int, default=None, help="second side parameter")
    sub.add_argument("--c", type=int, default=None, help="third side parameter")
    sub.add_argument(
        "--params",
        default=None,
        help="comma-separated parameters; arity depends on the builder/formula",
    )
    sub.add_argument(
        "--dents",
        default=None,
        help="comma-separated dent positions (semihexagon only)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlozenge",
        description="exact lozenge-tiling counts, weights and identity checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    formula = sub.add_parser("formula", help="print one closed-form value")
    formula.add_argument("name", choices=_FORMULA_NAMES)
    _region_flags(formula)
    formula.add_argument("--json", action="store_true")
    formula.set_defaults(func=cmd_formula)

    count = sub.add_parser("count", help="count tilings of a region")
    count.add_argument("builder", choices=_BUILDER_NAMES)
    _region_flags(count)
    count.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    count.add_argument("--json", action="store_true")
    count.set_defaults(func=cmd_count)

    genfun = sub.add_parser("genfun", help="weighted generating function")
    genfun.add_argument("builder", choices=_BUILDER_NAMES)
    _region_flags(genfun)
    genfun.add_argument(
        "--weight", choices=("wt0", "wt1", "wt2", "wt3"), default="wt2"
    )
    genfun.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    genfun.add_argument("--json", action="store_true")
    genfun.set_defaults(func=cmd_genfun)

    tilings = sub.add_parser("tilings", help="list every tiling, one JSON line each")
    tilings.add_argument("builder", choices=_BUILDER_NAMES)
    _region_flags(tilings)
    tilings.add_argument(
        "--max-triangles", type=int, default=DEFAULT_TRIANGLE_BUDGET
    )
    tilings.add_argument("--json", action="store_true")
    tilings.set_defaults(func=cmd_tilings)

    verify = sub.add_parser("verify", help="run an identity suite")
    verify.add_argument("--suite", required=True, choices=suite_names())
    verify.add_argument("--max-sum", type=int, default=4)
    verify.add_argument("--jobs", type=int, default=1)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(func=cmd_verify)

    kuo = sub.add_parser("kuo", help="four-point removal identity on one region")
    kuo.add_argument("builder", choices=_BUILDER_NAMES)
    _region_flags(kuo)
    kuo.add_argument(
        "--marks",
        default=None,
        help="four marks as row,pos,U/D joined by semicolons; defaults to the "
        "canonical corner placement for parameter-tagged regions",
    )
    kuo.add_argument("--weight", choices=("wt0", "wt1", "wt2", "wt3"), default="wt2")
    kuo.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    kuo.add_argument("--json", action="store_true")
    kuo.set_defaults(func=cmd_kuo)

    render = sub.add_parser("render", help="draw a region or tiling as SVG")
    render.add_argument("builder", choices=_BUILDER_NAMES)
    _region_flags(render)
    render.add_argument(
        "--tiling-index",
        type=int,
        default=None,
        help="render the n-th tiling in enumeration order instead of the bare region",
    )
    render.add_argument(
        "--max-triangles", type=int, default=DEFAULT_TRIANGLE_BUDGET
    )
    render.add_argument("--svg", default=None, help="write to this file instead of stdout")
    render.set_defaults(func=cmd_render)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as err:
        print("budget exceeded: %s" % err, file=sys.stderr)
        return 3
    except ValueError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
