"""Command-line front end.

Problems are JSON files; results are JSON on stdout, diagnostics are JSON on
stderr.  Exit codes: 0 ok, 2 schema or usage error, 3 invalid metric,
4 domain error, 5 a rule's preconditions fail.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Sequence

import jsonschema
import numpy as np

from . import extension as ext
from .errors import LipextError
from .lipschitz import MetricFunction, extend_with, lipschitz_number
from .metric_space import FiniteMetricSpace, discrete_apex
from .minimax import one_center
from .oracle import default_spec, grid_extension_check, grid_minimax
from .plane_geometry import Disc, apollonius_locus, sample_boundary
from .separation import separate

EXIT_SCHEMA = 2

_PAIR = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_LABELS = {"type": "array", "items": {"type": "string"}}

PROBLEM_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["points", "metric"],
    "properties": {
        "alpha": {"type": "number", "exclusiveMinimum": 0},
        "points": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "metric": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["type", "d"],
                    "properties": {
                        "type": {"const": "matrix"},
                        "d": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
                    },
                },
                {
                    "type": "object",
                    "required": ["type", "n", "l"],
                    "properties": {
                        "type": {"const": "discrete_apex"},
                        "n": {"type": "integer", "minimum": 2},
                        "l": {"type": "number"},
                    },
                },
                {
                    "type": "object",
                    "required": ["type", "coords"],
                    "properties": {
                        "type": {"const": "euclidean"},
                        "coords": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
                    },
                },
            ]
        },
        "f0": {"type": "object", "additionalProperties": _PAIR},
        "extend_at": {"oneOf": [{"type": "string"}, _LABELS]},
        "sets": {
            "type": "object",
            "required": ["A", "B"],
            "properties": {"A": _LABELS, "B": _LABELS},
        },
        "order": _LABELS,
    },
}

_NUM = {"type": "number"}
_OPT_NUM = {"type": ["number", "null"]}
_POINT = _PAIR
_OPT_POINT = {"oneOf": [_PAIR, {"type": "null"}]}


def _obj(**props: Any) -> dict[str, Any]:
    return {"type": "object", "required": sorted(props), "properties": props}


REPORT_SCHEMAS: dict[str, dict[str, Any]] = {
    "lipnum": _obj(alpha=_NUM, p_alpha=_NUM, sup_norm=_NUM, alpha_norm=_NUM,
                   witness={"oneOf": [_LABELS, {"type": "null"}]}),
    "extend": _obj(rule={"type": "string"},
                   chosen_points={"type": "object", "additionalProperties": _POINT},
                   base_p_alpha=_NUM, new_p_alpha=_NUM, ratio=_OPT_NUM,
                   hypothesis={"type": ["boolean", "null"]}, alpha=_NUM,
                   values={"type": "object", "additionalProperties": _POINT},
                   details={"type": "object"}),
    "feasible": _obj(mode={"enum": ["helly", "chained"]}, feasible={"type": "boolean"},
                     point=_OPT_POINT, budget=_NUM, threshold=_OPT_NUM),
    "separate": _obj(alpha=_NUM, gap=_NUM, separable={"type": "boolean"},
                     lipschitz_bound=_OPT_NUM, p_alpha=_OPT_NUM, note={"type": "string"},
                     function={"oneOf": [{"type": "object", "additionalProperties": _NUM},
                                         {"type": "null"}]}),
    "apollonius": {"oneOf": [
        _obj(kind={"const": "circle"}, center=_POINT, radius=_NUM),
        _obj(kind={"const": "line"}, point=_POINT, direction=_POINT),
    ]},
    "oracle-check": _obj(candidate=_POINT, near_optimal={"type": "boolean"},
                         candidate_p_alpha=_NUM, grid_p_alpha=_NUM, error_bound=_NUM,
                         one_center_value=_NUM, grid_value=_NUM, agree={"type": "boolean"}),
}

ERROR_SCHEMA = _obj(error={"type": "string"}, message={"type": "string"})


class UsageError(Exception):
    pass


# -- serialisation -----------------------------------------------------------


def to_json(obj: Any) -> Any:
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [to_json(x) for x in obj.tolist()]
    if isinstance(obj, dict) or hasattr(obj, "items"):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(x) for x in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def function_json(f: MetricFunction) -> dict[str, list[float]]:
    return {k: [v.real, v.imag] for k, v in f.values.items()}


def report_json(rep: ext.ExtensionReport) -> dict[str, Any]:
    return to_json({
        "rule": rep.rule,
        "chosen_points": rep.chosen_points,
        "base_p_alpha": rep.base_p_alpha,
        "new_p_alpha": rep.new_p_alpha,
        "ratio": rep.ratio,
        "hypothesis": rep.hypothesis,
        "alpha": rep.extended.alpha,
        "values": function_json(rep.extended),
        "details": dict(rep.details),
    })


def emit(obj: Any) -> None:
    json.dump(to_json(obj), sys.stdout, indent=2, allow_nan=False)
    sys.stdout.write("\n")


# -- problem files -----------------------------------------------------------


class Problem:
    def __init__(self, raw: dict[str, Any], alpha: Optional[float] = None) -> None:
        self.raw = raw
        self.alpha = float(alpha if alpha is not None else raw.get("alpha", 1.0))
        if not self.alpha > 0:
            raise UsageError(f"alpha must be positive, got {self.alpha}")
        self.space = self._space()

    def _space(self) -> FiniteMetricSpace:
        points = self.raw["points"]
        metric = self.raw["metric"]
        kind = metric["type"]
        if kind == "discrete_apex":
            n = metric["n"]
            if len(points) not in (n, n + 1):
                raise UsageError(f"discrete_apex with n={n} needs {n} or {n + 1} point labels")
            return discrete_apex(n, metric["l"], points)
        if kind == "matrix":
            if len(metric["d"]) != len(points):
                raise UsageError("matrix size does not match the number of points")
            return FiniteMetricSpace(points, metric["d"])
        coords = metric["coords"]
        if len(coords) != len(points) or len({len(c) for c in coords}) > 1:
            raise UsageError("coords must give one equal-length row per point")
        return FiniteMetricSpace.from_points(points, coords)

    def f0(self) -> MetricFunction:
        if "f0" not in self.raw:
            raise UsageError("problem file has no f0")
        vals = {k: complex(*v) for k, v in self.raw["f0"].items()}
        return MetricFunction(self.space, vals, self.alpha)

    def targets(self) -> list[str]:
        at = self.raw.get("extend_at")
        if at is None:
            raise UsageError("problem file has no extend_at")
        return [at] if isinstance(at, str) else list(at)

    def target(self) -> str:
        t = self.targets()
        if len(t) != 1:
            raise UsageError("this method extends to exactly one point")
        return t[0]


def load_problem(path: str, alpha: Optional[float]) -> Problem:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read problem file: {exc}") from None
    try:
        jsonschema.validate(raw, PROBLEM_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise UsageError(f"schema: {exc.message} at /{'/'.join(map(str, exc.absolute_path))}") from None
    return Problem(raw, alpha)


def parse_point(text: str) -> complex:
    """'1.5', '1+2j', '1+2i' or '1.5,-2'."""
    s = text.strip().replace(" ", "")
    try:
        if "," in s:
            re_, im = s.split(",")
            return complex(float(re_), float(im))
        return complex(s.replace("i", "j"))
    except ValueError:
        raise UsageError(f"not a plane point: {text!r}") from None


def write_csv(path: str, rows) -> None:
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["x", "y", "value"])
        for x, y, v in rows:
            out.writerow([repr(float(x)), repr(float(y)), repr(float(v))])


def _landscape(f0: MetricFunction, e: str, count: int = 64):
    """p_alpha of the extension as a function of the value placed at e."""
    q = f0.array()
    w = 1.0 / f0.space.dist[f0.space.index(e), f0.space.indices(f0.domain)] ** f0.alpha
    spec = default_spec(np.append(q, 0j))
    ticks = np.linspace(-spec.half_width, spec.half_width, count)
    grid = (spec.center + ticks[:, None] + 1j * ticks[None, :]).ravel()
    base = lipschitz_number(f0).p_alpha
    vals = np.maximum(base, w[None, :] * np.abs(grid[:, None] - q[None, :])).max(axis=1)
    return zip(grid.real, grid.imag, vals)


# -- commands ------------------------------------------------------------------


def cmd_lipnum(args) -> dict[str, Any]:
    f0 = load_problem(args.file, args.alpha).f0()
    rep = lipschitz_number(f0)
    return {
        "alpha": f0.alpha,
        "p_alpha": rep.p_alpha,
        "sup_norm": rep.sup_norm,
        "alpha_norm": rep.alpha_norm,
        "witness": list(rep.witness) if rep.witness else None,
    }


def cmd_extend(args) -> dict[str, Any]:
    prob = load_problem(args.file, args.alpha)
    f0 = prob.f0()
    if args.method == "average":
        rep = ext.average_extension(f0, prob.targets())
    else:
        e = prob.target()
        if args.method == "closed-form":
            rep = ext.closed_form_extension(f0, e)
        elif args.method == "one-center":
            rep = ext.optimal_one_point_extension(f0, e)
        else:
            rep = ext.helly_extension(f0, e, args.budget)
        if args.plot:
            write_csv(args.plot, _landscape(f0, e))
    return report_json(rep)


def cmd_feasible(args) -> dict[str, Any]:
    prob = load_problem(args.file, args.alpha)
    f0 = prob.f0()
    e = prob.target()
    if args.mode == "helly":
        hit = ext.helly_feasible(f0, e, args.budget, include_origin=args.with_origin)
        order = None
    else:
        order = args.order.split(",") if args.order else prob.raw.get("order")
        hit = ext.chained_feasible(f0, e, args.budget, order)
    out: dict[str, Any] = {
        "mode": args.mode,
        "feasible": hit.feasible,
        "point": hit.point,
        "budget": hit.budget,
        "threshold": hit.threshold,
    }
    if hit.point is not None and order is not None:
        out["chain"] = ext.chain_values(f0, e, hit.point, order)
    if args.plot:
        write_csv(args.plot, _landscape(f0, e))
    return out


def cmd_separate(args) -> dict[str, Any]:
    prob = load_problem(args.file, args.alpha)
    sets = prob.raw.get("sets")
    if sets is None:
        raise UsageError("problem file has no sets")
    space = prob.space
    a, b = space.subset(sets["A"]), space.subset(sets["B"])
    cert = separate(space, a, b, prob.alpha)
    out: dict[str, Any] = {
        "alpha": cert.alpha,
        "gap": cert.gap,
        "separable": cert.separable,
        "lipschitz_bound": cert.lipschitz_bound,
        "function": None,
        "p_alpha": None,
        "note": cert.note,
    }
    if cert.function is not None:
        f = cert.function
        out["function"] = {k: v.real for k, v in f.values.items()}
        out["p_alpha"] = lipschitz_number(f).p_alpha
        if args.plot:
            da = space.dist[:, sorted(a.members)].min(axis=1)
            db = space.dist[:, sorted(b.members)].min(axis=1)
            write_csv(args.plot, zip(da, db, [v.real for v in f.values.values()]))
    return out


def cmd_apollonius(args) -> dict[str, Any]:
    p1, p2 = parse_point(args.p1), parse_point(args.p2)
    locus = apollonius_locus(p1, p2, args.k)
    if isinstance(locus, Disc):
        out = {"kind": "circle", "center": locus.center, "radius": locus.radius}
        span = 1.0
    else:
        mid = (p1 + p2) / 2
        direction = 1j * (p2 - p1) / abs(p2 - p1)
        out = {"kind": "line", "point": mid, "direction": direction}
        span = abs(p2 - p1)
    if args.plot:
        pts = sample_boundary(locus, 64, span)
        ratio = np.abs(pts - p1) / np.abs(pts - p2)
        write_csv(args.plot, zip(pts.real, pts.imag, ratio))
    return out


def cmd_oracle_check(args) -> dict[str, Any]:
    prob = load_problem(args.file, args.alpha)
    f0 = prob.f0()
    e = prob.target()
    q = f0.array()
    w = 1.0 / f0.space.dist[f0.space.index(e), f0.space.indices(f0.domain)] ** f0.alpha
    exact = one_center(q, w)
    candidate = parse_point(args.candidate) if args.candidate else exact.z_star
    verdict = grid_extension_check(f0, e, candidate)
    grid = grid_minimax(q, w)
    return {
        "candidate": candidate,
        "near_optimal": verdict.ok,
        "candidate_p_alpha": verdict.candidate_p,
        "grid_p_alpha": verdict.grid_p,
        "error_bound": verdict.error_bound,
        "one_center_value": exact.value,
        "grid_value": grid.value,
        "agree": abs(exact.value - grid.value) <= grid.error_bound,
    }


# -- argument parsing -------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D401 - argparse hook
        _fail({"error": "UsageError", "message": message}, EXIT_SCHEMA)


def _fail(payload: dict[str, Any], code: int):
    json.dump(to_json(payload), sys.stderr)
    sys.stderr.write("\n")
    raise SystemExit(code)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--alpha", type=float, default=argparse.SUPPRESS,
                        help="override the exponent in the problem file")
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS,
                        help="ratio-equals-one tolerance (default 1e-9)")
    common.add_argument("--plot", metavar="PATH", default=argparse.SUPPRESS,
                        help="write sampled plot data as CSV (x, y, value)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="JSON output (the default and only format)")

    parser = _Parser(prog="lipext", description=__doc__, parents=[common],
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lipnum", parents=[common], help="Lipschitz number and norm of f0")
    p.add_argument("file")
    p.set_defaults(func=cmd_lipnum)

    p = sub.add_parser("extend", parents=[common], help="extend f0 to extend_at")
    p.add_argument("file")
    p.add_argument("--method", choices=["closed-form", "one-center", "average", "helly"],
                   default="one-center")
    p.add_argument("--budget", type=float, default=None)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("feasible", parents=[common], help="disc or chained feasibility at a budget")
    p.add_argument("file")
    p.add_argument("--mode", choices=["helly", "chained"], default="helly")
    p.add_argument("--budget", type=float, default=None)
    p.add_argument("--order", default=None, help="comma-separated domain labels (chained mode)")
    p.add_argument("--with-origin", action="store_true",
                   help="also require |f(e)| <= sup|f0| (helly mode)")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("separate", parents=[common], help="separate sets A and B")
    p.add_argument("file")
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("apollonius", parents=[common], help="locus |z - p1| = k |z - p2|")
    p.add_argument("p1")
    p.add_argument("p2")
    p.add_argument("k", type=float)
    p.set_defaults(func=cmd_apollonius)

    p = sub.add_parser("oracle-check", parents=[common],
                       help="grid-certify a candidate value at extend_at")
    p.add_argument("file")
    p.add_argument("--candidate", default=None, help="value to certify (default: exact optimum)")
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("alpha", None), ("tolerance", None), ("plot", None), ("json", True)):
        if not hasattr(args, name):
            setattr(args, name, default)
    saved = ext.RATIO_ATOL
    if args.tolerance is not None:
        ext.RATIO_ATOL = args.tolerance
    try:
        result = args.func(args)
    except UsageError as exc:
        _fail({"error": "UsageError", "message": str(exc)}, EXIT_SCHEMA)
    except LipextError as exc:
        _fail(exc.payload(), exc.exit_code)
    except ValueError as exc:
        # plain argument checks inside the library (negative budget and the like)
        _fail({"error": type(exc).__name__, "message": str(exc)}, 4)
    finally:
        ext.RATIO_ATOL = saved
    emit(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
