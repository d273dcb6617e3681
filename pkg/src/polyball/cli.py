"""Command-line interface: solve, verify, rule-dump.

Configuration is a single JSON document (see README for the schema); results
are written atomically as CSV or JSON.  JSON output is byte-deterministic:
fixed field order and every float rendered with 17 significant digits, so
identical configs produce identical files regardless of thread count.  Wall
time is reported on stderr only, to keep the output files reproducible.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time

import numpy as np

from .expressions import ParseError, compile_field, parse, to_polynomial
from .geometry import RotatedPoint
from .polynomials import almansi_decompose
from .quadrature import surface_area, unit_sphere_rule
from .solvers import (
    BoundaryData,
    ProblemSpec,
    rotated_mean,
    solve_ball,
    solve_exterior,
    solve_interior,
)
from .verification import SUITE_NAMES, run_suite

THREADS_ENV = "POLYBALL_THREADS"

SOLVE_KINDS = ("interior", "ball", "exterior")
KINDS = SOLVE_KINDS + ("mean", "decompose", "verify")


class ConfigError(ValueError):
    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


def _require(config, field, types, default=None, required=True):
    if field not in config:
        if required:
            raise ConfigError(field, "missing required field")
        return default
    value = config[field]
    if not isinstance(value, types):
        raise ConfigError(field, f"expected {types}, got {type(value).__name__}")
    return value


class RunConfig:
    """Validated solver configuration."""

    def __init__(self, raw):
        if not isinstance(raw, dict):
            raise ConfigError("config", "top-level JSON value must be an object")
        self.kind = _require(raw, "kind", str)
        if self.kind not in KINDS:
            raise ConfigError("kind", f"must be one of {', '.join(KINDS)}")
        if self.kind == "verify":
            self.suite = raw.get("suite", "all")
            if self.suite not in SUITE_NAMES:
                raise ConfigError("suite", f"must be one of {', '.join(SUITE_NAMES)}")
            self.quadrature_order = raw.get("quadrature_order")
            if self.quadrature_order is not None:
                self.quadrature_order = int(self.quadrature_order)
            return
        self.n = int(_require(raw, "n", int))
        if self.n < 2:
            raise ConfigError("n", "dimension must be >= 2")
        self.p = int(_require(raw, "p", int))
        if self.p < 1:
            raise ConfigError("p", "order must be >= 1")
        self.quadrature_order = int(_require(raw, "quadrature_order", int, 64, required=False))
        if self.quadrature_order < 1:
            raise ConfigError("quadrature_order", "must be >= 1")
        self.center = _require(raw, "center", list, [0.0] * self.n, required=False)
        if len(self.center) != self.n or not all(
            isinstance(c, (int, float)) for c in self.center
        ):
            raise ConfigError("center", f"must be a list of {self.n} numbers")
        self.radius = float(_require(raw, "radius", (int, float), 1.0, required=False))
        if self.radius <= 0:
            raise ConfigError("radius", "must be positive")
        self.delta = float(_require(raw, "delta", (int, float), 1e-3, required=False))
        if not 0.0 < self.delta < 0.5:
            raise ConfigError("delta", "must lie in (0, 0.5)")
        self.output = _require(raw, "output", str, None, required=False)
        self.format = _require(raw, "format", str, "json", required=False)
        if self.format not in ("csv", "json"):
            raise ConfigError("format", "must be 'csv' or 'json'")

        if self.kind in SOLVE_KINDS:
            boundary = _require(raw, "boundary", list)
            if len(boundary) != self.p or not all(isinstance(b, str) for b in boundary):
                raise ConfigError(
                    "boundary", f"must be a list of exactly p={self.p} expression strings"
                )
            self.boundary = boundary
            self.field = None
        else:
            self.field = _require(raw, "field", str)
            self.boundary = None
        self.points, self.angles = self._parse_grid(raw)

    def _parse_grid(self, raw):
        grid = _require(raw, "grid", dict)
        if "points" in grid:
            points = grid["points"]
            if not isinstance(points, list) or not points:
                raise ConfigError("grid.points", "must be a nonempty list of points")
            out = []
            for i, pt in enumerate(points):
                if not isinstance(pt, list) or len(pt) != self.n:
                    raise ConfigError(
                        "grid.points", f"entry {i} must be a list of {self.n} numbers"
                    )
                out.append([float(v) for v in pt])
            angles = grid.get("angles", [0.0] * len(out))
            if not isinstance(angles, list) or len(angles) != len(out):
                raise ConfigError("grid.angles", "must match the number of points")
            return out, [float(a) for a in angles]
        if "min" in grid and "max" in grid and "step" in grid:
            lo = grid["min"]
            hi = grid["max"]
            step = grid["step"]
            if not (isinstance(lo, list) and isinstance(hi, list)) or len(lo) != self.n or len(hi) != self.n:
                raise ConfigError("grid.min/max", f"must be lists of {self.n} numbers")
            steps = step if isinstance(step, list) else [step] * self.n
            if len(steps) != self.n or any(s <= 0 for s in steps):
                raise ConfigError("grid.step", "must be positive (scalar or per-axis list)")
            axes = [
                np.arange(float(lo[j]), float(hi[j]) + 0.5 * float(steps[j]), float(steps[j]))
                for j in range(self.n)
            ]
            mesh = np.meshgrid(*axes, indexing="ij")
            pts = np.column_stack([m.reshape(-1) for m in mesh])
            if pts.shape[0] == 0:
                raise ConfigError("grid", "grid produced no points")
            return [list(map(float, row)) for row in pts], [0.0] * pts.shape[0]
        raise ConfigError("grid", "needs either 'points' or 'min'/'max'/'step'")


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = json.load(f)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON: {exc}") from exc
    return RunConfig(raw)


# ---- deterministic serialization ----


def _render_json(value, indent=0):
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        inner = ",\n".join(
            f'{pad}  {json.dumps(str(k))}: {_render_json(v, indent + 1)}'
            for k, v in value.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        inner = ", ".join(_render_json(v, indent) for v in value)
        return "[" + inner + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if not math.isfinite(v):
            raise ValueError("cannot serialize a non-finite number")
        return format(v, ".17g")
    if value is None:
        return "null"
    return json.dumps(str(value))


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".polyball-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as f:
            f.write(text)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


class RunReport:
    """Per-point results plus a config echo; renders to JSON or CSV."""

    def __init__(self, metadata, results):
        self.metadata = metadata
        self.results = results

    def to_json(self):
        return _render_json({"metadata": self.metadata, "results": self.results}) + "\n"

    def to_csv(self, n):
        header = [f"x{j + 1}" for j in range(n)] + ["angle", "value_re", "value_im"]
        lines = [",".join(header)]
        for row in self.results:
            cells = [format(v, ".17g") for v in row["point"]]
            cells.append(format(row["angle"], ".17g"))
            cells.append(format(row["re"], ".17g"))
            cells.append(format(row["im"], ".17g"))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def _metadata(config):
    meta = {
        "kind": config.kind,
        "n": config.n,
        "p": config.p,
        "center": [float(c) for c in config.center],
        "radius": config.radius,
        "quadrature_order": config.quadrature_order,
        "delta": config.delta,
        "omega_n": surface_area(config.n),
    }
    if config.boundary is not None:
        meta["boundary"] = list(config.boundary)
    if config.field is not None:
        meta["field"] = config.field
    return meta


def run_solve(config, workers=1):
    """Dispatch a validated config to the matching solver; returns a RunReport."""
    spec = ProblemSpec(
        dim=config.n,
        order=config.p,
        center=tuple(config.center),
        radius=config.radius,
        quadrature_order=config.quadrature_order,
    )
    points = [np.asarray(pt, dtype=np.float64) for pt in config.points]
    angles = config.angles

    if config.kind in SOLVE_KINDS:
        try:
            fields = [
                compile_field(src, config.n, var_prefix="z") for src in config.boundary
            ]
        except ParseError as exc:
            raise ConfigError("boundary", str(exc)) from exc
        data = BoundaryData(fields)
        if config.kind == "interior":
            pts = [RotatedPoint(a, x) for a, x in zip(angles, points)]
            values = solve_interior(spec, data, pts, delta=config.delta, workers=workers)
        elif config.kind == "ball":
            pts = [RotatedPoint(a, x) for a, x in zip(angles, points)]
            values = solve_ball(spec, data, pts, delta=config.delta, workers=workers)
        else:
            if any(a != 0.0 for a in angles):
                raise ConfigError("grid.angles", "exterior points must be real (angle 0)")
            values = solve_exterior(spec, data, points, delta=config.delta, workers=workers)
    elif config.kind == "mean":
        try:
            field = compile_field(config.field, config.n, var_prefix="x")
        except ParseError as exc:
            raise ConfigError("field", str(exc)) from exc
        values = np.array(
            [
                rotated_mean(
                    field,
                    pt,
                    config.radius,
                    config.p,
                    quadrature_order=config.quadrature_order,
                )
                for pt in points
            ]
        )
        angles = [0.0] * len(points)
    else:
        raise ValueError(f"run_solve cannot handle kind {config.kind!r}")

    results = [
        {
            "point": [float(v) for v in pt],
            "angle": float(a),
            "re": float(val.real),
            "im": float(val.imag),
        }
        for pt, a, val in zip(points, angles, values)
    ]
    return RunReport(_metadata(config), results)


def run_decompose(config):
    """Almansi-decompose a polynomial field expression."""
    try:
        ast = parse(config.field, config.n, var_prefix="x")
        poly = to_polynomial(ast, config.n)
    except (ParseError, ValueError) as exc:
        raise ConfigError("field", str(exc)) from exc
    components = almansi_decompose(poly, config.p)
    results = []
    for k, h in enumerate(components):
        terms = [
            {
                "exponents": list(alpha),
                "re": float(c.real),
                "im": float(c.imag),
            }
            for alpha, c in sorted(h.terms().items())
        ]
        results.append({"k": k, "terms": terms})
    meta = _metadata(config)
    return RunReport(meta, results)


def _decompose_csv(report, n):
    header = ["k"] + [f"e{j + 1}" for j in range(n)] + ["re", "im"]
    lines = [",".join(header)]
    for row in report.results:
        for term in row["terms"]:
            cells = [str(row["k"])]
            cells.extend(str(e) for e in term["exponents"])
            cells.append(format(term["re"], ".17g"))
            cells.append(format(term["im"], ".17g"))
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _resolve_workers(args):
    if getattr(args, "threads", None) is not None:
        return max(1, args.threads)
    env = os.environ.get(THREADS_ENV, "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            print(f"warning: ignoring non-integer {THREADS_ENV}={env!r}", file=sys.stderr)
    return 1


def _cmd_solve(args):
    config = load_config(args.config)
    if config.kind == "verify":
        raise ConfigError("kind", "use the 'verify' subcommand for verification configs")
    if args.quad_order is not None:
        config.quadrature_order = args.quad_order
    if args.delta is not None:
        config.delta = args.delta
    if args.output is not None:
        config.output = args.output
    if args.format is not None:
        config.format = args.format
    if config.output is None:
        raise ConfigError("output", "no output path given (config field or --output)")
    workers = _resolve_workers(args)

    started = time.perf_counter()
    if config.kind == "decompose":
        report = run_decompose(config)
        text = report.to_json() if config.format == "json" else _decompose_csv(report, config.n)
    else:
        report = run_solve(config, workers=workers)
        text = report.to_json() if config.format == "json" else report.to_csv(config.n)
    elapsed = time.perf_counter() - started

    _atomic_write(config.output, text)
    print(
        f"{config.kind}: wrote {len(report.results)} records to {config.output} "
        f"in {elapsed:.3f}s",
        file=sys.stderr,
    )
    return 0


def _cmd_verify(args):
    suite = args.suite
    order = args.quad_order
    if args.config:
        config = load_config(args.config)
        if config.kind != "verify":
            raise ConfigError("kind", "verify subcommand needs a config with kind='verify'")
        suite = suite or config.suite
        order = order if order is not None else config.quadrature_order
    suite = suite or "all"
    started = time.perf_counter()
    results = run_suite(suite, quadrature_order=order)
    elapsed = time.perf_counter() - started
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    print(
        f"verify/{suite}: {len(results) - len(failed)}/{len(results)} checks passed "
        f"in {elapsed:.3f}s",
        file=sys.stderr,
    )
    return 1 if failed else 0


def _cmd_rule_dump(args):
    rule = unit_sphere_rule(args.n, args.order)
    rule.dump_csv(args.output)
    print(f"wrote {len(rule)} nodes to {args.output}", file=sys.stderr)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="polyball",
        description="Dirichlet solvers for complex polyharmonic functions on rotated balls",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run a solver described by a JSON config")
    solve.add_argument("--config", required=True, help="path to the JSON config")
    solve.add_argument("--output", help="output path (overrides the config)")
    solve.add_argument("--format", choices=("csv", "json"), help="output format override")
    solve.add_argument("--threads", type=int, help=f"worker count (default ${THREADS_ENV} or 1)")
    solve.add_argument("--quad-order", type=int, help="quadrature order override")
    solve.add_argument("--delta", type=float, help="boundary guard override")
    solve.set_defaults(func=_cmd_solve)

    verify = sub.add_parser("verify", help="run the built-in verification suites")
    verify.add_argument("--config", help="optional JSON config with kind='verify'")
    verify.add_argument("--suite", choices=SUITE_NAMES, help="suite to run (default all)")
    verify.add_argument("--quad-order", type=int, help="quadrature order for the suites")
    verify.set_defaults(func=_cmd_verify)

    dump = sub.add_parser("rule-dump", help="write a sphere quadrature rule as CSV")
    dump.add_argument("--n", type=int, required=True, help="ambient dimension")
    dump.add_argument("--order", type=int, required=True, help="rule order")
    dump.add_argument("--output", required=True, help="CSV output path")
    dump.set_defaults(func=_cmd_rule_dump)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
