"""Command line front end: ``aggregate``, ``check``, ``lattice`` and ``filter``.

Exit status is 0 on success, 1 on a validation or property failure and 2 on
usage or parse errors.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
import tempfile
from dataclasses import dataclass

from .image import PGMError, filter_image, read_pgm, write_pgm
from .lattice import (
    TAU,
    IntervalLattice,
    Lattice,
    LatticeError,
    ProductLattice,
    UnitLattice,
    _split_top_level,
    load_lattice_spec,
)
from .lm import lm_transform
from .oracle import equivalence_report, make_domain, oracle_lm
from .owa import AggregationResult, WeightError, builtin_family, dyowa, lmowa, weight_vector, yager_owa
from .properties import (
    PropertyMismatch,
    check_property,
    dyowa_operator,
    lmowa_operator,
    table_function,
    yager_operator,
)
from .regime import default_regime
from .triangular import resolve_pair

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class ValidationError(Exception):
    pass


@dataclass
class RunConfig:
    lattice: str = "unit"
    tnorm: str | None = None
    tconorm: str | None = None
    mode: str = "dyowa"
    weights: str | None = None
    family: str | None = None
    infile: str | None = None
    outfile: str | None = None
    tolerance: float = TAU
    seed: int = 0
    explain: bool = False


def resolve_lattice(selector: str, tol: float = TAU) -> Lattice:
    """``unit``, ``interval``, ``finite=<path>`` or ``product=<sel>,<sel>,...``"""
    if selector == "unit":
        return UnitLattice(tol)
    if selector == "interval":
        return IntervalLattice(tol)
    if selector.startswith("finite="):
        path = selector[len("finite="):]
        try:
            return load_lattice_spec(path)
        except OSError as e:
            raise UsageError("cannot read lattice file: %s" % e) from None
        except SyntaxError as e:
            raise UsageError("lattice file %s: %s" % (path, e.msg)) from None
        except LatticeError as e:
            raise UsageError("lattice file %s: %s" % (path, e)) from None
    if selector.startswith("product="):
        parts = [p for p in _split_top_level(selector[len("product="):], ",") if p]
        if not parts:
            raise UsageError("product needs at least one factor")
        return ProductLattice([resolve_lattice(p, tol) for p in parts])
    raise UsageError("unknown lattice selector %r" % selector)


def _parse_family(spec: str):
    spec = spec.strip()
    if spec.startswith("constant(") and spec.endswith(")"):
        return "constant", spec[len("constant("):-1]
    return spec, None


def _default_ops(L: Lattice, family: str | None):
    if L.is_finite or (family or "").startswith("gamma"):
        return "meet", "join"
    if isinstance(L, UnitLattice):
        return "prod", "luk"
    return "cw:prod", "cw:luk"


def _parse_cells(L: Lattice, text: str) -> tuple:
    return tuple(L.parse(c) for c in _split_top_level(text, ","))


def build_aggregator(cfg: RunConfig, L: Lattice, n: int):
    """Return ``(run, pair, model)`` where ``run`` maps a row to an AggregationResult.

    ``model`` is the weight tuple (owa), WeightVector (lmowa) or WeightFamily (dyowa).
    """
    name, inline = _parse_family(cfg.family) if cfg.family else (None, None)
    t_default, s_default = _default_ops(L, name)
    try:
        pair = resolve_pair(L, cfg.tnorm or t_default, cfg.tconorm or s_default)
    except (ValueError, LatticeError) as e:
        raise UsageError(str(e)) from None
    weights = None
    wtext = inline if inline is not None else cfg.weights
    if wtext:
        try:
            weights = _parse_cells(L, wtext)
        except LatticeError as e:
            raise UsageError("bad weights: %s" % e) from None
        if len(weights) != n:
            raise UsageError("%d weights for arity %d" % (len(weights), n))
    if cfg.mode == "owa":
        if not isinstance(L, UnitLattice) or weights is None:
            raise UsageError("mode owa needs the unit lattice and --weights")

        def run(row):
            return AggregationResult(yager_owa(weights, row, cfg.tolerance), tuple(sorted(row, reverse=True)), weights)
        return run, pair, weights
    if cfg.mode == "lmowa":
        if weights is None:
            raise UsageError("mode lmowa needs --weights")
        w = weight_vector(weights, pair)
        return (lambda row: lmowa(w, row)), pair, w
    if cfg.mode == "dyowa":
        if name is None:
            raise UsageError("mode dyowa needs --family")
        try:
            F = builtin_family(name, n, pair, weights if name == "constant" else None)
        except WeightError as e:
            raise ValidationError(str(e)) from None
        except (ValueError, LatticeError) as e:
            raise UsageError(str(e)) from None
        return (lambda row: dyowa(F, row)), pair, F
    raise UsageError("unknown mode %r" % cfg.mode)


def _read_rows(path, L: Lattice):
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for rowno, cells in enumerate(csv.reader(fh), start=1):
            if not cells or all(not c.strip() for c in cells) or cells[0].lstrip().startswith("#"):
                continue
            row = []
            for colno, cell in enumerate(cells, start=1):
                try:
                    row.append(L.parse(cell))
                except LatticeError as e:
                    raise UsageError("row %d, column %d: %s" % (rowno, colno, e)) from None
            if rows and len(row) != len(rows[0][1]):
                raise UsageError("row %d: arity %d differs from %d" % (rowno, len(row), len(rows[0][1])))
            rows.append((rowno, tuple(row)))
    return rows


def _write_atomic(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".dyowa-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _config(args) -> RunConfig:
    return RunConfig(
        lattice=args.lattice, tnorm=args.tnorm, tconorm=args.tconorm, mode=args.mode,
        weights=args.weights, family=args.family, infile=getattr(args, "infile", None),
        outfile=getattr(args, "outfile", None), tolerance=args.tolerance, seed=args.seed,
        explain=getattr(args, "explain", False),
    )


def cmd_aggregate(cfg: RunConfig) -> int:
    if not cfg.infile:
        raise UsageError("--in is required")
    L = resolve_lattice(cfg.lattice, cfg.tolerance)
    try:
        rows = _read_rows(cfg.infile, L)
    except OSError as e:
        raise UsageError("cannot read input: %s" % e) from None
    if not rows:
        raise UsageError("no input rows")
    run, _, _ = build_aggregator(cfg, L, len(rows[0][1]))
    lines = []
    for rowno, row in rows:
        try:
            res = run(row)
        except WeightError as e:
            raise ValidationError("row %d: %s" % (rowno, e)) from None
        line = L.format(res.value)
        if cfg.explain:
            line += "\tchain=" + ",".join(L.format(b) for b in res.chain)
            line += "\tweights=" + ",".join(L.format(w) for w in res.weights_used)
        lines.append(line)
    _write_atomic(cfg.outfile, "".join(l + "\n" for l in lines))
    return EXIT_OK


def cmd_lattice_validate(path) -> int:
    try:
        L = load_lattice_spec(path)
    except OSError as e:
        print("FAIL cannot read %s: %s" % (path, e))
        return EXIT_USAGE
    except SyntaxError as e:
        print("FAIL syntax line %d: %s" % (e.lineno or 0, e.msg))
        return EXIT_USAGE
    except LatticeError as e:
        msg = "FAIL " + e.law
        if e.pair is not None:
            msg += " (%s,%s)" % e.pair
        elif e.detail:
            msg += " " + e.detail
        print(msg)
        return EXIT_FAIL
    print("elements: %d" % len(L.elements))
    print("top: %s" % L.top)
    print("bottom: %s" % L.bottom)
    print("LATTICE OK")
    return EXIT_OK


def _operator(cfg: RunConfig, L: Lattice, n: int, function: str | None):
    if function:
        if not isinstance(L, UnitLattice):
            raise UsageError("--function needs the unit lattice")
        try:
            return table_function(function, n)
        except ValueError as e:
            raise UsageError(str(e)) from None
    _, _, model = build_aggregator(cfg, L, n)
    if cfg.mode == "owa":
        return yager_operator(model)
    if cfg.mode == "lmowa":
        return lmowa_operator(model)
    return dyowa_operator(model)


def cmd_check(cfg: RunConfig, properties: list[str], arity: int | None = None, expect_fail: bool = False,
              function: str | None = None, oracle: bool = False) -> int:
    L = resolve_lattice(cfg.lattice, cfg.tolerance)
    probes = []
    if cfg.infile:
        try:
            rows = [r for _, r in _read_rows(cfg.infile, L)]
        except OSError as e:
            raise UsageError("cannot read input: %s" % e) from None
        probes = [(x, y) for x in rows for y in rows if x is not y]
        if rows and arity is None:
            arity = len(rows[0])
    if arity is None:
        wt = cfg.weights or (_parse_family(cfg.family)[1] if cfg.family else None)
        arity = len(_split_top_level(wt, ",")) if wt else 3
    regime = default_regime(L, seed=cfg.seed)
    status = EXIT_OK
    if oracle:
        dom = make_domain(L, arity, seed=cfg.seed)
        rep = equivalence_report(lambda xs: lm_transform(L, xs), lambda xs: oracle_lm(L, xs), dom, 0.0 if L.is_finite else cfg.tolerance)
        print("ORACLE lm n=%d %s checked=%d" % (arity, "PASS" if rep.ok else "FAIL", rep.checked))
        if not rep.ok:
            status = EXIT_FAIL
    if not properties:
        return status
    op = _operator(cfg, L, arity, function)
    for prop in properties:
        try:
            v = check_property(op, prop, regime, probes=probes)
        except PropertyMismatch as e:
            raise UsageError(str(e)) from None
        print(v.line(L))
        if v.holds == expect_fail:
            status = EXIT_FAIL
    return status


def cmd_filter_image(cfg: RunConfig, window: int) -> int:
    if not cfg.infile or not cfg.outfile:
        raise UsageError("filter needs --in and --out")
    if window < 1 or window % 2 == 0:
        raise UsageError("--window must be odd and >= 1")
    if cfg.lattice != "unit":
        raise UsageError("filter works on the unit lattice")
    name = _parse_family(cfg.family)[0] if cfg.family else None
    if cfg.mode == "dyowa" and name not in ("gamma1", "gamma2", "constant", "proportional"):
        raise UsageError("filter supports gamma1, gamma2, constant and proportional families")
    L = UnitLattice(cfg.tolerance)
    run, _, _ = build_aggregator(cfg, L, window * window)
    try:
        pixels, magic = read_pgm(cfg.infile)
    except OSError as e:
        raise UsageError("cannot read image: %s" % e) from None
    except PGMError as e:
        raise UsageError(str(e)) from None
    out = filter_image(pixels, window, lambda xs: run(xs).value)
    d = os.path.dirname(os.path.abspath(cfg.outfile))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".dyowa-")
    os.close(fd)
    try:
        write_pgm(tmp, out, magic)
        os.replace(tmp, cfg.outfile)
    except BaseException:
        os.unlink(tmp)
        raise
    return EXIT_OK


def _add_common(p):
    p.add_argument("--lattice", default="unit", help="unit | interval | finite=<path> | product=<sel>,<sel>")
    p.add_argument("--tnorm", help="min|prod|luk|drastic|meet, or cw:<name>")
    p.add_argument("--tconorm", help="max|probsum|luk|drastic|join, or cw:<name>")
    p.add_argument("--mode", default="dyowa", choices=["owa", "lmowa", "dyowa"])
    p.add_argument("--weights", help="comma-separated weight cells")
    p.add_argument("--family", help="gamma1 | gamma2 | proportional | constant(<w1>,<w2>,...)")
    p.add_argument("--tolerance", type=float, default=TAU)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dyowa", description="Ordered weighted averaging on complete lattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("aggregate", help="aggregate each CSV row")
    _add_common(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile")
    p.add_argument("--explain", action="store_true", help="append the LM chain and weights per row")

    p = sub.add_parser("check", help="run property checks on the configured operator")
    _add_common(p)
    p.add_argument("properties", nargs="?", default="", help="comma-separated, e.g. IP,SP,ISO")
    p.add_argument("--in", dest="infile", help="rows used as extra isotonicity probes")
    p.add_argument("--arity", type=int)
    p.add_argument("--function", help="check a reference function: min|max|arith|prod|probsum|mixed")
    p.add_argument("--expect-fail", action="store_true", help="succeed only if every property fails")
    p.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("lattice", help="validate a finite lattice spec file")
    p.add_argument("path")

    p = sub.add_parser("filter", help="window-aggregate a grayscale PGM image")
    _add_common(p)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--window", type=int, default=3)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if args.command == "lattice":
            return cmd_lattice_validate(args.path)
        cfg = _config(args)
        if args.command == "aggregate":
            return cmd_aggregate(cfg)
        if args.command == "check":
            props = [p.strip() for p in args.properties.split(",") if p.strip()]
            return cmd_check(cfg, props, args.arity, args.expect_fail, args.function, args.oracle)
        return cmd_filter_image(cfg, args.window)
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_FAIL
    except (LatticeError, WeightError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
