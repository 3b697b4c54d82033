"""Batch command-line interface.

Usage examples::

    pants-margulis scan --config job.json --max-len 12 --out scan.csv
    pants-margulis classify --config job.json --word a --word BA --invariants
    pants-margulis deriv-check --config job.json --max-len 6
    pants-margulis parab-check --config cusp.json
    pants-margulis trace-table --kind hyperbolic --s 0.5 1 --a -0.2 0 0.2 --b 0 --c 0
    pants-margulis boundary-solve --config job.json --targets 1 1 1

Generator convention: the boundary curves are d1 = a, d2 = b and
d3 = (ab)^-1 = BA, so d1 d2 d3 = 1. Boundary targets prescribe the
normalized invariant at hyperbolic boundaries and the non-normalized
one at parabolic boundaries, where only the sign is canonical.

Exit codes: 0 ok, 2 configuration error, 3 domain error (elliptic word,
degenerate boundary system).
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from .config import ConfigError, JobConfig, load_config
from .errors import DomainError, EllipticElementError
from .isometry import IsometryClass, classify, geodesic_length, invariant_vector_F, neutral_vector_X0
from .margulis import (
    KAPPA,
    boundary_invariants,
    length_derivative_check,
    parabolic_trace_derivative_check,
    sign_scan,
    solve_boundary_cocycle,
)
from .surface_group import boundary_words, enumerate_conjugacy_reps, reduce_word
from .trace_lab import ACTIONS, KINDS, DeformParams, closed_form_trace, oracle_trace

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN = 0, 2, 3


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        if math.isnan(x):
            return "n/a"
        return f"{x:.17g}"
    return str(x)


def _csv(header, rows, summary=None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    if summary is not None:
        buf.write(json.dumps(summary, sort_keys=True) + "\n")
    return buf.getvalue()


def _json(header, rows, summary=None) -> str:
    def clean(v):
        return None if isinstance(v, float) and math.isnan(v) else v

    doc = {"rows": [{h: clean(v) for h, v in zip(header, row)} for row in rows]}
    if summary is not None:
        doc["summary"] = summary
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _render(args, header, rows, summary=None) -> str:
    return (_json if args.format == "json" else _csv)(header, rows, summary)


def _emit(text: str, out) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(out)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _config(args) -> JobConfig:
    if args.config is None:
        raise ConfigError("--config is required for this command")
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.check.seed = args.seed
    if args.h is not None:
        cfg.check.h = args.h
    return cfg


def _cocycle(cfg: JobConfig, rep):
    if cfg.cocycle is None:
        raise ConfigError("this command needs a 'cocycle' section")
    return cfg.cocycle.build(rep)


def _words(raw) -> list[str]:
    try:
        return [reduce_word(w) for w in raw]
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_classify(args) -> str:
    cfg = _config(args)
    rep = cfg.group.build()
    header = ["word", "trace", "class", "length", "F_a", "F_b", "F_c", "X0_a", "X0_b", "X0_c"]
    rows = []
    for w in _words(args.word or []):
        g = rep.evaluate(w)
        cls = classify(g)
        if cls in (IsometryClass.ELLIPTIC, IsometryClass.IDENTITY):
            if args.invariants:
                raise EllipticElementError(f"word {w!r} is {cls.value.lower()}; invariants undefined", word=w)
            rows.append([w, g.trace(), cls.value] + [None] * 7)
            continue
        F = invariant_vector_F(g)
        X0 = neutral_vector_X0(g)
        rows.append([w, g.trace(), cls.value, geodesic_length(g), *F, *X0])
    return _render(args, header, rows)


def cmd_scan(args) -> str:
    cfg = _config(args)
    rep = cfg.group.build()
    u = _cocycle(cfg, rep)
    max_len = args.max_len if args.max_len is not None else cfg.scan.max_len
    report = sign_scan(rep, u, max_len, cfg.scan.tau_zero)
    header = ["word", "length_letters", "trace", "class", "alpha_tilde", "alpha", "sign"]
    rows = [
        [r.word, len(r.word), r.trace, r.cls.value, r.alpha_tilde, r.alpha, r.sign]
        for r in report.records
    ]
    summary = report.summary()
    summary["max_len"] = max_len
    summary["boundary_alpha"] = list(boundary_invariants(rep, u))
    return _render(args, header, rows, summary)


def cmd_deriv_check(args) -> str:
    cfg = _config(args)
    rep = cfg.group.build()
    u = _cocycle(cfg, rep)
    h = cfg.check.h
    words = _words(args.word) if args.word else enumerate_conjugacy_reps(args.max_len or 6)
    header = ["word", "alpha", "fd", "ratio"]
    rows = []
    max_dev = 0.0
    max_resid = 0.0
    for w in words:
        chk = length_derivative_check(rep, u, w, h)
        a = chk.predicted / KAPPA
        ratio = chk.fd / a if not math.isnan(chk.ratio) else math.nan
        if not math.isnan(ratio):
            max_dev = max(max_dev, abs(ratio / KAPPA - 1.0))
        max_resid = max(max_resid, abs(chk.fd - chk.predicted) / max(1.0, abs(chk.fd)))
        rows.append([w, a, chk.fd, ratio])
    summary = {
        "kappa": KAPPA,
        "h": h,
        "words": len(rows),
        "max_rel_dev_from_kappa": max_dev,
        "max_scaled_residual": max_resid,
        "note": "d(length)/dt = kappa * alpha with <V,W> = Tr(VW)/2; "
        "conventions stating d(length)/dt = alpha or alpha/2 correspond to kappa = 1 or 1/2",
    }
    return _render(args, header, rows, summary)


def cmd_parab_check(args) -> str:
    cfg = _config(args)
    rep = cfg.group.build()
    u = _cocycle(cfg, rep)
    if args.word:
        words = _words(args.word)
    else:
        words = [d for d in boundary_words() if classify(rep.evaluate(d)) is IsometryClass.PARABOLIC]
    rows = []
    worst = 0.0
    for w in words:
        chk = parabolic_trace_derivative_check(rep, u, w, cfg.check.h)
        err = abs(chk.fd - chk.predicted) / max(1.0, abs(chk.predicted))
        worst = max(worst, err)
        rows.append([w, chk.predicted, chk.fd, err])
    summary = {"h": cfg.check.h, "words": len(rows), "max_rel_error": worst}
    return _render(args, ["word", "alpha_tilde", "fd", "rel_error"], rows, summary)


def _grid_from(args, cfg_tt):
    kind = args.kind or (cfg_tt or {}).get("kind", "hyperbolic")
    action = args.action or (cfg_tt or {}).get("action", "left")
    if kind not in KINDS or action not in ACTIONS:
        raise ConfigError(f"unknown kind/action {kind!r}/{action!r}")
    shift = "s" if kind == "hyperbolic" else "r"
    random_points = args.random if args.random is not None else (cfg_tt or {}).get("random_points")
    if random_points is not None:
        rng = np.random.default_rng(args.seed or 0)
        pts = []
        for _ in range(int(random_points)):
            base = float(rng.uniform(0.05, 3.0))
            a, b, c = (float(v) for v in rng.uniform(-2.0, 2.0, size=3))
            pts.append(DeformParams(a, b, c, **{shift: base}))
        return kind, action, pts
    grid = dict((cfg_tt or {}).get("grid", {}))
    for key in (shift, "a", "b", "c"):
        flag = getattr(args, f"g_{key}")
        if flag is not None:
            grid[key] = flag
    try:
        axes = [[float(v) for v in grid.get(k, [])] for k in (shift, "a", "b", "c")]
    except (TypeError, ValueError):
        raise ConfigError("trace-table grid values must be numbers") from None
    if any(not ax for ax in axes):
        raise ConfigError(f"empty grid: need non-empty values for {shift}, a, b, c")
    try:
        pts = [DeformParams(a, b, c, **{shift: base}) for base, a, b, c in itertools.product(*axes)]
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return kind, action, pts


def cmd_trace_table(args) -> str:
    cfg_tt = load_config(args.config).trace_table if args.config else None
    kind, action, pts = _grid_from(args, cfg_tt)
    shift = "s" if kind == "hyperbolic" else "r"
    rows = []
    worst = 0.0
    for p in pts:
        closed = closed_form_trace(p, action)
        oracle = oracle_trace(p, action)
        diff = abs(closed - oracle)
        worst = max(worst, diff)
        rows.append([getattr(p, shift), p.a, p.b, p.c, closed, oracle, diff])
    header = [shift, "a", "b", "c", "closed_form", "oracle", "abs_diff"]
    summary = {"kind": kind, "action": action, "points": len(rows), "max_abs_diff": worst}
    return _render(args, header, rows, summary)


def cmd_boundary_solve(args) -> str:
    cfg = _config(args)
    rep = cfg.group.build()
    if args.targets is not None:
        targets = args.targets
    elif cfg.cocycle is not None and cfg.cocycle.kind == "boundary_targets":
        targets = cfg.cocycle.values
    else:
        raise ConfigError("need --targets or a cocycle.boundary_targets section")
    u = solve_boundary_cocycle(rep, targets)
    achieved = list(boundary_invariants(rep, u))
    doc = {
        "targets": [float(t) for t in targets],
        "achieved": achieved,
        "boundary_words": list(boundary_words()),
        "cocycle": {"explicit": {"u_a": list(u.u_a), "u_b": list(u.u_b)}},
    }
    if args.format == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    rows = [[d, t, a] for d, t, a in zip(boundary_words(), targets, achieved)]
    return _csv(["boundary_word", "target", "achieved"], rows, {"cocycle": doc["cocycle"]})


COMMANDS = {
    "classify": cmd_classify,
    "scan": cmd_scan,
    "deriv-check": cmd_deriv_check,
    "parab-check": cmd_parab_check,
    "trace-table": cmd_trace_table,
    "boundary-solve": cmd_boundary_solve,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pants-margulis",
        description=__doc__.split("\n\n")[0],
        epilog="Boundary convention: d1 = a, d2 = b, d3 = (ab)^-1 = BA. "
        "Exit codes: 0 ok, 2 config error, 3 domain error.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a JSON job configuration")
    common.add_argument("--max-len", type=int, help="maximum word length")
    common.add_argument("--h", type=float, help="finite-difference step")
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("classify", parents=[common], help="classify words and print invariant vectors")
    p.add_argument("--word", action="append", help="word over aAbB (repeatable; '' is the identity)")
    p.add_argument("--invariants", action="store_true", help="fail on words without invariant vectors")
    sub.add_parser("scan", parents=[common], help="sign scan over conjugacy representatives")
    p = sub.add_parser("deriv-check", parents=[common], help="length derivative vs invariant")
    p.add_argument("--word", action="append")
    p = sub.add_parser("parab-check", parents=[common], help="trace derivative at parabolic words")
    p.add_argument("--word", action="append")
    p = sub.add_parser("trace-table", parents=[common], help="closed-form deformed traces vs matrix products")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--action", choices=ACTIONS)
    p.add_argument("--random", type=int, help="use N random grid points instead of a product grid")
    for key in ("s", "r", "a", "b", "c"):
        p.add_argument(f"--{key}", dest=f"g_{key}", type=float, nargs="+")
    p = sub.add_parser("boundary-solve", parents=[common], help="minimum-norm cocycle with given boundary invariants")
    p.add_argument("--targets", type=float, nargs=3)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = COMMANDS[args.command](args)
        _emit(text, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
