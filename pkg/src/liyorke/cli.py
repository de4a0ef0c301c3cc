"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .certify import (
    certificate_to_json,
    certify_scrambled,
    fmt,
    limit_to_json,
    predict_limit,
    refute_scrambled_set,
    report_to_json,
)
from .core_space import (
    INFINITY,
    NeighborhoodSpec,
    PointFormatError,
    coordinate,
    in_neighborhood,
    metric_D,
    point_from_json,
    point_to_json,
)
from .dynamics import evolve
from .errors import BudgetExhausted, LiYorkeError
from .harmonic_engine import HitRequest, find_mod1_hit, scaled_window_mod1
from .sampling import random_sweep_input, sample_rng
from .witness import ly_witness

log = logging.getLogger("liyorke")

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3

SWEEP_FIELDS = ["sample", "case", "M", "K", "status", "liminf_upper_bound",
                "limsup_lower_bound", "proximal_times", "separation_times"]


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-9
    budget: int = 10**7
    eps: float = 1e-3
    seed: int = 0
    format: str = "json"

    def __post_init__(self):
        if not 0 < self.tolerance <= 1e-6:
            raise LiYorkeError(f"--tol must lie in (0, 1e-6], got {self.tolerance}")
        if self.budget < 1:
            raise LiYorkeError(f"--budget must be >= 1, got {self.budget}")
        if not 0 < self.eps <= 0.1:
            raise LiYorkeError(f"--eps must lie in (0, 0.1], got {self.eps}")


class CommandResult(Exception):
    """Carries a payload out of a command together with a nonzero exit code."""

    def __init__(self, payload, code):
        super().__init__(code)
        self.payload, self.code = payload, code


def _load_json(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise PointFormatError(
            path, f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def _coord_str(v):
    return "inf" if v == INFINITY else str(v)


def log_times(horizon: int) -> list:
    """``0``, a quarter-decade grid up to ``horizon``, and ``horizon`` itself."""
    ns = {0, horizon}
    e = 0
    while (n := round(10 ** (e / 4))) < horizon:
        ns.add(n)
        e += 1
    return sorted(ns)


def cmd_iterate(point_file, n, config):
    p = point_from_json(_load_json(point_file))
    if n < 0:
        raise LiYorkeError(f"n must be >= 0, got {n}")
    rows = []
    for t in log_times(n):
        q = evolve(p, t, config.tolerance / 4)
        row = {"n": t, "x0": fmt(q.x0)}
        for i in range(1, 9):
            row[f"x{i}"] = _coord_str(coordinate(q, i))
        row["D_to_initial"] = fmt(metric_D(q, p, config.tolerance / 2))
        rows.append(row)
    return rows


def cmd_witness(point_file, delta, config, free_index=1, max_index=12):
    x = point_from_json(_load_json(point_file))
    U = NeighborhoodSpec(delta, free_index)
    y, params = ly_witness(x, U, max_index)
    return {
        "x": point_to_json(x),
        "y": point_to_json(y),
        "params": {"case": params.case, "M": params.M, "K": params.K,
                   "delta": fmt(params.delta), "shift": fmt(params.shift)},
        "in_neighborhood": in_neighborhood(y, x, U),
        "D_xy": fmt(metric_D(x, y, config.tolerance)),
    }


def _load_pair(obj):
    if isinstance(obj, list) and len(obj) == 2:
        return point_from_json(obj[0]), point_from_json(obj[1])
    if isinstance(obj, dict) and "x" in obj and "y" in obj:
        return point_from_json(obj["x"]), point_from_json(obj["y"])
    raise PointFormatError("pair", 'expected {"x": point, "y": point} or [point, point]')


def cmd_certify(pair_file, config):
    x, y = _load_pair(_load_json(pair_file))
    if x.has_infinity != y.has_infinity:
        try:
            cert = certify_scrambled(x, y, config.eps, config.budget,
                                     tol=config.tolerance)
        except BudgetExhausted as exc:
            out = certificate_to_json(exc.partial, verdict="budget-exhausted")
            out["message"] = str(exc)
            raise CommandResult(out, EXIT_BUDGET) from None
        return certificate_to_json(cert)
    return limit_to_json(predict_limit(x, y))


def _load_set(obj):
    if isinstance(obj, dict) and "points" in obj:
        obj = obj["points"]
    if not isinstance(obj, list):
        raise PointFormatError("points", "expected a list of points")
    return [point_from_json(p) for p in obj]


def cmd_refute_set(set_file, config):
    points = _load_set(_load_json(set_file))
    return report_to_json(refute_scrambled_set(points, config.eps, config.budget))


def cmd_lemma1(p, m, target, config):
    req = HitRequest(p=p, m=m, target=target, epsilon=config.eps, n_max=config.budget)
    try:
        v = find_mod1_hit(req)
    except BudgetExhausted as exc:
        raise CommandResult({"verdict": "budget-exhausted", "message": str(exc)},
                            EXIT_BUDGET) from None
    return {"p": p, "m": m, "target": fmt(target), "epsilon": fmt(config.eps),
            "v": v, "value_mod1": fmt(scaled_window_mod1(p, m, v))}


def _sweep_row(args):
    index, config, timing = args
    case, x, U = random_sweep_input(sample_rng(config.seed, index))
    started = time.perf_counter()
    row = dict.fromkeys(SWEEP_FIELDS, "")
    row.update(sample=index, case=case)
    try:
        y, params = ly_witness(x, U)
        row.update(M=params.M, K=params.K if params.K is not None else "")
        cert = certify_scrambled(x, y, config.eps, config.budget)
        row["status"] = "ok"
    except BudgetExhausted as exc:
        cert = exc.partial
        row["status"] = "budget-exhausted"
    except LiYorkeError as exc:
        cert = None
        row["status"] = f"error: {exc}"
    if cert is not None:
        row.update(
            liminf_upper_bound=fmt(cert.liminf_upper_bound),
            limsup_lower_bound=fmt(cert.limsup_lower_bound),
            proximal_times=" ".join(map(str, cert.proximal_times)),
            separation_times=" ".join(map(str, cert.separation_times)),
        )
    if timing:
        row["wall_time"] = format(time.perf_counter() - started, ".3f")
    return row


def cmd_sweep(config, samples=10, workers=1, timing=False):
    jobs = [(i, config, timing) for i in range(samples)]
    if workers > 1 and samples > 1:
        with ProcessPoolExecutor(workers) as pool:
            # map preserves sample order
            return list(pool.map(_sweep_row, jobs))
    return [_sweep_row(j) for j in jobs]


# --- output -----------------------------------------------------------------


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list) and not all(isinstance(v, (int, str)) for v in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        if isinstance(obj, list):
            obj = " ".join(map(str, obj))
        yield prefix[:-1], obj


def render(payload, fmt_name, fields=None) -> str:
    if fmt_name == "json":
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(payload, list):
        fields = fields or (list(payload[0]) if payload else [])
        writer.writerow(fields)
        for row in payload:
            writer.writerow([row.get(f, "") for f in fields])
    else:
        writer.writerow(["field", "value"])
        writer.writerows(_flatten(payload))
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="numeric tolerance")
    common.add_argument("--budget", type=int, default=10**7, help="search budget n_max")
    common.add_argument("--eps", type=float, default=1e-3, help="modulus tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="liyorke",
        description="Trajectories, scrambled-pair witnesses and certificates "
                    "for a Li-Yorke sensitive, non-chaotic skew product.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iterate", parents=[common], help="trajectory at log-spaced times")
    p.add_argument("point_file")
    p.add_argument("n", type=int)

    p = sub.add_parser("witness", parents=[common], help="scrambled partner in a neighbourhood")
    p.add_argument("point_file")
    p.add_argument("delta", type=float)
    p.add_argument("--free-index", type=int, default=1)
    p.add_argument("--max-index", type=int, default=12)

    p = sub.add_parser("certify", parents=[common], help="certificate or limit for a pair")
    p.add_argument("pair_file")

    p = sub.add_parser("refute-set", parents=[common], help="check a candidate scrambled set")
    p.add_argument("set_file")

    p = sub.add_parser("lemma1", parents=[common], help="harmonic-sum hit time search")
    p.add_argument("p", type=int)
    p.add_argument("m", type=int)
    p.add_argument("target", type=float)

    p = sub.add_parser("sweep", parents=[common], help="seeded certification sweep (CSV)")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="add a wall_time column")
    return parser


def _configure_logging():
    level = os.environ.get("LIYORKE_LOG")
    if level:
        logging.basicConfig(level=level.upper(), stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    tabular = args.command in ("iterate", "sweep")
    out_format = args.format or ("csv" if args.command == "sweep" else "json")
    fields = None
    code = EXIT_OK
    try:
        config = RunConfig(args.tol, args.budget, args.eps, args.seed, out_format)
        if args.command == "iterate":
            payload = cmd_iterate(args.point_file, args.n, config)
        elif args.command == "witness":
            payload = cmd_witness(args.point_file, args.delta, config,
                                  args.free_index, args.max_index)
        elif args.command == "certify":
            payload = cmd_certify(args.pair_file, config)
        elif args.command == "refute-set":
            payload = cmd_refute_set(args.set_file, config)
        elif args.command == "lemma1":
            payload = cmd_lemma1(args.p, args.m, args.target, config)
        else:
            if args.samples < 0:
                raise LiYorkeError("--samples must be >= 0")
            payload = cmd_sweep(config, args.samples, args.workers, args.timing)
            fields = SWEEP_FIELDS + (["wall_time"] if args.timing else [])
    except CommandResult as res:
        payload, code = res.payload, res.code
    except (ValueError, OSError) as exc:
        print(f"liyorke {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if tabular and out_format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = render(payload, out_format, fields)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
