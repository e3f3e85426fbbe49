"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage error,
3 truncation too small for a z = 1 specialization.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import genfun, jagged, overpart
from .jagged import RestrictionParams
from .report import IdentityReport
from .series import BivariateSeries, PowerSeries, TruncationError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TRUNCATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    fmt: str = "text"
    out: str | None = None
    profile: str | None = None
    threads: int = 1


# --- output --------------------------------------------------------------

def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _format_series(s: BivariateSeries | PowerSeries, fmt: str, label: str) -> str:
    if fmt == "json":
        return _dumps({"series": label, **s.to_json()})
    if isinstance(s, PowerSeries):
        if fmt == "csv":
            return _csv(["q_exp", "coeff"], ((b, c) for b, c in enumerate(s.coeffs)))
        return f"{label}\n" + "".join(f"q^{b}: {c}\n" for b, c in enumerate(s.coeffs))
    if fmt == "csv":
        return _csv(["z_exp", "q_exp", "coeff"],
                    ((a, b, c) for a, row in enumerate(s.coeffs) for b, c in enumerate(row)))
    lines = [f"{label}  (rows z^0..z^{s.z_max}, columns q^0..q^{s.q_max})"]
    lines += [f"z^{a}: " + " ".join(str(c) for c in row) for a, row in enumerate(s.coeffs)]
    return "\n".join(lines) + "\n"


# --- commands ------------------------------------------------------------

def _params(K: int | None) -> RestrictionParams:
    if K is None:
        raise UsageError("--K is required")
    try:
        return RestrictionParams(K)
    except ValueError as e:
        raise UsageError(str(e)) from e


def cmd_enumerate(args, cfg: RunConfig) -> int:
    if args.length is None or args.weight is None:
        raise UsageError("--length and --weight are required")
    if args.length < 0 or args.weight < 0:
        raise UsageError("--length and --weight must be non-negative")
    r = _params(args.restrict) if args.restrict is not None else None
    parts = jagged.enumerate_jagged(args.length, args.weight, r)
    if cfg.fmt == "json":
        text = _dumps([list(p) for p in parts])
    elif cfg.fmt == "csv":
        text = _csv(["index", "parts"], ((k, " ".join(map(str, p))) for k, p in enumerate(parts)))
    else:
        text = "".join("(" + ",".join(map(str, p)) + ")\n" for p in parts)
        text += f"# {len(parts)} partition(s)\n"
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_count(args, cfg: RunConfig) -> int:
    r = _params(args.K)
    kind = args.kind
    idx = args.i if kind == "A" else args.j
    if idx is None:
        raise UsageError(f"--{'i' if kind == 'A' else 'j'} is required for {kind}")
    counter = jagged.count_A if kind == "A" else jagged.count_B
    if args.length is not None and args.weight is not None:
        cells = [(args.length, args.weight)]
    else:
        cells = [(m, n) for m in range(args.zmax + 1) for n in range(args.qmax + 1)]
    try:
        rows = [(r.K, idx, m, n, counter(r, idx, m, n)) for m, n in cells]
    except ValueError as e:
        raise UsageError(str(e)) from e
    if cfg.fmt == "json":
        text = _dumps([dict(zip(["K", "i_or_j", "m", "n", "count"], row)) for row in rows])
    elif cfg.fmt == "csv":
        text = _csv(["K", "i_or_j", "m", "n", "count"], rows)
    else:
        text = "".join(f"{kind}_{{K={K},{t}}}({m},{n}) = {c}\n" for K, t, m, n, c in rows)
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_series(args, cfg: RunConfig) -> int:
    z, q = args.zmax, args.qmax
    kind = args.kind
    try:
        if kind == "A":
            r = _params(args.K)
            s = genfun.gf_A(r, _need(args.i, "--i"), z, q)
            label = f"A_{{{r.K},{2 * args.i}}}"
        elif kind == "B":
            r = _params(args.K)
            s = genfun.gf_B(r, _need(args.j, "--j"), z, q)
            label = f"B_{{{r.K},{args.j}}}"
        elif kind == "F":
            s = genfun.andrews_F(_need(args.k, "--k"), _need(args.i, "--i"), z, q)
            label = f"F_{{{args.k},{args.i}}}"
        elif kind == "factored":
            r = _params(args.K)
            s = genfun.gf_A_factored(r, _need(args.i, "--i"), z, q)
            label = f"(-zq)_inf F_{{{r.kappa},{args.i}}}(z^2)"
        elif kind == "jagged":
            s = genfun.unrestricted_jagged_gf(z, q)
            label = "(-zq)_inf/(z^2q)_inf"
        elif kind == "product":
            r = _params(args.K)
            s = genfun.product_theorem11(r, _need(args.i, "--i"), q)
            label = f"product side K={r.K} i={args.i}"
        else:  # staircase
            r = _params(args.K)
            s = genfun.staircase_transform(genfun.gf_A(r, _need(args.i, "--i"), z, q))
            label = f"staircased A_{{{r.K},{2 * args.i}}}"
    except ValueError as e:
        if isinstance(e, TruncationError):
            raise
        raise UsageError(str(e)) from e
    if args.z1 and isinstance(s, BivariateSeries):
        s = genfun.specialize_z1(s, genfun.Z_PER_Q)
        label += " at z=1"
    _emit(_format_series(s, cfg.fmt, label), cfg.out)
    return EXIT_OK


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def cmd_bijection(args, cfg: RunConfig) -> int:
    if args.parts is not None:
        p = tuple(_int_list(args.parts))
        if any(x < 0 for x in p) or not jagged.is_jagged(p):
            raise UsageError(f"not a jagged partition: {p}")
        rows = [(p, overpart.jagged_to_overpartition(p))]
    elif args.alpha is not None or args.beta is not None:
        try:
            o = overpart.Overpartition.of(_int_list(args.alpha or ""), _int_list(args.beta or ""))
        except ValueError as e:
            raise UsageError(str(e)) from e
        rows = [(overpart.overpartition_to_jagged(o), o)]
    elif args.weight is not None:
        rows = [(p, overpart.jagged_to_overpartition(p))
                for p in sorted(jagged.iter_jagged_by_weight(args.weight))]
    else:
        raise UsageError("give --parts, --alpha/--beta or --weight")
    if cfg.fmt == "json":
        text = _dumps([{"jagged": list(p), **o.to_json()} for p, o in rows])
    elif cfg.fmt == "csv":
        text = _csv(["jagged", "alpha", "beta"],
                    ((" ".join(map(str, p)), " ".join(map(str, o.alpha)),
                      " ".join(map(str, o.beta))) for p, o in rows))
    else:
        text = "".join(f"{p} <-> alpha={o.alpha} beta={o.beta}\n" for p, o in rows)
    _emit(text, cfg.out)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as e:
        raise UsageError(f"expected integers, got {text!r}") from e


# --- verification profiles -----------------------------------------------

CHECK_ORDER = [
    "lemma4", "lemma5", "theorem1", "sum-forms", "f-recurrence", "corollary8",
    "corollary9", "corollary10", "theorem11", "corollary12", "bijection",
    "exclusion-equivalence",
]

# profile -> check -> list of (function, args)
PROFILES = {
    "quick": {
        "lemma4": [(jagged.verify_lemma4, (K, 8, 12)) for K in range(3, 8)],
        "lemma5": [(genfun.check_lemma5, (K, 10, 16)) for K in range(3, 8)],
        "theorem1": [(genfun.check_theorem1, (K, 8, 14)) for K in range(3, 8)],
        "sum-forms": [(genfun.check_sum_forms, (K, 8, 14)) for K in range(3, 8)],
        "f-recurrence": [(genfun.check_F_recurrence, (k, 8, 16)) for k in (2, 3, 4)],
        "corollary8": [(genfun.check_corollary8, (K, 10, 20)) for K in (4, 6)]
                      + [(genfun.check_corollary8_proof_identities, (k, 10, 20)) for k in (2, 3)],
        "corollary9": [(genfun.corollary9_check, (8, 20))],
        "corollary10": [(genfun.corollary10_check, (8, 20))],
        "theorem11": [(genfun.check_theorem11, (K, 25)) for K in range(3, 7)],
        "corollary12": [(overpart.check_corollary12, (K, 10)) for K in (3, 4)],
        "bijection": [(overpart.check_bijection, (9,))],
        "exclusion-equivalence": [(jagged.check_exclusion_duality, (K, 9)) for K in (3, 4, 5)],
    },
    "full": {
        "lemma4": [(jagged.verify_lemma4, (K, 12, 18)) for K in range(3, 8)],
        "lemma5": [(genfun.check_lemma5, (K, 12, 24)) for K in range(3, 8)],
        "theorem1": [(genfun.check_theorem1, (K, 12, 20)) for K in range(3, 8)],
        "sum-forms": [(genfun.check_sum_forms, (K, 12, 20)) for K in range(3, 8)],
        "f-recurrence": [(genfun.check_F_recurrence, (k, 10, 25)) for k in (2, 3, 4)],
        "corollary8": [(genfun.check_corollary8, (K, 12, 30)) for K in (4, 6, 8)]
                      + [(genfun.check_corollary8_proof_identities, (k, 12, 30)) for k in (2, 3, 4)],
        "corollary9": [(genfun.corollary9_check, (10, 30))],
        "corollary10": [(genfun.corollary10_check, (10, 30))],
        "theorem11": [(genfun.check_theorem11, (K, 40)) for K in range(3, 9)],
        "corollary12": [(overpart.check_corollary12, (K, 15)) for K in (3, 4, 5)],
        "bijection": [(overpart.check_bijection, (12,))],
        "exclusion-equivalence": [(jagged.check_exclusion_duality, (K, 12)) for K in range(3, 7)],
    },
}


def _custom_task(name: str, args):
    """A single check driven by explicit --K/--zmax/--qmax flags."""
    K, z, q = args.K, args.zmax, args.qmax
    needs_K = {"lemma4", "lemma5", "theorem1", "sum-forms", "corollary8", "theorem11",
               "corollary12", "exclusion-equivalence"}
    if name in needs_K:
        _params(K)
    if name == "corollary8" and K % 2:
        raise UsageError("corollary8 needs an even --K")
    if name == "f-recurrence":
        return genfun.check_F_recurrence, (_need(args.k, "--k"), z, q)
    table = {
        "lemma4": (jagged.verify_lemma4, (K, z, q)),
        "lemma5": (genfun.check_lemma5, (K, z, q)),
        "theorem1": (genfun.check_theorem1, (K, z, q)),
        "sum-forms": (genfun.check_sum_forms, (K, z, q)),
        "corollary8": (genfun.check_corollary8, (K, z, q)),
        "corollary9": (genfun.corollary9_check, (z, q)),
        "corollary10": (genfun.corollary10_check, (z, q)),
        "theorem11": (genfun.check_theorem11, (K, q)),
        "corollary12": (overpart.check_corollary12, (K, q)),
        "bijection": (overpart.check_bijection, (q,)),
        "exclusion-equivalence": (jagged.check_exclusion_duality, (K, q)),
    }
    return table[name]


def _run_task(task) -> IdentityReport:
    fn, fargs = task
    return fn(*fargs)


def cmd_verify(args, cfg: RunConfig) -> int:
    names = args.checks or []
    unknown = [n for n in names if n not in CHECK_ORDER]
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(unknown)}; choose from {CHECK_ORDER}")
    if names and cfg.profile is None and (args.K is not None or args.k is not None
                                          or args.explicit_truncation):
        tasks = [_custom_task(n, args) for n in sorted(names, key=CHECK_ORDER.index)]
    else:
        profile = cfg.profile or "quick"
        if profile not in PROFILES:
            raise UsageError(f"unknown profile {profile!r}")
        chosen = sorted(names, key=CHECK_ORDER.index) if names else CHECK_ORDER
        tasks = [t for n in chosen for t in PROFILES[profile][n]]
    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            reports = list(pool.map(_run_task, tasks))
    else:
        reports = [_run_task(t) for t in tasks]
    passed = all(r.passed for r in reports)
    if cfg.fmt == "json":
        text = _dumps({"status": "pass" if passed else "fail",
                       "reports": [r.to_json() for r in reports]})
    elif cfg.fmt == "csv":
        text = _csv(["name", "params", "truncation", "status", "checked", "witness"],
                    ((r.name, json.dumps(r.params), json.dumps(r.truncation), r.status,
                      r.checked, json.dumps(r.witness) if r.witness else "") for r in reports))
    else:
        text = "".join(r.line() + "\n" for r in reports)
        text += f"{sum(r.passed for r in reports)}/{len(reports)} checks passed\n"
    _emit(text, cfg.out)
    return EXIT_OK if passed else EXIT_FAIL


# --- argument parsing ----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="cap on worker processes")

    parser = argparse.ArgumentParser(
        prog="kjagged", description="K-restricted jagged partitions: enumeration, series, checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list jagged partitions")
    p.add_argument("--length", type=int)
    p.add_argument("--weight", type=int)
    p.add_argument("--restrict", type=int, metavar="K", help="keep only K-restricted ones")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", parents=[common], help="A_{K,2i}(m,n) or B_{K,j}(m,n)")
    p.add_argument("kind", choices=["A", "B"])
    p.add_argument("--K", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--length", type=int)
    p.add_argument("--weight", type=int)
    p.add_argument("--zmax", type=int, default=6)
    p.add_argument("--qmax", type=int, default=10)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("series", parents=[common], help="coefficient table of a series")
    p.add_argument("kind", choices=["A", "B", "F", "factored", "jagged", "product", "staircase"])
    p.add_argument("--K", type=int)
    p.add_argument("--k", type=int, help="first index of F_{k,i}")
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--zmax", type=int, default=10)
    p.add_argument("--qmax", type=int, default=20)
    p.add_argument("--z1", action="store_true", help="specialize z = 1 (exit 3 if zmax too small)")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", parents=[common], help="run identity checks")
    p.add_argument("checks", nargs="*", help=f"subset of: {' '.join(CHECK_ORDER)}")
    p.add_argument("--profile", help="quick (default) or full")
    p.add_argument("--K", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int, help="accepted for symmetry; checks cover every i")
    p.add_argument("--zmax", type=int)
    p.add_argument("--qmax", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bijection", parents=[common], help="jagged <-> overpartition")
    p.add_argument("--parts", help="a jagged partition, e.g. 2,1,2,1,0,1")
    p.add_argument("--alpha", help="overlined parts")
    p.add_argument("--beta", help="plain parts")
    p.add_argument("--weight", type=int, help="map every jagged partition of this weight")
    p.set_defaults(func=cmd_bijection)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args.command, args.format, args.out, getattr(args, "profile", None),
                    args.threads)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    if args.command == "verify":
        if args.profile is not None and args.profile not in PROFILES:
            parser.error(f"--profile must be one of {sorted(PROFILES)}")
        args.explicit_truncation = args.zmax is not None or args.qmax is not None
        if args.zmax is None:
            args.zmax = 10
        if args.qmax is None:
            args.qmax = 20
    for flag in ("zmax", "qmax", "length", "weight"):
        v = getattr(args, flag, None)
        if v is not None and v < 0:
            parser.error(f"--{flag} must be non-negative")
    try:
        return args.func(args, cfg)
    except UsageError as e:
        parser.error(str(e))
    except TruncationError as e:
        print(f"kjagged: truncation error: {e}", file=sys.stderr)
        return EXIT_TRUNCATION


if __name__ == "__main__":
    sys.exit(main())
