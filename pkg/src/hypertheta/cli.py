"""Command-line front end: eval / verify / list.

    hypertheta eval   --char 0,1,0,1 --z 0,0 --tau i,i,0
    hypertheta verify --samples 100 --seed 0 --out reports.jsonl
    hypertheta list   --format json

`verify` drives all three suites — the identity catalog, the algebraic
addition law, and the elliptic rotation identity — and emits one
ResidualReport row per (id, sample) as JSON-lines or CSV, followed by a
RunReport summary on stdout.  Reports are a pure function of the
configuration: rows are sorted by id then sample index (so worker
parallelism never reorders output), and the RunReport carries a
determinism hash over everything except wall time.

Exit codes: 0 all pass; 2 numeric failures; 3 configuration/parse errors.
`eval` additionally distinguishes InvalidPeriod (4), RadiusExceeded (5)
and DivisorHit (6).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .addition import A_LABELS, DivisorHit, f_eval, verify_addition
from .elliptic_so3 import component_residuals, euler_lhs, euler_rhs
from .identity_catalog import (
    Domain,
    Identity,
    ResidualReport,
    base_id,
    build_catalog,
    catalog_as_json,
    load_catalog,
    resolve_sign,
    verify_catalog,
)
from .sampling import (
    POINT_IM,
    POINT_RE,
    TAU_DET_FLOOR,
    TAU_IM_DIAG,
    TAU_RE,
    make_rng,
    sample_tau,
)
from .theta_core import (
    DEFAULT_POLICY,
    EvalPoint,
    InvalidPeriod,
    PeriodMatrix,
    PrecisionPolicy,
    RadiusExceeded,
    Scale,
    ThetaCharacteristic,
    theta_eval,
    truncation_radius,
)

EXIT_OK = 0
EXIT_FAILED = 2
EXIT_CONFIG = 3
EXIT_INVALID_PERIOD = 4
EXIT_RADIUS = 5
EXIT_DIVISOR = 6

ELLIPTIC_TOL = 1e-10
_ELLIPTIC_IDS = ("E.matrix", "E.11", "E.12", "E.13", "E.22", "E.23", "E.33")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; the contract reserves 2 for numeric
    failures, so parser errors are remapped to the config exit code."""

    def error(self, message):  # noqa: D102 - argparse hook
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


# --------------------------------------------------------------------------
# flag parsing helpers

def _parse_complex(token: str) -> complex:
    """Complex scalar; accepts 'i' notation ('i', '-i', '1+2i', '0.3i')."""
    text = token.strip().replace("I", "i")
    if not text:
        raise ValueError("empty number")
    text = text.replace("i", "j")
    if text in ("j", "+j"):
        text = "1j"
    elif text == "-j":
        text = "-1j"
    else:
        text = text.replace("+j", "+1j").replace("-j", "-1j")
    return complex(text)


def _parse_char(text: str) -> ThetaCharacteristic:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"--char wants 4 entries, got {len(parts)}")
    return ThetaCharacteristic.of(*(Fraction(p) for p in parts))


def _parse_point(text: str) -> EvalPoint:
    """--z as two complex tokens 'x,y' or four reals 'x_re,x_im,y_re,y_im'."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 2:
        return EvalPoint(_parse_complex(parts[0]), _parse_complex(parts[1]))
    if len(parts) == 4:
        re = [float(p) for p in parts]
        return EvalPoint(complex(re[0], re[1]), complex(re[2], re[3]))
    raise ValueError(f"--z wants 2 complex or 4 real entries, got {len(parts)}")


def _parse_tau(text: str) -> PeriodMatrix:
    """--tau as three complex tokens 't1,t2,t12' or six reals."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 3:
        vals = [_parse_complex(p) for p in parts]
    elif len(parts) == 6:
        re = [float(p) for p in parts]
        vals = [complex(re[0], re[1]), complex(re[2], re[3]),
                complex(re[4], re[5])]
    else:
        raise ValueError(
            f"--tau wants 3 complex or 6 real entries, got {len(parts)}")
    return PeriodMatrix(*vals)


def _tau_family() -> dict:
    return {"im_diag": list(TAU_IM_DIAG), "re": list(TAU_RE),
            "det_floor": TAU_DET_FLOOR,
            "point_re": list(POINT_RE), "point_im": list(POINT_IM)}


@dataclass
class VerificationConfig:
    seed: int = 0
    n_samples: int = 100
    eps_tail: float = 1e-14
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    only: tuple[str, ...] = ()
    output_path: str = ""
    output_format: str = "json-lines"
    jobs: int = 1
    tau_family: dict = field(default_factory=_tau_family)

    def validate(self) -> None:
        if self.n_samples < 1:
            raise ValueError("--samples must be >= 1")
        if min(self.eps_tail, self.rel_tol, self.abs_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if self.output_format not in ("json-lines", "csv"):
            raise ValueError(f"unknown format {self.output_format!r}")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")

    def policy(self) -> PrecisionPolicy:
        return PrecisionPolicy(eps_tail=self.eps_tail, rel_tol=self.rel_tol,
                               abs_tol=self.abs_tol)

    def as_json(self) -> dict:
        return {"seed": self.seed, "n_samples": self.n_samples,
                "eps_tail": self.eps_tail, "rel_tol": self.rel_tol,
                "abs_tol": self.abs_tol, "only": list(self.only),
                "output_path": self.output_path,
                "output_format": self.output_format, "jobs": self.jobs,
                "tau_family": self.tau_family}

    @classmethod
    def from_args(cls, args) -> "VerificationConfig":
        base: dict = {}
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                base = json.load(fh)
        cfg = cls(**{k: v for k, v in base.items()
                     if k in cls.__dataclass_fields__})
        # flags win over the config file
        if args.seed is not None:
            cfg.seed = args.seed
        if args.samples is not None:
            cfg.n_samples = args.samples
        if args.eps_tail is not None:
            cfg.eps_tail = args.eps_tail
        if args.rel_tol is not None:
            cfg.rel_tol = args.rel_tol
        if args.abs_tol is not None:
            cfg.abs_tol = args.abs_tol
        if args.only:
            cfg.only = tuple(s.strip() for s in args.only.split(",") if s.strip())
        if args.format:
            cfg.output_format = args.format
        if args.out:
            cfg.output_path = args.out
        if args.jobs is not None:
            cfg.jobs = args.jobs
        if isinstance(cfg.only, list):
            cfg.only = tuple(cfg.only)
        return cfg


# --------------------------------------------------------------------------
# eval

def cmd_eval(args) -> int:
    try:
        ch = _parse_char(args.char)
        z = _parse_point(args.z)
        tau = _parse_tau(args.tau)
        pol = PrecisionPolicy(
            eps_tail=args.eps_tail if args.eps_tail is not None
            else DEFAULT_POLICY.eps_tail)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        reduced, _ = ch.reduce()
        radius = truncation_radius(reduced, z, tau, pol.eps_tail,
                                   pol.max_radius)
        if args.ratio:
            value = f_eval(ch, z, tau, pol).value
            base = ThetaCharacteristic.of(0, 0, 0, 0).reduce()[0]
            radius = max(radius, truncation_radius(base, z, tau,
                                                   pol.eps_tail,
                                                   pol.max_radius))
            label = f"F{ch}"
        else:
            value = theta_eval(ch, z, tau, pol)
            label = f"theta{ch}"
    except InvalidPeriod as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_PERIOD
    except RadiusExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RADIUS
    except DivisorHit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVISOR
    print(f"{label}({z.x}, {z.y}) = "
          f"{value.real:+.17e}{value.imag:+.17e}j   [radius {radius}]")
    return EXIT_OK


# --------------------------------------------------------------------------
# verify

def _catalog_chunk(payload) -> list[ResidualReport]:
    """Worker entry point: verify a slice of catalog ids (process pool)."""
    ids, n_samples, seed, pol_fields = payload
    pol = PrecisionPolicy(*pol_fields)
    catalog = [i for i in build_catalog() if i.id in ids]
    return verify_catalog(n_samples, seed, pol, catalog=catalog)


def _verify_catalog_rows(cfg: VerificationConfig, catalog: list[Identity],
                         only: set[str] | None) -> list[ResidualReport]:
    pol = cfg.policy()
    if only is not None:
        catalog = [i for i in catalog
                   if i.id in only or base_id(i.id) in only]
    if cfg.jobs <= 1 or len(catalog) < 2:
        return verify_catalog(cfg.n_samples, cfg.seed, pol, catalog=catalog)
    ids = sorted(i.id for i in catalog)
    chunks = [frozenset(ids[k::cfg.jobs]) for k in range(cfg.jobs)]
    pol_fields = (pol.eps_tail, pol.max_radius, pol.rel_tol, pol.abs_tol)
    rows: list[ResidualReport] = []
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        for part in pool.map(_catalog_chunk,
                             [(c, cfg.n_samples, cfg.seed, pol_fields)
                              for c in chunks if c]):
            rows.extend(part)
    rows.sort(key=lambda r: (r.identity_id, r.sample_index))
    return rows


def _verify_elliptic_rows(n_samples: int, seed: int) -> list[ResidualReport]:
    """Matrix identity and component rows at uniform (u1, u3, k) draws."""
    rng = make_rng(seed, "elliptic")
    entry = {"E.11": (0, 0), "E.12": (0, 1), "E.13": (0, 2),
             "E.22": (1, 1), "E.23": (1, 2), "E.33": (2, 2)}
    rows = []
    for idx in range(n_samples):
        u1, u3 = (float(v) for v in rng.uniform(-3.0, 3.0, size=2))
        k = float(rng.uniform(0.0, 1.0))
        lhs = euler_lhs(u1, u3, k).matrix
        rhs = euler_rhs(u1, u3, k).matrix
        gap = abs(lhs - rhs).max()
        rows.append(ResidualReport("E.matrix", idx, 0j, 0j, float(gap),
                                   float(gap), bool(gap < ELLIPTIC_TOL)))
        comp = component_residuals(u1, u3, k)
        for key, (i, j) in entry.items():
            a, b = complex(lhs[i, j]), complex(rhs[i, j])
            res = abs(comp[key.split(".")[1]])
            rows.append(ResidualReport(key, idx, a, b, res,
                                       res / max(abs(a), abs(b), 1.0),
                                       bool(res < ELLIPTIC_TOL)))
    rows.sort(key=lambda r: (r.identity_id, r.sample_index))
    return rows


def _sign_resolution_details(d_ids: list[str], seed: int,
                             pol: PrecisionPolicy) -> list[dict]:
    """resolve_sign records for the selected root-form ids at 3 tau draws."""
    catalog = build_catalog()
    rng = make_rng(seed, "sign-resolution")
    details = []
    for trial in range(3):
        tau = sample_tau(rng)
        for d_id in sorted(d_ids):
            value, record = resolve_sign(d_id, tau, pol, catalog=catalog)
            details.append({"trial": trial, **record,
                            "value": {"re": value.real, "im": value.imag}})
    return details


def _rows_to_text(rows: list[ResidualReport], fmt: str) -> str:
    if fmt == "json-lines":
        return "".join(
            json.dumps(r.as_json(), sort_keys=True, separators=(",", ":"))
            + "\n" for r in rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "sample", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                     "abs_residual", "rel_residual", "pass", "error"])
    for r in rows:
        obj = r.as_json()
        lhs = obj["lhs"] or {"re": "", "im": ""}
        rhs = obj["rhs"] or {"re": "", "im": ""}
        writer.writerow([obj["id"], obj["sample"], lhs["re"], lhs["im"],
                         rhs["re"], rhs["im"],
                         "" if obj["abs_residual"] is None else obj["abs_residual"],
                         "" if obj["rel_residual"] is None else obj["rel_residual"],
                         obj["pass"], obj["error"]])
    return buf.getvalue()


def cmd_verify(args) -> int:
    try:
        cfg = VerificationConfig.from_args(args)
        cfg.validate()
        catalog = load_catalog()
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    only = set(cfg.only) or None
    catalog_ids = {i.id for i in catalog} | {base_id(i.id) for i in catalog}
    addition_ids = set(A_LABELS) | {f"{a}.path" for a in A_LABELS}
    started = time.monotonic()

    run_catalog = only is None or bool(only & catalog_ids)
    run_addition = only is None or bool(only & addition_ids)
    run_elliptic = only is None or any(o.startswith("E") for o in only)

    rows: list[ResidualReport] = []
    redraws = {"tau": 0, "points": 0}
    max_constant_gap = 0.0
    if run_catalog:
        rows.extend(_verify_catalog_rows(cfg, catalog, only))
    if run_addition:
        run = verify_addition(cfg.n_samples, cfg.seed, cfg.policy())
        add_rows = run.reports
        if only is not None:
            add_rows = [r for r in add_rows if r.identity_id in only
                        or base_id(r.identity_id) in only]
        add_rows.sort(key=lambda r: (r.identity_id, r.sample_index))
        rows.extend(add_rows)
        redraws = {"tau": run.tau_redraws, "points": run.point_redraws}
        max_constant_gap = run.max_constant_discrepancy
    if run_elliptic:
        ell = _verify_elliptic_rows(cfg.n_samples, cfg.seed)
        if only is not None:
            ell = [r for r in ell if r.identity_id in only
                   or base_id(r.identity_id) in only or "E" in only]
        rows.extend(ell)
    rows.sort(key=lambda r: (r.identity_id, r.sample_index))

    per_identity: dict[str, dict] = {}
    for r in rows:
        slot = per_identity.setdefault(
            r.identity_id, {"max_rel_residual": 0.0, "passed": 0, "samples": 0})
        if math.isfinite(r.rel_residual):
            slot["max_rel_residual"] = max(slot["max_rel_residual"],
                                           r.rel_residual)
        slot["samples"] += 1
        slot["passed"] += int(r.passed)
    failing = sorted({r.identity_id for r in rows if not r.passed})

    sign_details: list[dict] = []
    selected_d = sorted((only or {f"D{k}" for k in range(1, 17)})
                        & {f"D{k}" for k in range(1, 17)})
    if selected_d:
        sign_details = _sign_resolution_details(selected_d, cfg.seed,
                                                cfg.policy())

    body = _rows_to_text(rows, cfg.output_format)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)

    report = {
        "config": cfg.as_json(),
        "suites": {"catalog": run_catalog, "addition": run_addition,
                   "elliptic": run_elliptic},
        "total_rows": len(rows),
        "passed_rows": sum(r.passed for r in rows),
        "failing_ids": failing,
        "per_identity": per_identity,
        "redraws": redraws,
        "max_constant_discrepancy": max_constant_gap,
        "sign_resolutions": sign_details,
        "versions": {"hypertheta": __version__},
        "catalog_sha256": catalog_as_json(catalog)["sha256"],
    }
    digest = hashlib.sha256()
    digest.update(json.dumps(report, sort_keys=True).encode("utf-8"))
    digest.update(body.encode("utf-8"))
    report["determinism_hash"] = digest.hexdigest()
    report["wall_time_s"] = round(time.monotonic() - started, 3)
    print(json.dumps(report, sort_keys=True))

    if failing:
        print("failing ids: " + ", ".join(failing), file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


# --------------------------------------------------------------------------
# list

_ARG_NAMES = {(1, 1): "(z1+z2)", (1, -1): "(z1-z2)", (2, 0): "(2z1)",
              (0, 2): "(2z2)", (1, 0): "(z)", (0, 0): "(0)"}


def _fmt_coeff(c: complex) -> str:
    if c == 1:
        return ""
    if c == -1:
        return "-"
    if c == 1j:
        return "i*"
    if c == -1j:
        return "-i*"
    if c.imag == 0:
        f = Fraction(c.real).limit_denominator(64)
        return f"{f}*"
    if c.real == 0:
        f = Fraction(c.imag).limit_denominator(64)
        return f"{f}i*"
    return f"({c.real:g}{c.imag:+g}i)*"


def _fmt_term(term) -> str:
    factors = "*".join(
        ("T" if f.scale is Scale.DOUBLED else "t")
        + str(f.ch) + _ARG_NAMES[(f.arg.coeff1, f.arg.coeff2)]
        for f in term.factors)
    return _fmt_coeff(term.coefficient) + factors


def format_identity(idty: Identity) -> str:
    def side(terms) -> str:
        parts = [_fmt_term(t) for t in terms]
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    return f"{side(idty.lhs)} = {side(idty.rhs)}"


_ADDITION_LISTING = [
    (label, f"quotient F{ThetaCharacteristic.of(*ch)}(z1+z2) from the "
            "algebraic addition law vs direct summation")
    for label, ch in sorted(A_LABELS.items(),
                            key=lambda kv: int(kv[0][1:]))]

_ELLIPTIC_LISTING = [
    ("E.matrix", "X(u3)Z(u1+u3)X(u1) = Z(u1)X(u1+u3)Z(u3)"),
    ("E.11", "cn(u2) - cn(u1)cn(u3) + dn(u2)sn(u1)sn(u3) = 0"),
    ("E.12", "dn(u1)sn(u2) - cn(u1)sn(u3) - dn(u2)sn(u1)cn(u3) = 0"),
    ("E.13", "k(sn(u2)sn(u1) - sn(u1)sn(u2)) = 0 (structural)"),
    ("E.22", "cn(u2)dn(u1)dn(u3) - k^2 sn(u1)sn(u3) + sn(u1)sn(u3)"
             " - cn(u1)cn(u3)dn(u2) = 0"),
    ("E.23", "-cn(u1)k sn(u2) + dn(u1)k sn(u3) + dn(u3)k sn(u1)cn(u2) = 0"),
    ("E.33", "-dn(u2) + dn(u1)dn(u3) - cn(u2)k^2 sn(u1)sn(u3) = 0"),
]


def cmd_list(args) -> int:
    try:
        catalog = load_catalog()
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.format == "json":
        print(json.dumps(catalog_as_json(catalog), indent=1, sort_keys=True))
        return EXIT_OK
    for idty in catalog:
        flags = ",".join(idty.flags) if idty.flags else "-"
        print(f"{idty.id:10s} {idty.domain.value:13s} {flags:14s} "
              f"{format_identity(idty)}")
        if idty.note:
            print(f"{'':10s} {'':13s} {'':14s} # {idty.note}")
    for label, desc in _ADDITION_LISTING:
        print(f"{label:10s} {'Addition':13s} {'-':14s} {desc}")
    for label, desc in _ELLIPTIC_LISTING:
        print(f"{label:10s} {'Elliptic':13s} {'-':14s} {desc}")
    two_point = sum(i.domain is Domain.TWO_POINT for i in catalog)
    print(f"# {len(catalog)} catalog identities "
          f"({two_point} TwoPoint), 15 addition rows, "
          f"{len(_ELLIPTIC_LISTING)} elliptic rows")
    return EXIT_OK


# --------------------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="hypertheta",
                     description="genus-2 theta identity harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one theta value")
    p_eval.add_argument("--char", required=True,
                        help="a,c,b,d (rationals like 1/2 allowed)")
    p_eval.add_argument("--z", required=True,
                        help="x,y complex or x_re,x_im,y_re,y_im")
    p_eval.add_argument("--tau", required=True,
                        help="t1,t2,t12 complex or six reals")
    p_eval.add_argument("--ratio", action="store_true",
                        help="print the quotient by theta[0 0;0 0] instead")
    p_eval.add_argument("--eps-tail", type=float, default=None)

    p_verify = sub.add_parser("verify", help="run the verification suites")
    p_verify.add_argument("--config", default="",
                          help="JSON config file (flags win)")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--samples", type=int, default=None)
    p_verify.add_argument("--eps-tail", type=float, default=None)
    p_verify.add_argument("--rel-tol", type=float, default=None)
    p_verify.add_argument("--abs-tol", type=float, default=None)
    p_verify.add_argument("--only", default="",
                          help="comma-separated ids or id families")
    p_verify.add_argument("--format", choices=("json-lines", "csv"),
                          default=None)
    p_verify.add_argument("--out", default="",
                          help="write rows here instead of stdout")
    p_verify.add_argument("--jobs", type=int, default=None,
                          help="parallel workers for the catalog suite")

    p_list = sub.add_parser("list", help="print the identity inventory")
    p_list.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_list(args)
    except BrokenPipeError:
        # stdout consumer went away (e.g. `hypertheta list | head`)
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
