"""Command-line entry point: ``symhyper <command> [options]``.

Exit status is 0 when every requested check passes, 1 on a mathematical
failure (the report carries the first counterexample) and 2 on usage or
input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .algebra import TEMPLATES, fit_relation, verify_q_onsager, verify_relation
from .classify import classify
from .eigen import apply_abstract, eigenpoly_descent, eigenpolys_recurrence, u_via_descent
from .exact import LaurentPolynomial, scalar_from_str, scalar_to_str
from .families import (PRESETS, FamilySpec, GaugedFamily, GaugeTransform, InadmissibleGaugeError,
                       gauge, table, u_closed)
from .moments import (check_ns_condition, check_operator_symmetry, moments_from_expansion,
                      orthogonality_report)
from .realizations import (RealizationError, UnsupportedFamilyError, apply_realized, build_realization,
                           check_realization)

COMMANDS = ("table", "poly", "verify", "realize", "algebra", "classify", "gauge")
SUITES = ("eigen", "orthogonality", "ns", "symmetry", "realization", "algebra")


class UsageError(Exception):
    """Bad flags or unreadable input: exit status 2."""


@dataclass
class RunConfig:
    command: str
    family: Optional[str] = None
    n_max: int = 10
    output_format: str = "json"
    output_path: Optional[Path] = None
    method: str = "descent"
    degree: Optional[int] = None
    suite: str = "all"
    action: Optional[str] = None
    template: Optional[str] = None
    input_path: Optional[Path] = None
    apply: Optional[str] = None
    gauge: dict[str, Fraction] = field(default_factory=dict)
    seed: int = 0
    pairs: int = 50
    timing: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.n_max < 1:
            raise UsageError("--n-max must be at least 1")
        if self.output_format not in ("json", "csv"):
            raise UsageError("--out must be json or csv")


# -- input ----------------------------------------------------------------------

def load_family(ref: Optional[str]) -> FamilySpec:
    """A preset name or a path to a JSON family spec."""
    if ref is None:
        raise UsageError("--family is required")
    if ref in PRESETS:
        return PRESETS[ref]
    path = Path(ref)
    if not path.is_file():
        raise UsageError(f"{ref!r} is neither a preset ({', '.join(PRESETS)}) nor a file")
    try:
        return FamilySpec.from_dict(json.loads(path.read_text()))
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read family spec {ref}: {exc}") from None


def load_sequences(path: Optional[Path]) -> tuple[list[Fraction], list[Fraction]]:
    if path is None:
        raise UsageError("--input is required")
    try:
        obj = json.loads(Path(path).read_text())
        lam = [scalar_from_str(str(v)) for v in obj["lambda"]]
        nu = [scalar_from_str(str(v)) for v in obj["nu"]]
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read sequences from {path}: {exc}") from None
    return lam, nu


def parse_poly(text: str) -> LaurentPolynomial:
    """A polynomial JSON file, or comma-separated coefficients ``c0,c1,...`` of ``c0 + c1 x + ...``."""
    path = Path(text)
    if path.is_file():
        try:
            return LaurentPolynomial.from_json(json.loads(path.read_text()))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"cannot read polynomial {text}: {exc}") from None
    try:
        return LaurentPolynomial.from_coefficients(scalar_from_str(t.strip()) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad polynomial {text!r}: {exc}") from None


# -- output ---------------------------------------------------------------------

def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return scalar_to_str(obj)
    if isinstance(obj, LaurentPolynomial):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out.extend(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
        return out
    if isinstance(obj, list):
        out = []
        for i, v in enumerate(obj):
            out.extend(_flatten(v, f"{prefix}[{i}]"))
        return out
    return [(prefix, obj)]


def render(report: dict, fmt: str) -> str:
    data = _jsonable(report)
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows = data.get("rows") if isinstance(data, dict) else None
    if rows and all(isinstance(r, dict) for r in rows):
        header = list(rows[0])
        writer.writerow(header)
        for r in rows:
            writer.writerow([json.dumps(r[h]) if isinstance(r[h], (dict, list)) else r[h] for h in header])
    else:
        writer.writerow(["key", "value"])
        for k, v in _flatten(data):
            writer.writerow([k, "" if v is None else v])
    return buf.getvalue()


# -- commands -------------------------------------------------------------------

def cmd_table(cfg: RunConfig) -> tuple[bool, dict]:
    spec = load_family(cfg.family)
    return True, {"family": spec.to_dict(), "rows": table(spec, cfg.n_max)}


def cmd_poly(cfg: RunConfig) -> tuple[bool, dict]:
    spec = load_family(cfg.family)
    top = cfg.n_max if cfg.degree is None else cfg.degree
    if top < 0:
        raise UsageError("--degree must be nonnegative")
    if cfg.method == "descent":
        polys = [eigenpoly_descent(spec, n) for n in range(top + 1)]
    else:
        polys = eigenpolys_recurrence(spec, top)
    if cfg.degree is not None:
        p = polys[cfg.degree]
        return True, {"family": spec.to_dict(), "method": cfg.method, "n": cfg.degree,
                      "poly": str(p), "terms": p.to_json()["terms"]}
    rows = [{"n": n, "poly": str(p), "terms": p.to_json()["terms"]} for n, p in enumerate(polys)]
    return True, {"family": spec.to_dict(), "method": cfg.method, "rows": rows}


def suite_eigen(spec: FamilySpec, n_max: int) -> dict:
    rec = eigenpolys_recurrence(spec, n_max)
    for n in range(n_max + 1):
        p = eigenpoly_descent(spec, n)
        lam = spec.lambda_nu(n)[0]
        if apply_abstract(spec, p) != p.scale(lam):
            return {"name": "eigen", "passed": False, "first_failure": {"n": n, "check": "L P_n = lambda_n P_n"}}
        if p != rec[n]:
            return {"name": "eigen", "passed": False,
                    "first_failure": {"n": n, "check": "descent = recurrence",
                                      "descent": p.to_json(), "recurrence": rec[n].to_json()}}
        if n >= 1 and u_via_descent(spec, n) != u_closed(spec, n):
            return {"name": "eigen", "passed": False,
                    "first_failure": {"n": n, "check": "u_n from descent = closed form",
                                      "descent": u_via_descent(spec, n), "closed": u_closed(spec, n)}}
    return {"name": "eigen", "passed": True, "checked": n_max + 1, "first_failure": None}


def suite_symmetry(spec: FamilySpec, n_max: int, seed: int, pairs: int) -> dict:
    deg = min(n_max, 12)
    sigma = moments_from_expansion(spec, 2 * deg)
    rng = random.Random(seed)

    def rand_poly():
        return LaurentPolynomial.from_coefficients(
            Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(1, deg + 1)))

    for i in range(pairs):
        f, g = rand_poly(), rand_poly()
        rep = check_operator_symmetry(spec, sigma, f, g)
        if not rep.passed:
            return {**rep.to_dict(), "checked": i + 1}
    return {"name": "symmetry", "passed": True, "checked": pairs, "first_failure": None,
            "details": {"max_degree": deg, "seed": seed}}


def suite_realization(spec: FamilySpec, n_max: int) -> dict:
    try:
        op = build_realization(spec)
    except UnsupportedFamilyError as exc:
        return {"name": "realization", "passed": True, "skipped": True, "reason": str(exc)}
    return check_realization(op, n_max)


def suite_algebra(spec: FamilySpec, n_max: int) -> dict:
    target = spec.in_algebra_gauge()
    report = verify_relation(target, n_max).to_dict()
    passed = report["passed"] and report["fit"]["consistent"] and report["fit"]["unique"]
    out = {"name": "algebra", "passed": passed, "relation": report}
    if spec.kind.is_q:
        onsager = verify_q_onsager(target, n_max)
        out["q_onsager"] = [c.to_dict() for c in onsager]
        out["passed"] = passed and all(c.holds for c in onsager)
    return out


def cmd_verify(cfg: RunConfig) -> tuple[bool, dict]:
    spec = load_family(cfg.family)
    suites = SUITES if cfg.suite == "all" else (cfg.suite,)
    results = []
    for name in suites:
        start = time.perf_counter()
        if name == "eigen":
            res = suite_eigen(spec, cfg.n_max)
        elif name == "orthogonality":
            res = orthogonality_report(spec, cfg.n_max).to_dict()
        elif name == "ns":
            sigma = moments_from_expansion(spec, 2 * cfg.n_max)
            res = check_ns_condition(spec, sigma, cfg.n_max).to_dict()
        elif name == "symmetry":
            res = suite_symmetry(spec, cfg.n_max, cfg.seed, cfg.pairs)
        elif name == "realization":
            res = suite_realization(spec, cfg.n_max)
        else:
            res = suite_algebra(spec, cfg.n_max)
        if cfg.timing:
            res["wall_time_s"] = round(time.perf_counter() - start, 6)
        results.append(res)
    passed = all(r["passed"] for r in results)
    return passed, {"family": spec.to_dict(), "n_max": cfg.n_max, "passed": passed, "suites": results}


def cmd_realize(cfg: RunConfig) -> tuple[bool, dict]:
    spec = load_family(cfg.family)
    try:
        op = build_realization(spec)
    except UnsupportedFamilyError as exc:
        raise UsageError(str(exc)) from None
    report: dict = {"family": spec.to_dict(), "operator": op.to_dict()}
    passed = True
    if cfg.apply is not None:
        p = parse_poly(cfg.apply)
        report["input"] = p.to_json()
        try:
            out = apply_realized(op, p)
        except RealizationError as exc:
            report["error"] = str(exc)
            return False, report
        report["output"] = out.to_json()
        report["matches_abstract"] = out == apply_abstract(spec, p)
        passed = report["matches_abstract"]
    else:
        report["check"] = check_realization(op, cfg.n_max)
        passed = report["check"]["passed"]
    return passed, report


def cmd_algebra(cfg: RunConfig) -> tuple[bool, dict]:
    spec = load_family(cfg.family)
    if cfg.action == "fit":
        fit = fit_relation(spec, cfg.template, cfg.n_max)
        return fit.holds, {"family": spec.to_dict(), "fit": fit.to_dict()}
    report = verify_relation(spec, cfg.n_max)
    return report.passed, report.to_dict()


def cmd_classify(cfg: RunConfig) -> tuple[bool, dict]:
    lam, nu = load_sequences(cfg.input_path)
    try:
        result = classify(lam, nu)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = result.cls.value != "inadmissible" and result.compatibility
    return ok, result.to_dict()


def cmd_gauge(cfg: RunConfig) -> tuple[bool, dict]:
    spec = load_family(cfg.family)
    g = GaugeTransform(**cfg.gauge)
    report: dict = {"family": spec.to_dict(),
                    "gauge": {k: getattr(g, k) for k in ("xi2", "eta1", "eta2")}}
    try:
        values = gauge(spec, g, cfg.n_max)
    except InadmissibleGaugeError as exc:
        report.update(passed=False, reason=str(exc))
        return False, report
    gauged = GaugedFamily(spec, g)
    rows = []
    passed = True
    for n in range(cfg.n_max + 1):
        p = eigenpoly_descent(spec, n)
        same = apply_abstract(gauged, p) == p.scale(values[n])
        passed &= same
        rows.append({"n": n, "lambda": values[n], "nu": gauged.lambda_nu(n)[1], "eigenpolynomial_kept": same})
    report.update(passed=passed, rows=rows)
    return passed, report


HANDLERS = {"table": cmd_table, "poly": cmd_poly, "verify": cmd_verify, "realize": cmd_realize,
            "algebra": cmd_algebra, "classify": cmd_classify, "gauge": cmd_gauge}


def run(cfg: RunConfig) -> tuple[int, Optional[dict]]:
    try:
        passed, report = HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    text = render(report, cfg.output_format)
    if cfg.output_path is not None:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    return (0 if passed else 1), report


# -- argument parsing -----------------------------------------------------------------

def _scalar_arg(text: str) -> Fraction:
    try:
        return scalar_from_str(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", help=f"preset ({', '.join(PRESETS)}) or JSON spec path")
    common.add_argument("--n-max", type=int, default=10)
    common.add_argument("--out", choices=("json", "csv"), default="json")
    common.add_argument("--output", type=Path)

    parser = argparse.ArgumentParser(prog="symhyper", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("table", parents=[common], help="lambda_n, nu_n, u_n for n = 1..n-max")
    p = sub.add_parser("poly", parents=[common], help="monic eigenpolynomials P_0..P_n-max")
    p.add_argument("--method", choices=("descent", "recurrence"), default="descent")
    p.add_argument("--degree", type=int, help="emit only P_degree")
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite_name", nargs="?", choices=SUITES + ("all",), metavar="SUITE",
                   help="same as --suite")
    p.add_argument("--suite", choices=SUITES + ("all",))
    p.add_argument("--seed", type=int, default=0, help="seed for the random polynomial pairs")
    p.add_argument("--pairs", type=int, default=50)
    p.add_argument("--timing", action="store_true", help="add wall time per suite (breaks byte-identical output)")
    p = sub.add_parser("realize", parents=[common], help="explicit L0/L1 realization")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--check", action="store_true", help="compare with lambda/nu on monomials (default)")
    mode.add_argument("--apply", metavar="POLY", help="polynomial JSON file, or coefficients c0,c1,...")
    p = sub.add_parser("algebra", parents=[common], help="algebra relations")
    p.add_argument("action", choices=("verify", "fit"))
    p.add_argument("--template", choices=TEMPLATES)
    p = sub.add_parser("classify", parents=[common], help="classify lambda/nu sequences")
    p.add_argument("--input", type=Path, required=True, help='JSON {"lambda": [...], "nu": [...]}')
    p = sub.add_parser("gauge", parents=[common], help="apply a gauge transform")
    for name in ("xi2", "eta1", "eta2"):
        p.add_argument(f"--{name}", type=_scalar_arg, default=Fraction(0))
    return parser


def _suite(ns: argparse.Namespace) -> str:
    positional, flag = getattr(ns, "suite_name", None), getattr(ns, "suite", None)
    if positional and flag and positional != flag:
        raise UsageError(f"conflicting suites {positional!r} and {flag!r}")
    return positional or flag or "all"


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command, family=ns.family, n_max=ns.n_max, output_format=ns.out,
        output_path=ns.output, method=getattr(ns, "method", "descent"), degree=getattr(ns, "degree", None),
        suite=_suite(ns), action=getattr(ns, "action", None),
        template=getattr(ns, "template", None), input_path=getattr(ns, "input", None),
        apply=getattr(ns, "apply", None),
        gauge={k: getattr(ns, k) for k in ("xi2", "eta1", "eta2") if hasattr(ns, k)},
        seed=getattr(ns, "seed", 0), pairs=getattr(ns, "pairs", 50),
        timing=getattr(ns, "timing", False))


def main(argv: Optional[list[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)[0]


if __name__ == "__main__":
    sys.exit(main())
