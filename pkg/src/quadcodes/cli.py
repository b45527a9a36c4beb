"""Command-line entry point.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or configuration
error, 3 projected work over ``--budget``.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import re
import sys
from importlib import resources
from typing import Optional, Sequence

import numpy as np

from .checks import (INJECTIONS, Report, form_from_shorthand, gauss_law, inject, length_checks, orbit_sweep,
                     verify, weil_sweep)
from .code import CheckResult, CodeSpec, WeightDistribution, pless_check, weight_distribution
from .field import FieldError, FiniteField, build_field, irreducibles, is_irreducible
from .ghw import ghw_brute, ghw_formula
from .qform import DegenerateFormError, FormSpec, analyze, witt_index
from .subspaces import DEFAULT_BUDGET, BudgetExceeded, rank as rank_mod_p

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


# -- config parsing --

def parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise ConfigError(f"{what}: expected comma-separated integers, got {text!r}") from None


def parse_element(F: FiniteField, text: str, what: str) -> int:
    """``theta^k``, a comma-separated coordinate vector of length e, or a prime-field integer."""
    text = text.strip()
    m = re.fullmatch(r"theta\^(-?\d+)", text)
    if m:
        return F.theta_power(int(m.group(1)))
    if text == "theta":
        return F.primitive
    vals = parse_int_list(text, what)
    if len(vals) == 1 and "," not in text:
        if not 0 <= vals[0] < F.p:
            raise ConfigError(f"{what}: integer {vals[0]} is not in F_{F.p}; use coordinates or theta^k")
        return vals[0]
    if len(vals) != F.e or any(not 0 <= v < F.p for v in vals):
        raise ConfigError(f"{what}: need {F.e} coordinates in [0, {F.p}), got {text!r}")
    return F.element(vals)


def parse_form(F: FiniteField, text: str) -> FormSpec:
    """``tr_x2``, ``tr_theta_x2``, or ``a_0;a_1;...;a_{e-1}`` with each ``a_i`` an element."""
    if text in ("tr_x2", "tr_theta_x2"):
        return form_from_shorthand(F, text)
    parts = text.split(";")
    if len(parts) != F.e:
        raise ConfigError(f"--form: need {F.e} ';'-separated coefficients a_0..a_{F.e - 1}, got {len(parts)}")
    return FormSpec(F, tuple(parse_element(F, t, f"--form a_{i}") for i, t in enumerate(parts)))


def field_from_args(args) -> FiniteField:
    if args.p is None or args.e is None:
        raise ConfigError("--p and --e are required")
    modulus = None
    if args.modulus:
        modulus = parse_int_list(args.modulus, "--modulus")
        if len(modulus) != args.e + 1 or modulus[-1] != 1:
            raise ConfigError(f"--modulus: need a monic degree-{args.e} polynomial c_0,...,c_{args.e} with c_{args.e}=1")
        if not is_irreducible([c % args.p for c in modulus], args.p):
            raise ConfigError(f"--modulus: {modulus} is reducible over F_{args.p}")
    try:
        return build_field(args.p, args.e, modulus)
    except FieldError as exc:
        raise ConfigError(f"--p/--e: {exc}") from None


def spec_from_args(args) -> CodeSpec:
    F = field_from_args(args)
    form = parse_form(F, args.form)
    alpha = parse_element(F, args.alpha, "--alpha")
    if alpha == 0:
        raise ConfigError("--alpha: must be nonzero")
    try:
        spec = CodeSpec(form, alpha)
    except DegenerateFormError as exc:
        raise ConfigError(f"--form: {exc}") from None
    return inject(spec, args.inject)


def config_echo(args, F: Optional[FiniteField] = None) -> dict:
    out = {k: getattr(args, k) for k in ("p", "e", "form", "alpha", "method", "r", "budget") if hasattr(args, k)}
    if F is not None:
        out["field"] = F.to_dict()
    if getattr(args, "inject", None):
        out["inject"] = args.inject
    return out


def parse_rs(text: str, k: int) -> list[int]:
    if text == "all":
        return list(range(1, k + 1))
    rs = parse_int_list(text, "--r")
    bad = [r for r in rs if not 1 <= r <= k]
    if bad or not rs:
        raise ConfigError(f"--r: values must lie in [1, {k}], got {text!r}")
    return rs


# -- output --

def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit(rep: Report, fmt: str, table: Optional[tuple[Sequence[str], list]] = None) -> int:
    if fmt == "json":
        sys.stdout.write(json.dumps(rep.to_dict(), indent=2, sort_keys=True, default=_json_default) + "\n")
    elif table is not None:
        sys.stdout.write(_csv(*table))
    else:
        sys.stdout.write(_csv(("name", "expected", "actual", "pass"),
                              [(c.name, c.expected, c.actual, c.ok) for c in rep.checks]))
    for c in rep.failed:
        print(f"FAIL {c.name}: expected {c.expected}, got {c.actual}" + (f" ({c.detail})" if c.detail else ""),
              file=sys.stderr)
    for s in rep.skipped:
        print(f"SKIP {s['item']}: {s['reason']}", file=sys.stderr)
    print(f"{len(rep.checks)} checks, {len(rep.failed)} failed, {len(rep.skipped)} skipped", file=sys.stderr)
    return rep.exit_code


# -- commands --

def cmd_field(args) -> int:
    F = field_from_args(args)
    rep = Report(f"field {args.action}", config_echo(args, F))
    order_ok = F.pow(F.primitive, F.q - 1) == 1 and len({int(F.pow(F.primitive, k)) for k in range(F.q - 1)}) == F.q - 1
    rep.checks.append(CheckResult("modulus irreducible", True, is_irreducible(list(F.modulus), F.p)))
    rep.checks.append(CheckResult("primitive element order", F.q - 1, F.q - 1 if order_ok else "smaller"))
    if args.action == "build":
        rep.result = F.to_dict()
        return emit(rep, args.output, (("key", "value"), [(k, json.dumps(v)) for k, v in F.to_dict().items()]))
    logs = {int(F.theta_power(k)): k for k in range(F.q - 1)}
    rows = []
    for x in range(F.q):
        log = logs.get(x, "")
        rows.append((x, " ".join(map(str, F.coords(x))), log, int(F.trace(x))))
    rep.result = [dict(zip(("element", "coords", "log", "trace"), r)) for r in rows]
    return emit(rep, args.output, (("element", "coords", "log", "trace"), rows))


def _profile(args, form: FormSpec):
    prof = analyze(form)
    if args.inject == "eps-flip":
        prof = dataclasses.replace(prof, sign=-prof.sign)
    return prof


def cmd_form(args) -> int:
    F = field_from_args(args)
    form = parse_form(F, args.form)
    prof = _profile(args, form)
    rep = Report("form analyze", config_echo(args, F))
    res = prof.to_dict()
    res["nondegenerate"] = prof.nondegenerate
    res["witt_index"] = witt_index(form)
    res["form"] = form.to_dict()
    if F.e % 2 == 0:
        res["signed_epsilon"] = (-1) ** ((F.e * (F.p - 1) // 4) % 2) * prof.sign
    rep.result = res
    M = prof.transform
    D = (M @ prof.gram @ M.T) % F.p
    rep.checks.append(CheckResult("congruence diagonalizes the Gram matrix", (np.diag(prof.diag) % F.p).tolist(),
                                  D.tolist()))
    rep.checks.append(CheckResult("rank of L_f equals rank of f", prof.rank, rank_mod_p(prof.lf_matrix, F.p)))
    return emit(rep, args.output, (("key", "value"), [(k, json.dumps(v)) for k, v in sorted(res.items())]))


def cmd_sums(args) -> int:
    F = field_from_args(args)
    form = parse_form(F, args.form)
    prof = _profile(args, form)
    rep = Report("sums verify", config_echo(args, F))
    rep.run("Gauss sums", lambda: gauss_law([F.p]))
    rep.run("Galois orbit sums", lambda: orbit_sweep([F.p], range(1, 7)))
    rep.run("Weil sums", lambda: weil_sweep(prof))
    return emit(rep, args.output)


def _wd_rows(wd: WeightDistribution, method: str) -> list[tuple]:
    return [(w, a, method) for w, a in wd.entries]


def cmd_wdist(args) -> int:
    spec = spec_from_args(args)
    rep = Report("code wdist", config_echo(args, spec.field))
    methods = ["formula", "enumerate"] if args.method == "both" else [args.method]
    dists = {m: weight_distribution(spec, m, args.budget) for m in methods}
    rows = []
    for m, wd in dists.items():
        rows += _wd_rows(wd, m)
        for c in pless_check(wd):
            rep.checks.append(CheckResult(f"{c.name} ({m})", c.expected, c.actual))
    if args.method == "both":
        f, e = dists["formula"], dists["enumerate"]
        rep.checks.append(CheckResult("formula = enumeration", f.enumerator(), e.enumerator(), _diff(f.as_dict(), e.as_dict())))
    rep.checks += length_checks(spec, pointwise=False)
    rep.result = {m: json.loads(wd.to_json()) for m, wd in dists.items()}
    header = ("weight", "multiplicity") if len(methods) == 1 else ("weight", "multiplicity", "method")
    table_rows = [r[:2] for r in rows] if len(methods) == 1 else rows
    return emit(rep, args.output, (header, table_rows))


def cmd_ghw(args) -> int:
    spec = spec_from_args(args)
    rs = parse_rs(args.r, spec.dimension)
    rep = Report("code ghw", config_echo(args, spec.field))
    rows = []
    for r in rs:
        f = b = None
        if args.method in ("formula", "both"):
            try:
                f = ghw_formula(spec, r)
            except ValueError as exc:
                raise ConfigError(f"--method formula: {exc}") from None
            rows.append({"r": r, "d_r": f, "method": "formula"})
        if args.method in ("brute", "both"):
            row = ghw_brute(spec, r, args.budget, args.threads)
            b = row.d_r
            rows.append(row.to_dict())
        if args.method == "both":
            rep.checks.append(CheckResult(f"d_{r} formula = brute", f, b))
    rep.result = rows
    return emit(rep, args.output, (("r", "d_r", "method"), [(x["r"], x["d_r"], x["method"]) for x in rows]))


def _diff(expected: dict, actual: dict) -> str:
    parts = []
    for w in sorted(set(expected) | set(actual)):
        a, b = expected.get(w, 0), actual.get(w, 0)
        if a != b:
            parts.append(f"weight {w}: expected {a}, got {b}")
    return "; ".join(parts)


def load_golden(path: Optional[str]) -> list[dict]:
    if path is None:
        text = resources.files("quadcodes").joinpath("data/golden_examples.json").read_text()
    else:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"--golden: {exc}") from None
    try:
        data = json.loads(text)
        return data["examples"]
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"--golden: malformed file ({exc})") from None


def cmd_examples(args) -> int:
    golden = load_golden(args.golden)
    rep = Report("code check-examples", {"golden": args.golden or "builtin", "modulus_index": args.modulus_index})
    summary = []
    for ex in golden:
        p, e = ex["p"], ex["e"]
        it = irreducibles(p, e)
        for _ in range(args.modulus_index):
            next(it)
        F = build_field(p, e, next(it))
        spec = inject(CodeSpec(parse_form(F, ex["form"]), parse_element(F, ex["alpha"], "alpha")), args.inject)
        want = {int(w): a for w, a in ex["enumerator"].items()}
        tag = ex["name"]
        rep.checks.append(CheckResult(f"{tag} sign of form", ex["sign"], spec.sign))
        rep.checks.append(CheckResult(f"{tag} length", ex["n"], int(spec.membership.sum())))
        for m in ("formula", "enumerate"):
            got = weight_distribution(spec, m, args.budget)
            rep.checks.append(CheckResult(f"{tag} enumerator ({m})", want, got.as_dict(), _diff(want, got.as_dict())))
        d1 = ghw_brute(spec, 1, args.budget, args.threads).d_r
        rep.checks.append(CheckResult(f"{tag} d_1 = minimum distance", ex["d"], d1))
        summary.append({"name": tag, "field": F.to_dict(), "d_1": d1})
    rep.result = summary
    return emit(rep, args.output)


def cmd_verify(args) -> int:
    prog = (lambda s: print(f"... {s}", file=sys.stderr)) if args.progress else None
    rep = verify(args.level, args.budget, args.threads, args.inject, prog)
    return emit(rep, args.output)


# -- parser --

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="cap on projected enumeration work units (default %(default)s)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for subspace sweeps")
    common.add_argument("--output", choices=("json", "csv"), default="json")
    common.add_argument("--inject", choices=INJECTIONS, default=None, help=argparse.SUPPRESS)

    field_args = argparse.ArgumentParser(add_help=False)
    field_args.add_argument("--p", type=int)
    field_args.add_argument("--e", type=int)
    field_args.add_argument("--modulus", help="monic modulus c_0,...,c_e (constant term first)")

    form_args = argparse.ArgumentParser(add_help=False)
    form_args.add_argument("--form", default="tr_x2", help="tr_x2, tr_theta_x2, or a_0;...;a_{e-1}")

    alpha_args = argparse.ArgumentParser(add_help=False)
    alpha_args.add_argument("--alpha", default="1", help="theta^k, coordinates c_0,...,c_{e-1}, or an F_p integer")

    parser = argparse.ArgumentParser(prog="quadcodes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="group", required=True)

    fld = sub.add_parser("field", parents=[field_args, common], help="build or show a finite field")
    fld.add_argument("action", choices=("build", "show"))
    fld.set_defaults(func=cmd_field)

    frm = sub.add_parser("form", parents=[field_args, form_args, common], help="quadratic form invariants")
    frm.add_argument("action", choices=("analyze",))
    frm.set_defaults(func=cmd_form)

    sums = sub.add_parser("sums", parents=[field_args, form_args, common], help="character-sum identities")
    sums.add_argument("action", choices=("verify",))
    sums.set_defaults(func=cmd_sums)

    code = sub.add_parser("code", help="weight distributions and hierarchies")
    csub = code.add_subparsers(dest="action", required=True)
    code_parents = [field_args, form_args, alpha_args, common]
    wd = csub.add_parser("wdist", parents=code_parents, help="weight distribution")
    wd.add_argument("--method", choices=("formula", "enumerate", "both"), default="formula")
    wd.set_defaults(func=cmd_wdist)
    gh = csub.add_parser("ghw", parents=code_parents, help="generalized Hamming weights")
    gh.add_argument("--r", default="all", help="all or a comma-separated list")
    gh.add_argument("--method", choices=("formula", "brute", "both"), default="formula")
    gh.set_defaults(func=cmd_ghw)
    ce = csub.add_parser("check-examples", parents=[common], help="reproduce the bundled reference codes")
    ce.add_argument("--golden", help="golden enumerator file (default: bundled)")
    ce.add_argument("--modulus-index", type=int, default=0,
                    help="use the k-th lexicographic irreducible modulus (basis-independence check)")
    ce.set_defaults(func=cmd_examples)

    ver = sub.add_parser("verify", parents=[common], help="closed form vs enumeration sweeps")
    ver.add_argument("level", choices=("quick", "full"))
    ver.add_argument("--progress", action="store_true")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
