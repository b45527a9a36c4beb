"""Closed form vs exhaustive computation, packaged as named checks.

Every function returns :class:`~quadcodes.code.CheckResult` objects whose
``expected`` side is the closed form (or a known constant) and whose
``actual`` side is counted.  Sweeps report the number of mismatches, so a
passing sweep reads ``expected=0, actual=0``.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .code import (CheckResult, CodeSpec, codeword_weight, count_defining_set, dual_distance_at_least_2,
                   pless_check, secret_sharing_ratio, weight_distribution)
from .cyclotomic import galois, galois_orbit_closed_form, galois_orbit_sum, gauss_sum, pstar, weil_identity
from .field import FiniteField, build_field, quadratic_character
from .ghw import (da_ghw_brute, e0, ghw_brute, ghw_formula, ghw_reference_Da, n_of_subspace,
                  witness_construction)
from .qform import FormProfile, FormSpec, count_on_subspace
from .subspaces import DEFAULT_BUDGET, BudgetExceeded, enumerate_subspaces


@dataclass(frozen=True)
class Preset:
    """A named parameter set: ``(p, e)``, the form shorthand, and ``alpha`` as a power of theta."""

    name: str
    p: int
    e: int
    form: str
    alpha_power: int

    def build(self, modulus: Optional[Sequence[int]] = None) -> CodeSpec:
        F = build_field(self.p, self.e, modulus)
        return CodeSpec(form_from_shorthand(F, self.form), F.theta_power(self.alpha_power))


PRESETS = {
    "3-3": Preset("3-3", 3, 3, "tr_x2", 0),
    "5-3": Preset("5-3", 5, 3, "tr_x2", 0),
    "3-4-plus": Preset("3-4-plus", 3, 4, "tr_theta_x2", 0),
    "3-4-minus": Preset("3-4-minus", 3, 4, "tr_x2", 1),
}


def form_from_shorthand(F: FiniteField, name: str) -> FormSpec:
    if name == "tr_x2":
        return FormSpec.trace_square(F, 1)
    if name == "tr_theta_x2":
        return FormSpec.trace_square(F, F.primitive)
    raise ValueError(f"unknown form shorthand {name!r}")


def _sweep(name: str, pairs: Iterable[tuple[object, object, str]]) -> CheckResult:
    """Count mismatches in ``(expected, actual, label)`` triples; keep the first for diagnostics."""
    bad, total, first = 0, 0, ""
    for exp, act, label in pairs:
        total += 1
        if exp != act:
            bad += 1
            if not first:
                first = f"first mismatch at {label}: expected {exp}, got {act}"
    return CheckResult(name, 0, bad, first or f"{total} cases")


# -- fields and forms --

def subspace_count_sweep(form: FormSpec, max_dim: int, profile: Optional[FormProfile] = None) -> CheckResult:
    """``|{x in H : f(x) = a}|`` from rank/sign of ``f|_H`` vs counting, every H with dim <= max_dim."""
    F = form.field
    prof = profile

    def gen():
        for r in range(max_dim + 1):
            for h in enumerate_subspaces(F.p, F.e, r):
                for a in range(F.p):
                    yield (count_on_subspace(form, h, a, "formula", prof),
                           count_on_subspace(form, h, a, "oracle"), f"H={h.basis}, a={a}")

    return _sweep(f"subspace value counts p={F.p} e={F.e} dim<={max_dim}", gen())


def gauss_law(ps: Sequence[int]) -> list[CheckResult]:
    out = []
    for p in ps:
        g = gauss_sum(p)
        out.append(CheckResult(f"g^2 = p* (p={p})", pstar(p), (g * g).coeffs[0] if (g * g).is_rational() else repr(g * g)))
        out.append(_sweep(f"sigma_z(g) = eta(z) g (p={p})",
                          ((g * quadratic_character(z, p), galois(z, g), f"z={z}") for z in range(1, p))))
    return out


def orbit_sweep(ps: Sequence[int], rs: Sequence[int]) -> CheckResult:
    def gen():
        for p in ps:
            for r in rs:
                for z in [None] + list(range(1, p)):
                    yield galois_orbit_closed_form(p, r, z), galois_orbit_sum(p, r, z), f"p={p} r={r} z={z}"

    return _sweep(f"Galois orbit sums p in {list(ps)} r in {list(rs)}", gen())


def weil_sweep(profile: FormProfile) -> CheckResult:
    F = profile.spec.field

    def gen():
        for b in range(F.q):
            lhs, rhs = weil_identity(profile, b)
            yield rhs, lhs, f"b={F.coords(b)}"

    return _sweep(f"Weil sums p={F.p} e={F.e}", gen())


# -- the code --

def length_checks(spec: CodeSpec, pointwise: bool = True) -> list[CheckResult]:
    p, e = spec.p, spec.e
    out = [CheckResult(f"length p={p} e={e} (table)", spec.length, int(np.count_nonzero(spec.membership)))]
    if pointwise:
        out.append(CheckResult(f"length p={p} e={e} (pointwise)", spec.length, count_defining_set(spec)))
    return out


def codeword_weight_sweep(spec: CodeSpec) -> CheckResult:
    q = spec.field.q
    table = spec.weights

    def gen():
        for idx in range(1, q * q):
            yield codeword_weight(spec, idx % q, idx // q, "formula"), int(table[idx]), f"(u,v)=({idx % q},{idx // q})"

    return _sweep(f"codeword weights p={spec.p} e={spec.e}", gen())


def subcode_count_sweep(spec: CodeSpec, max_dim: int) -> CheckResult:
    """``N(H)`` by character sums vs counting, every H of F_p^{2e} with dim <= max_dim."""
    p, k = spec.p, spec.dimension

    def gen():
        for r in range(max_dim + 1):
            for h in enumerate_subspaces(p, k, r):
                yield n_of_subspace(spec, h, "charsum"), n_of_subspace(spec, h, "count"), f"H={h.basis}"

    return _sweep(f"subcode zero counts p={p} e={spec.e} dim<={max_dim}", gen())


def distribution_checks(spec: CodeSpec, budget: Optional[int] = DEFAULT_BUDGET) -> tuple[list[CheckResult], object]:
    wf = weight_distribution(spec, "formula")
    we = weight_distribution(spec, "enumerate", budget)
    tag = f"p={spec.p} e={spec.e}"
    out = [CheckResult(f"weight distribution {tag}", wf.enumerator(), we.enumerator())]
    for c in pless_check(we):
        out.append(CheckResult(f"{c.name} {tag}", c.expected, c.actual))
    out.append(CheckResult(f"dual distance >= 2 {tag}", True, dual_distance_at_least_2(spec)))
    if spec.e >= 3:
        lo, hi, ok = secret_sharing_ratio(we)
        out.append(CheckResult(f"p*w_min > (p-1)*w_max {tag}", True, ok, f"w_min={lo}, w_max={hi}"))
    return out, we


def hierarchy_checks(spec: CodeSpec, rs: Sequence[int], budget: Optional[int] = DEFAULT_BUDGET,
                     threads: int = 1, min_weight: Optional[int] = None) -> list[CheckResult]:
    tag = f"p={spec.p} e={spec.e}"
    out = []
    got = {}
    for r in rs:
        row = ghw_brute(spec, r, budget, threads)
        got[r] = row.d_r
        out.append(CheckResult(f"d_{r} {tag}", ghw_formula(spec, r), row.d_r, f"witness side {row.witness_side}"))
    ordered = sorted(got)
    out.append(CheckResult(f"d_r strictly increasing {tag}", True,
                           all(got[a] < got[b] for a, b in zip(ordered, ordered[1:]))))
    if 1 in got and min_weight is not None:
        out.append(CheckResult(f"d_1 = minimum weight {tag}", min_weight, got[1]))
    k = spec.dimension
    if k in got:
        out.append(CheckResult(f"d_{k} = n {tag}", spec.length, got[k]))
    return out


def formula_hierarchy_checks(spec: CodeSpec) -> list[CheckResult]:
    k = spec.dimension
    ds = [ghw_formula(spec, r) for r in range(1, k + 1)]
    tag = f"p={spec.p} e={spec.e}"
    return [CheckResult(f"closed-form d_r strictly increasing {tag}", True, all(a < b for a, b in zip(ds, ds[1:]))),
            CheckResult(f"closed-form d_{k} = n {tag}", spec.length, ds[-1])]


def witness_checks(spec: CodeSpec, budget: Optional[int] = DEFAULT_BUDGET) -> list[CheckResult]:
    """The explicit subspaces reach the brute-force maximum of ``N``."""
    out = []
    for r in range(1, spec.e - e0(spec) + 1):
        _, claim = witness_construction(spec, r)
        best = spec.length + 1 - ghw_brute(spec, r, budget).d_r
        out.append(CheckResult(f"explicit maximizer r={r} p={spec.p} e={spec.e}", best, claim))
    return out


def reference_hierarchy_sweep(form: FormSpec, profile: Optional[FormProfile] = None) -> CheckResult:
    F = form.field

    def gen():
        for a in range(1, F.p):
            for r in range(1, F.e + 1):
                try:
                    ref = ghw_reference_Da(form, a, r, profile)
                except ValueError:
                    continue
                yield ref, da_ghw_brute(form, a, r), f"a={a} r={r}"

    return _sweep(f"reference hierarchies p={F.p} e={F.e}", gen())


def alpha_invariance(spec: CodeSpec, powers: Sequence[int], rs: Sequence[int],
                     budget: Optional[int] = DEFAULT_BUDGET) -> list[CheckResult]:
    F = spec.field
    base_wd = weight_distribution(spec, "enumerate", budget).enumerator()
    base_h = [ghw_brute(spec, r, budget).d_r for r in rs]
    out = []
    for k in powers:
        other = CodeSpec(spec.form, F.theta_power(k), spec.profile)
        tag = f"alpha=theta^{k} p={spec.p} e={spec.e}"
        out.append(CheckResult(f"distribution unchanged {tag}", base_wd,
                               weight_distribution(other, "enumerate", budget).enumerator()))
        out.append(CheckResult(f"hierarchy unchanged r={list(rs)} {tag}", base_h,
                               [ghw_brute(other, r, budget).d_r for r in rs]))
    return out


# -- negative controls --

INJECTIONS = ("eps-flip", "zero-point")


def inject(spec: CodeSpec, kind: Optional[str]) -> CodeSpec:
    """Return a deliberately broken copy of ``spec`` (for negative controls)."""
    if kind is None:
        return spec
    if kind == "eps-flip":
        prof = dataclasses.replace(spec.profile, sign=-spec.profile.sign)
        return CodeSpec(spec.form, spec.alpha, prof)
    if kind == "zero-point":
        bad = CodeSpec(spec.form, spec.alpha, spec.profile)
        table = spec.membership.copy()
        table[0] = True
        bad.__dict__["membership"] = table
        return bad
    raise ValueError(f"unknown injection {kind!r}; choose from {INJECTIONS}")


# -- reports --

@dataclass
class Report:
    command: str
    config: dict = dc_field(default_factory=dict)
    result: object = None
    checks: list = dc_field(default_factory=list)
    skipped: list = dc_field(default_factory=list)

    def run(self, label: str, fn: Callable[[], object]) -> None:
        """Append the checks produced by ``fn``; budget overruns become skipped items."""
        try:
            res = fn()
        except BudgetExceeded as exc:
            self.skipped.append({"item": label, "reason": str(exc)})
            return
        except (ArithmeticError, AssertionError, ValueError) as exc:
            res = CheckResult(label, "completes", "raised", f"{type(exc).__name__}: {exc}")
        if isinstance(res, CheckResult):
            res = [res]
        self.checks.extend(res)

    @property
    def failed(self) -> list:
        return [c for c in self.checks if not c.ok]

    @property
    def exit_code(self) -> int:
        if self.failed:
            return 1
        return 3 if self.skipped else 0

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "result": self.result,
            "checks": [c.to_dict() for c in self.checks],
            "skipped": self.skipped,
            "passed": not self.failed and not self.skipped,
        }


def verify(level: str = "quick", budget: Optional[int] = DEFAULT_BUDGET, threads: int = 1,
           injection: Optional[str] = None, progress: Optional[Callable[[str], None]] = None) -> Report:
    """Run the closed-form vs enumeration sweeps.

    ``quick`` covers p=3, e=3; ``full`` adds p=5, e=3 and both sign classes
    at p=3, e=4.  Items whose projected work exceeds ``budget`` are skipped
    and listed.  Checks that read the sign of the form come after the sign-free
    subspace counts, so an injected sign error first shows in the Weil sums.
    """
    if level not in ("quick", "full"):
        raise ValueError(f"level must be quick or full, got {level!r}")
    rep = Report(f"verify {level}", {"level": level, "budget": budget, "threads": threads, "inject": injection})
    note = progress or (lambda s: None)

    def step(label, fn):
        note(label)
        rep.run(label, fn)

    step("Gauss sums", lambda: gauss_law([3, 5, 7, 11]))
    step("Galois orbit sums", lambda: orbit_sweep([3, 5, 7], range(1, 7)))

    names = ["3-3"] if level == "quick" else list(PRESETS)
    for name in names:
        base = PRESETS[name].build()
        spec = inject(base, injection)
        e = spec.e
        small = name == "3-3"
        step(f"{name} subspace counts",
             lambda: subspace_count_sweep(spec.form, 3 if e == 3 else 2, spec.profile))
        step(f"{name} Weil sums", lambda: weil_sweep(spec.profile))
        step(f"{name} length", lambda: length_checks(spec))
        step(f"{name} codeword weights", lambda: codeword_weight_sweep(spec))
        step(f"{name} subcode counts", lambda: subcode_count_sweep(spec, 2 if small else 1))
        holder = {}

        def dist():
            checks, wd = distribution_checks(spec, budget)
            holder["wd"] = wd
            return checks

        step(f"{name} distribution", dist)
        rs = list(range(1, 2 * e + 1)) if small else (
            [1, 2, 6, 7, 8] if e == 4 else [1, 2, 5, 6])
        mw = holder["wd"].min_weight if "wd" in holder else None
        step(f"{name} hierarchy", lambda: hierarchy_checks(spec, rs, budget, threads, mw))
        step(f"{name} closed-form hierarchy", lambda: formula_hierarchy_checks(spec))
        if small:
            step(f"{name} explicit maximizers", lambda: witness_checks(spec, budget))
        step(f"{name} reference hierarchies", lambda: reference_hierarchy_sweep(spec.form, spec.profile))
        inv_rs = list(range(1, 2 * e + 1)) if small else [1, 2 * e - 1, 2 * e]
        step(f"{name} alpha invariance", lambda: alpha_invariance(spec, [2, 3, 5], inv_rs, budget))
    return rep
