"""The code C_D with defining set D = {(x, y) != 0 : f(x) + Tr(alpha y) = 0}.

Points of F_q^2 and message pairs ``(u, v)`` share one integer packing,
``x + q*y``, which is also the packing of the coordinate vector
``(X_0, ..., X_{e-1}, Y_0, ..., Y_{e-1})`` in F_p^{2e}.  Codewords are never
materialized as a whole code; weights come from counting over D or from
the closed forms.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Optional

import numpy as np

from .field import quadratic_character
from .qform import DegenerateFormError, FormProfile, FormSpec, analyze, solve_xb
from .subspaces import DEFAULT_BUDGET, all_vectors, check_budget


@dataclass(frozen=True, eq=False)
class CodeSpec:
    form: FormSpec
    alpha: int
    profile: Optional[FormProfile] = None

    def __post_init__(self):
        if self.alpha == 0:
            raise ValueError("alpha must be a nonzero element of F_q")
        prof = self.profile if self.profile is not None else analyze(self.form)
        if not prof.nondegenerate:
            raise DegenerateFormError(
                f"the form has rank {prof.rank} < e={self.field.e}; the code needs a non-degenerate form"
            )
        object.__setattr__(self, "profile", prof)

    @property
    def field(self):
        return self.form.field

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def e(self) -> int:
        return self.field.e

    @property
    def length(self) -> int:
        return self.p ** (2 * self.e - 1) - 1

    @property
    def dimension(self) -> int:
        return 2 * self.e

    @property
    def sign(self) -> int:
        return self.profile.sign

    def signed_epsilon(self) -> int:
        """``(-1)^{e(p-1)/4} * eps_f`` (only meaningful for even e)."""
        return (-1) ** ((self.e * (self.p - 1) // 4) % 2) * self.sign

    @cached_property
    def membership(self) -> np.ndarray:
        """Boolean table over packed points ``x + q*y``: is the point in D?"""
        F = self.field
        tr_ay = F.trace(F.mul(self.alpha, F.elements()))
        table = ((self.form.values[None, :] + tr_ay[:, None]) % self.p == 0).ravel()
        table[0] = False
        return table

    def is_member(self, x: int, y: int) -> bool:
        if x == 0 and y == 0:
            return False
        F = self.field
        return (self.form.values[x] + F.trace(F.mul(self.alpha, y))) % self.p == 0

    @cached_property
    def points(self) -> tuple[np.ndarray, np.ndarray]:
        idx = np.nonzero(self.membership)[0]
        q = self.field.q
        return idx % q, idx // q

    @cached_property
    def generator_matrix(self) -> np.ndarray:
        """``2e x n`` matrix over F_p whose column for ``(x, y)`` is the functional ``(u, v) -> Tr(ux + vy)``."""
        F = self.field
        xs, ys = self.points
        rows = [F.trace(F.mul(v, xs)) for v in F.basis()]
        rows += [F.trace(F.mul(v, ys)) for v in F.basis()]
        return np.array(rows, dtype=np.int64)

    @cached_property
    def weights(self) -> np.ndarray:
        """Weight of ``c_(u,v)`` for every packed message ``u + q*v``."""
        G = self.generator_matrix
        msgs = all_vectors(self.p, self.dimension)
        out = np.empty(msgs.shape[0], dtype=np.int64)
        step = max(1, (1 << 24) // max(1, G.shape[1]))
        for s in range(0, msgs.shape[0], step):
            out[s:s + step] = np.count_nonzero((msgs[s:s + step] @ G) % self.p, axis=1)
        return out


def defining_set(spec: CodeSpec) -> tuple[np.ndarray, np.ndarray, int]:
    xs, ys = spec.points
    return xs, ys, int(xs.size)


def count_defining_set(spec: CodeSpec) -> int:
    """Double loop over F_q^2 through :meth:`CodeSpec.is_member`; slow on purpose."""
    q = spec.field.q
    return sum(spec.is_member(x, y) for y in range(q) for x in range(q))


def codeword_weight(spec: CodeSpec, u: int, v: int, method: str = "formula") -> int:
    if u == 0 and v == 0:
        raise ValueError("(u, v) = (0, 0) does not index a nonzero codeword")
    F = spec.field
    p, e = spec.p, spec.e
    if method == "enumerate":
        xs, ys = spec.points
        return int(np.count_nonzero(F.trace(F.add(F.mul(u, xs), F.mul(v, ys)))))
    if method != "formula":
        raise ValueError(f"unknown method {method!r}")

    base = (p - 1) * p ** (2 * e - 2)
    t = F.div(v, spec.alpha)
    if not (0 < t < p):
        return base
    c = 0 if u == 0 else int(spec.form.values[solve_xb(spec.profile, u)])
    eps = spec.sign
    if e % 2:
        if c == 0:
            return base
        s = eps * quadratic_character(-c, p) * quadratic_character(-1, p) ** ((e + 1) // 2)
        return base - s * p ** ((3 * e - 3) // 2)
    eps_e = spec.signed_epsilon()
    if c == 0:
        return p ** ((3 * e - 4) // 2) * (p - 1) * (p ** (e // 2) - eps_e)
    return p ** ((3 * e - 4) // 2) * ((p - 1) * p ** (e // 2) + eps_e)


@dataclass(frozen=True)
class WeightDistribution:
    p: int
    length: int
    dimension: int
    entries: tuple[tuple[int, int], ...]
    method: str = dc_field(default="", compare=False)

    def __post_init__(self):
        ws = [w for w, _ in self.entries]
        if ws != sorted(set(ws)):
            raise ValueError("weights must be strictly increasing")
        if any(a <= 0 for _, a in self.entries):
            raise ValueError("multiplicities must be positive")

    @property
    def nonzero(self) -> list[tuple[int, int]]:
        return [(w, a) for w, a in self.entries if w > 0]

    @property
    def min_weight(self) -> int:
        return self.nonzero[0][0]

    @property
    def max_weight(self) -> int:
        return self.nonzero[-1][0]

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def enumerator(self) -> str:
        return " + ".join("1" if w == 0 else f"{a}x^{w}" for w, a in self.entries)

    def to_json(self) -> str:
        return json.dumps({
            "p": self.p, "n": self.length, "k": self.dimension,
            "rows": [{"weight": w, "multiplicity": a} for w, a in self.entries],
        })

    @classmethod
    def from_json(cls, text: str) -> "WeightDistribution":
        d = json.loads(text)
        return cls(d["p"], d["n"], d["k"], tuple((r["weight"], r["multiplicity"]) for r in d["rows"]))


def _from_counts(p, n, k, pairs, method) -> WeightDistribution:
    acc: dict[int, int] = {}
    for w, a in pairs:
        if a:
            acc[w] = acc.get(w, 0) + a
    return WeightDistribution(p, n, k, tuple(sorted(acc.items())), method)


def weight_distribution(spec: CodeSpec, method: str = "formula",
                        budget: Optional[int] = DEFAULT_BUDGET) -> WeightDistribution:
    p, e, n, k = spec.p, spec.e, spec.length, spec.dimension
    if method == "enumerate":
        check_budget("weight enumeration", p ** k * n, budget)
        counts = np.bincount(spec.weights[1:])
        pairs = [(0, 1)] + [(int(w), int(a)) for w, a in enumerate(counts) if a]
        return _from_counts(p, n, k, pairs, method)
    if method != "formula":
        raise ValueError(f"unknown method {method!r}")
    if e < 2:
        raise ValueError("the closed-form distribution needs e >= 2")
    if e % 2:
        w1 = (p - 1) * p ** (2 * e - 2)
        h = p ** ((3 * e - 3) // 2)
        pairs = [
            (0, 1),
            (w1, p ** (2 * e) - (p - 1) ** 2 * p ** (e - 1) - 1),
            (w1 - h, (p - 1) ** 2 * (p ** (e - 1) + p ** ((e - 1) // 2)) // 2),
            (w1 + h, (p - 1) ** 2 * (p ** (e - 1) - p ** ((e - 1) // 2)) // 2),
        ]
    else:
        eps = spec.signed_epsilon()
        half = p ** (e // 2)
        pairs = [
            (0, 1),
            ((p - 1) * p ** (2 * e - 2), p ** (2 * e) - p ** e * (p - 1) - 1),
            (p ** ((3 * e - 4) // 2) * (p - 1) * (half - eps), p ** ((e - 2) // 2) * (p - 1) * (half + eps * (p - 1))),
            (p ** ((3 * e - 4) // 2) * ((p - 1) * half + eps), p ** ((e - 2) // 2) * (p - 1) ** 2 * (half - eps)),
        ]
    return _from_counts(p, n, k, pairs, method)


@dataclass
class CheckResult:
    name: str
    expected: object
    actual: object
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> dict:
        out = {"name": self.name, "expected": self.expected, "actual": self.actual, "pass": self.ok}
        if self.detail:
            out["detail"] = self.detail
        return out


def pless_check(wd: WeightDistribution) -> list[CheckResult]:
    """First two power moments for a code whose dual distance is at least 2."""
    p, n, k = wd.p, wd.length, wd.dimension
    count = sum(a for _, a in wd.nonzero)
    moment = sum(w * a for w, a in wd.nonzero)
    rhs = n * (p - 1) * p ** (k - 1) if k >= 1 else 0
    return [
        CheckResult("sum A_w", p ** k - 1, count),
        CheckResult("sum w A_w", rhs, moment),
    ]


def dual_distance_at_least_2(spec: CodeSpec, points: Optional[tuple[np.ndarray, np.ndarray]] = None) -> bool:
    """True iff no coordinate of the code is identically zero."""
    F = spec.field
    xs, ys = spec.points if points is None else points
    cols = [F.trace(F.mul(v, np.asarray(xs))) for v in F.basis()]
    cols += [F.trace(F.mul(v, np.asarray(ys))) for v in F.basis()]
    return bool(np.all(np.any(np.array(cols) != 0, axis=0)))


def secret_sharing_ratio(wd: WeightDistribution) -> tuple[int, int, bool]:
    """``(w_min, w_max, p*w_min > (p-1)*w_max)``."""
    lo, hi = wd.min_weight, wd.max_weight
    return lo, hi, wd.p * lo > (wd.p - 1) * hi
