"""Quadratic forms ``f(x) = sum_i Tr(a_i x^{p^i + 1})`` on F_q viewed as F_p^e.

Coordinates are taken in the polynomial basis of :class:`FiniteField`, so a
coordinate vector packs to the field element it represents.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .field import FiniteField, quadratic_character
from .subspaces import Subspace, all_vectors, inverse, nullspace, pack, rank as rank_mod_p


class DegenerateFormError(ValueError):
    pass


class IsotropicError(ValueError):
    pass


@dataclass(frozen=True)
class FormSpec:
    field: FiniteField
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.field.e:
            raise ValueError(f"need exactly e={self.field.e} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))

    @classmethod
    def trace_square(cls, field: FiniteField, a: int = 1) -> "FormSpec":
        """The form ``x -> Tr(a x^2)``."""
        return cls(field, (a,) + (0,) * (field.e - 1))

    @cached_property
    def values(self) -> np.ndarray:
        """``f(x)`` for every element ``x`` of F_q, indexed by element."""
        return eval_form(self, self.field.elements())

    def to_dict(self) -> dict:
        return {"a": [list(self.field.coords(a)) for a in self.coeffs]}

    @classmethod
    def from_dict(cls, field: FiniteField, d: dict) -> "FormSpec":
        return cls(field, tuple(field.element(c) for c in d["a"]))


@dataclass(frozen=True, eq=False)
class FormProfile:
    spec: FormSpec
    gram: np.ndarray
    rank: int
    sign: int
    diag: tuple[int, ...]
    transform: np.ndarray
    lf_matrix: np.ndarray
    _lf_inverse: Optional[np.ndarray] = dc_field(default=None, repr=False)

    @property
    def nondegenerate(self) -> bool:
        return self.rank == self.spec.field.e

    def to_dict(self) -> dict:
        return {
            "gram": self.gram.tolist(),
            "rank": self.rank,
            "sign": self.sign,
            "diag": list(self.diag),
            "lf_matrix": self.lf_matrix.tolist(),
        }


@dataclass(frozen=True)
class FormOnSubspace:
    subspace: Subspace
    rank: int
    sign: int


def eval_form(spec: FormSpec, x):
    F = spec.field
    x_arr = np.asarray(x, dtype=np.int64)
    total = np.zeros_like(x_arr)
    for i, a in enumerate(spec.coeffs):
        if a:
            total = total + F.trace(F.mul(a, F.mul(F.frobenius(x_arr, i), x_arr)))
    res = total % F.p
    return int(res) if np.ndim(x) == 0 else res


def bilinear(spec: FormSpec, x, y):
    F = spec.field
    vals = spec.values
    res = (F.inv2 * (vals[F.add(x, y)] - vals[x] - vals[y])) % F.p
    return int(res) if np.ndim(x) == 0 and np.ndim(y) == 0 else res


def gram_matrix(spec: FormSpec) -> np.ndarray:
    F = spec.field
    v = F.basis()
    e = F.e
    B = np.zeros((e, e), dtype=np.int64)
    for j in range(e):
        for k in range(e):
            s = 0
            for i, a in enumerate(spec.coeffs):
                if a:
                    t = F.add(F.mul(F.frobenius(v[j], i), v[k]), F.mul(v[j], F.frobenius(v[k], i)))
                    s += F.trace(F.mul(a, t))
            B[j, k] = (F.inv2 * s) % F.p
    return B


def diagonalize(B, p: int, order: Optional[Sequence[int]] = None) -> tuple[np.ndarray, list[int]]:
    """Symmetric congruence ``M B M^T = diag`` over F_p (p odd).

    ``order`` permutes the starting basis, which changes the diagonal but
    not its square class.
    """
    A = np.array(B, dtype=np.int64) % p
    n = A.shape[0]
    M = np.eye(n, dtype=np.int64)
    if order is not None:
        M = M[list(order)]
        A = (M @ A @ M.T) % p

    def swap(i, j):
        A[[i, j]] = A[[j, i]]
        A[:, [i, j]] = A[:, [j, i]]
        M[[i, j]] = M[[j, i]]

    for k in range(n):
        if A[k, k] == 0:
            nz_diag = [j for j in range(k + 1, n) if A[j, j]]
            if nz_diag:
                swap(k, nz_diag[0])
            else:
                hit = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if A[i, j]), None)
                if hit is None:
                    break
                i, j = hit
                if i != k:
                    swap(k, i)
                # A[k,k] = A[k,k] + 2 A[k,j] + A[j,j] = 2 A[k,j] != 0
                A[k] = (A[k] + A[j]) % p
                A[:, k] = (A[:, k] + A[:, j]) % p
                M[k] = (M[k] + M[j]) % p
        inv = pow(int(A[k, k]), p - 2, p)
        for j in range(k + 1, n):
            if A[j, k]:
                c = (A[j, k] * inv) % p
                A[j] = (A[j] - c * A[k]) % p
                A[:, j] = (A[:, j] - c * A[:, k]) % p
                M[j] = (M[j] - c * M[k]) % p
    return M, [int(A[i, i]) for i in range(n)]


def rank_and_sign(B, p: int, order=None) -> tuple[int, int, list[int]]:
    _, diag = diagonalize(B, p, order)
    nz = [d for d in diag if d]
    delta = 1
    for d in nz:
        delta = delta * d % p
    return len(nz), quadratic_character(delta, p), diag


def lf_poly(spec: FormSpec, x):
    """``a_0 x + 1/2 sum_{i>=1} (a_i + a_{e-i}^{p^i}) x^{p^i}`` evaluated term by term."""
    F = spec.field
    a = spec.coeffs
    x_arr = np.asarray(x, dtype=np.int64)
    out = F.mul(a[0], x_arr)
    for i in range(1, F.e):
        c = F.mul(F.inv2, F.add(a[i], F.frobenius(a[F.e - i], i)))
        out = F.add(out, F.mul(c, F.frobenius(x_arr, i)))
    return int(out) if np.ndim(x) == 0 else out


def analyze(spec: FormSpec) -> FormProfile:
    F = spec.field
    B = gram_matrix(spec)
    M, diag = diagonalize(B, F.p)
    nz = [d for d in diag if d]
    delta = 1
    for d in nz:
        delta = delta * d % F.p
    L = np.zeros((F.e, F.e), dtype=np.int64)
    for j, v in enumerate(F.basis()):
        L[:, j] = F.coords(lf_poly(spec, v))
    L_inv = inverse(L, F.p) if rank_mod_p(L, F.p) == F.e else None
    return FormProfile(
        spec=spec,
        gram=B,
        rank=len(nz),
        sign=quadratic_character(delta, F.p),
        diag=tuple(diag),
        transform=M,
        lf_matrix=L,
        _lf_inverse=L_inv,
    )


def eval_lf(profile: FormProfile, x):
    F = profile.spec.field
    x_arr = np.asarray(x, dtype=np.int64)
    res = ((F.digits[x_arr] @ profile.lf_matrix.T) % F.p) @ F.powers
    return int(res) if np.ndim(x) == 0 else res


def solve_xb(profile: FormProfile, b):
    """The unique ``x_b`` with ``L_f(x_b) = -b/2``."""
    if profile._lf_inverse is None:
        raise DegenerateFormError(f"L_f has a nontrivial kernel (rank {profile.rank} < e); x_b is not unique")
    F = profile.spec.field
    target = F.smul((-F.inv2) % F.p, b)
    t_arr = np.asarray(target, dtype=np.int64)
    res = ((F.digits[t_arr] @ profile._lf_inverse.T) % F.p) @ F.powers
    return int(res) if np.ndim(b) == 0 else res


def restrict(spec: FormSpec, h: Subspace, gram: Optional[np.ndarray] = None) -> FormOnSubspace:
    p = spec.field.p
    if h.dim == 0:
        return FormOnSubspace(h, 0, 1)
    B = gram_matrix(spec) if gram is None else gram
    Hm = h.matrix()
    r, s, _ = rank_and_sign((Hm @ B @ Hm.T) % p, p)
    return FormOnSubspace(h, r, s)


def _count_by_rank_sign(p: int, r: int, rank_h: int, sign_h: int, a: int) -> int:
    eta = lambda t: quadratic_character(t, p)
    if rank_h % 2 == 0:
        v = p - 1 if a % p == 0 else -1
        term = v * eta((-1) ** (rank_h // 2)) * sign_h
        exp_ = r - (rank_h + 2) // 2
    else:
        term = eta((-1) ** ((rank_h - 1) // 2) * a) * sign_h
        exp_ = r - (rank_h + 1) // 2
    return p ** (r - 1) + term * p ** exp_


def count_on_subspace(spec: FormSpec, h: Subspace, a: int, method: str = "formula",
                      profile: Optional[FormProfile] = None) -> int:
    """``|{x in H : f(x) = a}|`` by the rank/sign closed form or by counting."""
    p = spec.field.p
    a %= p
    if method == "oracle":
        pts = pack(h.elements(), p)
        return int(np.count_nonzero(spec.values[pts] == a))
    if method != "formula":
        raise ValueError(f"unknown method {method!r}")
    prof = profile or analyze(spec)
    if not prof.nondegenerate:
        raise DegenerateFormError("the closed-form count needs a non-degenerate form")
    if h.dim == 0:
        return int(a == 0)
    res = restrict(spec, h, prof.gram)
    return _count_by_rank_sign(p, h.dim, res.rank, res.sign, a)


def orthogonal_complement(spec: FormSpec, vectors, gram: Optional[np.ndarray] = None) -> Subspace:
    """``{x : F(x, v) = 0 for all v}`` in coordinates."""
    p, e = spec.field.p, spec.field.e
    B = gram_matrix(spec) if gram is None else gram
    vecs = np.asarray(vectors, dtype=np.int64).reshape(-1, e)
    if vecs.shape[0] == 0:
        return Subspace.full(p, e)
    ns = nullspace((vecs @ B) % p, p)
    return Subspace.span(ns, p, e) if len(ns) else Subspace.zero(p, e)


def find_isotropic(spec: FormSpec, r: int, gram: Optional[np.ndarray] = None) -> Subspace:
    """An r-dimensional subspace on which ``f`` vanishes identically.

    Greedy: repeatedly take the first isotropic vector of the current
    orthogonal complement that is not already in the span.  By Witt's
    theorem every totally isotropic subspace extends to a maximal one, so
    the greedy walk reaches the Witt index whenever it exists.
    """
    F = spec.field
    p, e = F.p, F.e
    B = gram_matrix(spec) if gram is None else gram
    chosen = np.zeros((0, e), dtype=np.int64)
    for step in range(r):
        comp = orthogonal_complement(spec, chosen, B)
        pts = comp.elements(budget=None)
        vals = spec.values[pack(pts, p)]
        found = None
        for vec, val in zip(pts, vals):
            if val == 0 and vec.any() and rank_mod_p(np.vstack([chosen, vec]), p) == step + 1:
                found = vec
                break
        if found is None:
            raise IsotropicError(
                f"no totally isotropic subspace of dimension {r}: the largest has dimension {step}"
            )
        chosen = np.vstack([chosen, found])
    J = Subspace.span(chosen, p, e) if r else Subspace.zero(p, e)
    if (spec.values[pack(J.elements(budget=None), p)] != 0).any():
        raise AssertionError("constructed subspace is not totally isotropic")
    return J


def witt_index(spec: FormSpec) -> int:
    e = spec.field.e
    B = gram_matrix(spec)
    for r in range(e // 2, 0, -1):
        try:
            find_isotropic(spec, r, B)
            return r
        except IsotropicError:
            continue
    return 0
