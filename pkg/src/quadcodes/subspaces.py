"""F_p-subspaces of F_p^m in canonical reduced row-echelon form.

Also hosts the small amount of linear algebra mod p that the rest of the
package needs (row reduction, null spaces, solving).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

DEFAULT_BUDGET = 10 ** 8


class BudgetExceeded(RuntimeError):
    """Projected enumeration work is above the configured cap."""

    def __init__(self, what: str, cost: int, budget: int):
        super().__init__(f"{what}: projected cost {cost} exceeds budget {budget}")
        self.cost = cost
        self.budget = budget


def check_budget(what: str, cost: int, budget: Optional[int]) -> None:
    if budget is not None and cost > budget:
        raise BudgetExceeded(what, cost, budget)


# -- linear algebra mod p --

def rref(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``mat`` over F_p and its pivot columns.

    Zero rows are dropped from the result.
    """
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim == 1:
        a = a[None, :]
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        others = np.nonzero(a[:, c])[0]
        for i in others:
            if i != r:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(mat, p: int) -> int:
    return len(rref(mat, p)[1])


def nullspace(mat, p: int, ncols: Optional[int] = None) -> np.ndarray:
    """Basis (as rows) of ``{x : mat @ x = 0}`` over F_p."""
    a = np.array(mat, dtype=np.int64)
    if a.size == 0:
        n = ncols if ncols is not None else (a.shape[1] if a.ndim == 2 else 0)
        return np.eye(n, dtype=np.int64)
    red, piv = rref(a, p)
    n = red.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-red[i, fc]) % p
    return basis


def solve(a, b, p: int) -> Optional[np.ndarray]:
    """One solution of ``a @ x = b`` over F_p, or None if inconsistent."""
    a = np.array(a, dtype=np.int64) % p
    b = np.array(b, dtype=np.int64) % p
    aug = np.concatenate([a, b[:, None]], axis=1)
    red, piv = rref(aug, p)
    n = a.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = red[i, n]
    return x


def inverse(a, p: int) -> np.ndarray:
    a = np.array(a, dtype=np.int64) % p
    n = a.shape[0]
    red, piv = rref(np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise np.linalg.LinAlgError("matrix is singular mod p")
    return red[:, n:]


def gaussian_binomial(m: int, r: int, p: int) -> int:
    """Number of r-dimensional subspaces of F_p^m."""
    if r < 0 or r > m:
        return 0
    num = den = 1
    for i in range(r):
        num *= p ** (m - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


# -- subspaces --

@dataclass(frozen=True)
class Subspace:
    """Subspace of F_p^m stored by its RREF basis (so equality is structural)."""

    p: int
    m: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def span(cls, vectors, p: int, m: int) -> "Subspace":
        vecs = np.array(vectors, dtype=np.int64).reshape(-1, m)
        if vecs.shape[0] == 0:
            return cls.zero(p, m)
        red, _ = rref(vecs, p)
        return cls(p, m, tuple(tuple(int(c) for c in row) for row in red))

    @classmethod
    def zero(cls, p: int, m: int) -> "Subspace":
        return cls(p, m, ())

    @classmethod
    def full(cls, p: int, m: int) -> "Subspace":
        return cls(p, m, tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))

    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(self.dim, self.m)

    def elements(self, budget: Optional[int] = DEFAULT_BUDGET) -> np.ndarray:
        """All ``p^dim`` vectors, one per row."""
        check_budget("subspace elements", self.p ** self.dim, budget)
        return (all_vectors(self.p, self.dim) @ self.matrix()) % self.p

    def contains(self, vec) -> bool:
        v = np.asarray(vec, dtype=np.int64) % self.p
        return rank(np.vstack([self.matrix(), v[None, :]]), self.p) == self.dim

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(row) for row in self.basis)

    def to_dict(self) -> dict:
        return {"m": self.m, "r": self.dim, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_dict(cls, d: dict, p: int) -> "Subspace":
        return cls.span(d["basis"], p, d["m"]) if d["basis"] else cls.zero(p, d["m"])


def all_vectors(p: int, m: int) -> np.ndarray:
    """All of F_p^m as rows; row ``i`` packs to ``i`` (first coordinate least significant)."""
    idx = np.arange(p ** m, dtype=np.int64)
    return (idx[:, None] // (p ** np.arange(m, dtype=np.int64))) % p


def pack(vectors, p: int) -> np.ndarray:
    v = np.asarray(vectors, dtype=np.int64)
    return v @ (p ** np.arange(v.shape[-1], dtype=np.int64))


def dual_subspace(h: Subspace, pairing) -> Subspace:
    """Annihilator ``{x : <b, x> = 0 for every b in h}`` where ``<b, x> = b P x^T``."""
    pmat = np.asarray(pairing, dtype=np.int64)
    if h.dim == 0:
        return Subspace.full(h.p, h.m)
    ns = nullspace((h.matrix() @ pmat) % h.p, h.p)
    return Subspace.span(ns, h.p, h.m) if len(ns) else Subspace.zero(h.p, h.m)


def _free_positions(pivots: Sequence[int], m: int) -> list[tuple[int, int]]:
    pset = set(pivots)
    return [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pset]


def enumeration_cost(p: int, m: int, r: int, per_subspace: int = 1) -> int:
    return gaussian_binomial(m, r, p) * per_subspace


def iter_rref_batches(p: int, m: int, r: int, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """Yield arrays of shape ``(B, r, m)`` holding RREF bases.

    Order: pivot sets in ``itertools.combinations`` order; within a pivot
    set, free entries vary lexicographically in row-major position order.
    The pivot-set loop is the natural shard key for parallel runs.
    """
    for pivots in itertools.combinations(range(m), r):
        yield from _batches_for_pivots(p, m, pivots, chunk)


def _batches_for_pivots(p: int, m: int, pivots: Sequence[int], chunk: int) -> Iterator[np.ndarray]:
    r = len(pivots)
    free = _free_positions(pivots, m)
    k = len(free)
    base = np.zeros((r, m), dtype=np.int64)
    for i, pc in enumerate(pivots):
        base[i, pc] = 1
    total = p ** k
    weights = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    rows = np.array([f[0] for f in free], dtype=np.int64)
    cols = np.array([f[1] for f in free], dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        out = np.broadcast_to(base, (idx.size, r, m)).copy()
        if k:
            vals = (idx[:, None] // weights) % p
            out[:, rows, cols] = vals
        yield out


def pivot_sets(m: int, r: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(m), r))


def enumerate_subspaces(p: int, m: int, r: int, budget: Optional[int] = DEFAULT_BUDGET) -> Iterator[Subspace]:
    """Every r-dimensional subspace of F_p^m exactly once, streamed."""
    if not 0 <= r <= m:
        raise ValueError(f"need 0 <= r <= m, got r={r}, m={m}")
    check_budget(f"subspaces [{m} choose {r}]_{p}", gaussian_binomial(m, r, p), budget)
    for batch in iter_rref_batches(p, m, r):
        for mat in batch:
            yield Subspace(p, m, tuple(tuple(int(c) for c in row) for row in mat))
