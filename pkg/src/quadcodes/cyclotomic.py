"""Exact arithmetic in Z[zeta_p] and the character sums built on it.

A :class:`CycInt` stores integer coordinates on ``1, zeta, ..., zeta^{p-2}``;
``zeta^{p-1}`` is rewritten with ``1 + zeta + ... + zeta^{p-1} = 0``.  All
arithmetic is in Python integers, so nothing here has a tolerance.

Square-root convention
----------------------
``sqrt(p*)`` is the quadratic Gauss sum ``g = sum_t eta(t) zeta^t``, which
satisfies ``g^2 = p* = (-1)^{(p-1)/2} p`` and ``sigma_z(g) = eta(z) g``.
Negative half-integer powers of ``p*`` never appear as values: identities
are multiplied through by an integer power of ``p*`` (Galois-fixed) so
both sides land in Z[zeta_p].
"""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .field import quadratic_character


class CycInt:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int]):
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) == p:
            top = coeffs[-1]
            coeffs = [c - top for c in coeffs[:-1]]
        elif len(coeffs) != p - 1:
            raise ValueError(f"expected {p - 1} or {p} coefficients, got {len(coeffs)}")
        self.p = p
        self.coeffs = tuple(coeffs)

    @classmethod
    def integer(cls, p: int, n: int) -> "CycInt":
        return cls(p, [n] + [0] * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CycInt":
        full = [0] * p
        full[k % p] = 1
        return cls(p, full)

    @classmethod
    def from_exponent_counts(cls, p: int, counts) -> "CycInt":
        """``sum_k counts[k] zeta^k`` for a length-p histogram."""
        return cls(p, list(counts))

    def full(self) -> list[int]:
        return list(self.coeffs) + [0]

    def _check(self, other: "CycInt") -> None:
        if self.p != other.p:
            raise ValueError(f"mismatched roots of unity: p={self.p} vs p={other.p}")

    def _coerce(self, other) -> "CycInt":
        if isinstance(other, CycInt):
            self._check(other)
            return other
        if isinstance(other, (int, np.integer)):
            return CycInt.integer(self.p, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = [0] * p
        b = other.full()
        for i, a in enumerate(self.full()):
            if a:
                for j, c in enumerate(b):
                    if c:
                        out[(i + j) % p] += a * c
        return CycInt(p, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not in Z[zeta_p]")
        result = CycInt.integer(self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other) if isinstance(other, (CycInt, int, np.integer)) else NotImplemented
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return f"CycInt(p={self.p}: {' + '.join(terms) or '0'})"

    def to_complex(self) -> complex:
        z = np.exp(2j * np.pi / self.p)
        return complex(sum(c * z ** k for k, c in enumerate(self.coeffs)))


def galois(z: int, x: CycInt) -> CycInt:
    """``sigma_z``: the automorphism sending ``zeta`` to ``zeta^z``."""
    p = x.p
    if z % p == 0:
        raise ValueError(f"sigma_z needs z coprime to p={p}")
    out = [0] * p
    for k, c in enumerate(x.full()):
        out[(k * z) % p] += c
    return CycInt(p, out)


def pstar(p: int) -> int:
    return (-1) ** ((p - 1) // 2) * p


def gauss_sum(p: int) -> CycInt:
    full = [0] + [quadratic_character(t, p) for t in range(1, p)]
    return CycInt(p, full)


def pstar_power(p: int, k: int) -> CycInt:
    """``(p*)^{k/2}`` for ``k >= 0`` as ``g^k``."""
    return gauss_sum(p) ** k


# -- character sums over F_q --

def weil_sum(spec, b: int) -> CycInt:
    """``sum_x zeta^{f(x) - Tr(b x)}`` by direct summation over F_q."""
    F = spec.field
    xs = F.elements()
    expo = (spec.values - F.trace(F.mul(b, xs))) % F.p
    return CycInt.from_exponent_counts(F.p, np.bincount(expo, minlength=F.p))


def weil_sum_closed_form(profile, b: int) -> CycInt:
    """Predicted ``g^R * sum_x zeta^{f(x) - Tr(b x)}`` with ``R`` the rank of ``f``.

    For ``b`` in the image of ``L_f`` this is
    ``eps_f * eta(-1)^R * q * zeta^{-f(x_b)}``; otherwise 0.  Equivalently the
    sum itself is ``eps_f * g^R * p^{e-R} * zeta^{-f(x_b)}``.
    """
    from .subspaces import solve

    spec = profile.spec
    F = spec.field
    p = F.p
    target = F.smul((-F.inv2) % p, b)
    sol = solve(profile.lf_matrix, F.coords(target), p)
    if sol is None:
        return CycInt.integer(p, 0)
    xb = F.element(sol)
    unit = quadratic_character(-1, p) ** profile.rank
    return CycInt.zeta(p, -int(spec.values[xb])) * (profile.sign * unit * F.q)


def weil_identity(profile, b: int) -> tuple[CycInt, CycInt]:
    """Both sides of the cleared Weil-sum identity at ``b``: (direct, closed form)."""
    p = profile.spec.field.p
    lhs = weil_sum(profile.spec, b) * pstar_power(p, profile.rank)
    return lhs, weil_sum_closed_form(profile, b)


def galois_orbit_sum(p: int, r: int, z: Optional[int] = None) -> CycInt:
    """``(p*)^r * sum_{y in F_p^*} sigma_y((p*)^{-r/2} zeta^z)``, summed directly.

    ``z=None`` drops the ``zeta^z`` factor.  Since ``(p*)^r (p*)^{-r/2} = g^r``
    and ``p*`` is fixed by every ``sigma_y``, each term is ``sigma_y(g^r zeta^z)``.
    """
    inner = pstar_power(p, r)
    if z is not None:
        inner = inner * CycInt.zeta(p, z)
    total = CycInt.integer(p, 0)
    for y in range(1, p):
        total = total + galois(y, inner)
    return total


def galois_orbit_closed_form(p: int, r: int, z: Optional[int] = None) -> CycInt:
    """Closed form of :func:`galois_orbit_sum`, as an integer combination of ``g``-powers."""
    if z is None:
        if r % 2:
            return CycInt.integer(p, 0)
        return CycInt.integer(p, (p - 1) * pstar(p) ** (r // 2))
    if z % p == 0:
        raise ValueError("z must be nonzero mod p")
    if r % 2:
        return CycInt.integer(p, quadratic_character(z, p) * pstar(p) ** ((r + 1) // 2))
    return CycInt.integer(p, -pstar(p) ** (r // 2))
