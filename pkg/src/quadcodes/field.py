"""Arithmetic in F_p and F_q = F_{p^e} for odd p.

Elements of F_q are stored as integers ``0 <= x < q`` that pack the
coordinate vector of ``x`` in the polynomial basis ``1, t, ..., t^{e-1}``:

    x = c_0 + c_1 p + ... + c_{e-1} p^{e-1}

so the prime subfield F_p is exactly ``{0, ..., p-1}``.  Multiplication goes
through exp/log tables built from the primitive element; addition is done
digit-wise.  Every operation accepts Python ints or numpy integer arrays.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

LOG_TABLE_CAP = 1 << 20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def quadratic_character(a: int, p: int) -> int:
    """Legendre symbol of ``a`` mod ``p`` with the value 0 at 0."""
    a = int(a) % p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


# -- polynomials over F_p, coefficient lists with the constant term first --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int):
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        quot[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] = (a[i + shift] - c * bc) % p
        _trim(a)
    return quot, a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ac in enumerate(a):
        if ac:
            for j, bc in enumerate(b):
                prod[i + j] = (prod[i + j] + ac * bc) % p
    return _poly_divmod(prod, mod, p)[1]


def _poly_powmod(a: Sequence[int], n: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_divmod(list(a), mod, p)[1]
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        n >>= 1
    return result


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Ben-Or test: ``gcd(f, x^{p^i} - x) = 1`` for ``1 <= i <= deg/2``."""
    f = _trim([c % p for c in poly])
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    h = [0, 1]
    for _ in range(deg // 2):
        h = _poly_powmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(f, diff, p)) > 1:
            return False
    return True


def _lex_vectors(p: int, e: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(p), repeat=e)


class FiniteField:
    """The field F_{p^e} with a fixed modulus and primitive element.

    Use :func:`build_field` for the deterministic default choices.
    """

    def __init__(self, p: int, e: int, modulus: Sequence[int], primitive: Optional[Sequence[int]] = None):
        if not is_prime(p) or p == 2:
            raise FieldError(f"characteristic must be an odd prime, got p={p}")
        if e < 1:
            raise FieldError(f"extension degree must be >= 1, got e={e}")
        modulus = [int(c) % p for c in modulus]
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {e}: {modulus}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p ** e
        if self.q > LOG_TABLE_CAP * 16:
            raise FieldError(f"field of size {self.q} is beyond desk scale")
        self.modulus = tuple(modulus)
        self.powers = p ** np.arange(e, dtype=np.int64)
        self.digits = (np.arange(self.q, dtype=np.int64)[:, None] // self.powers) % p
        self.inv2 = (p + 1) // 2

        if primitive is None:
            primitive = self._find_primitive()
        elif not self._is_primitive(list(primitive)):
            raise FieldError(f"{list(primitive)} does not generate the multiplicative group")
        self.primitive = self.element(primitive)
        self._build_tables()

    # -- construction helpers --

    def _is_primitive(self, vec: list[int]) -> bool:
        if not any(vec):
            return False
        order = self.q - 1
        for ell in prime_factors(order):
            if _trim(_poly_powmod(vec, order // ell, self.modulus, self.p)) == [1]:
                return False
        return _trim(_poly_powmod(vec, order, self.modulus, self.p)) == [1]

    def _find_primitive(self) -> tuple[int, ...]:
        for vec in _lex_vectors(self.p, self.e):
            if self._is_primitive(list(vec)):
                return vec
        raise FieldError("no primitive element found")  # unreachable for a field

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        g = list(self.coords(self.primitive))
        cur = [1]
        for k in range(q - 1):
            vec = cur + [0] * (self.e - len(cur))
            idx = int(np.dot(vec, self.powers))
            exp[k] = idx
            log[idx] = k
            cur = _poly_mulmod(cur, g, self.modulus, p) or [0]
        exp[q - 1:] = exp[: q - 1]
        if (log[1:] < 0).any():
            raise FieldError("primitive element table is incomplete")
        self._exp = exp
        self._log = log
        tr = np.zeros(q, dtype=np.int64)
        x = np.arange(q, dtype=np.int64)
        for i in range(self.e):
            tr = self.add(tr, self.frobenius(x, i))
        if (tr >= p).any():
            raise FieldError("trace escaped the prime subfield")
        self._trace = tr

    # -- conversion --

    def element(self, coords: Sequence[int]) -> int:
        coords = [int(c) % self.p for c in coords]
        if len(coords) != self.e:
            raise FieldError(f"expected {self.e} coordinates, got {len(coords)}")
        return int(np.dot(coords, self.powers))

    def coords(self, x) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits[int(x)])

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def basis(self) -> list[int]:
        """The polynomial basis ``1, t, ..., t^{e-1}`` as packed elements."""
        return [self.p ** j for j in range(self.e)]

    def theta_power(self, k: int) -> int:
        return self.pow(self.primitive, k)

    # -- arithmetic --

    @staticmethod
    def _out(res, *args):
        if all(np.ndim(a) == 0 for a in args):
            return int(res)
        return res

    def add(self, a, b):
        res = ((self.digits[a] + self.digits[b]) % self.p) @ self.powers
        return self._out(res, a, b)

    def neg(self, a):
        res = ((-self.digits[a]) % self.p) @ self.powers
        return self._out(res, a)

    def sub(self, a, b):
        res = ((self.digits[a] - self.digits[b]) % self.p) @ self.powers
        return self._out(res, a, b)

    def smul(self, c: int, a):
        """Multiply by the prime-field scalar ``c``."""
        res = ((c * self.digits[a]) % self.p) @ self.powers
        return self._out(res, a)

    def mul(self, a, b):
        a_arr = np.asarray(a, dtype=np.int64)
        b_arr = np.asarray(b, dtype=np.int64)
        la, lb = self._log[a_arr], self._log[b_arr]
        res = np.where((la < 0) | (lb < 0), 0, self._exp[np.maximum(la, 0) + np.maximum(lb, 0)])
        return self._out(res, a, b)

    def inv(self, a):
        a_arr = np.asarray(a, dtype=np.int64)
        if (a_arr == 0).any():
            raise ZeroDivisionError("inverse of zero in F_q")
        res = self._exp[(-self._log[a_arr]) % (self.q - 1)]
        return self._out(res, a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        a_arr = np.asarray(a, dtype=np.int64)
        la = self._log[a_arr]
        if n == 0:
            res = np.ones_like(a_arr)
        elif n < 0:
            if (la < 0).any():
                raise ZeroDivisionError("negative power of zero in F_q")
            res = self._exp[(la * n) % (self.q - 1)]
        else:
            res = np.where(la < 0, 0, self._exp[(np.maximum(la, 0) * (n % (self.q - 1))) % (self.q - 1)])
        return self._out(res, a)

    def frobenius(self, a, i: int):
        """``a^{p^i}``; ``i`` is taken mod ``e``."""
        i %= self.e
        a_arr = np.asarray(a, dtype=np.int64)
        la = self._log[a_arr]
        res = np.where(la < 0, 0, self._exp[(np.maximum(la, 0) * self.p ** i) % (self.q - 1)])
        return self._out(res, a)

    def trace(self, a):
        """Absolute trace F_q -> F_p, returned as an integer in ``[0, p)``."""
        res = self._trace[np.asarray(a, dtype=np.int64)]
        return self._out(res, a)

    @property
    def trace_table(self) -> np.ndarray:
        return self._trace

    def in_prime_field(self, a):
        arr = np.asarray(a, dtype=np.int64)
        res = (arr >= 0) & (arr < self.p)
        return bool(res) if np.ndim(a) == 0 else res

    # -- serialization --

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "modulus": list(self.modulus),
            "primitive": list(self.coords(self.primitive)),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FiniteField":
        return cls(d["p"], d["e"], d["modulus"], d.get("primitive"))

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash((self.p, self.e, self.modulus, self.primitive))

    def __repr__(self):
        return f"FiniteField(p={self.p}, e={self.e}, modulus={list(self.modulus)})"


def irreducibles(p: int, e: int) -> Iterator[tuple[int, ...]]:
    """Monic irreducibles of degree ``e`` in lexicographic order (constant term first)."""
    for low in _lex_vectors(p, e):
        poly = list(low) + [1]
        if is_irreducible(poly, p):
            yield tuple(poly)


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    for poly in irreducibles(p, e):
        return poly
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")


def build_field(p: int, e: int, modulus: Optional[Sequence[int]] = None) -> FiniteField:
    if not is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if p == 2:
        raise FieldError("characteristic 2 is not supported; p must be odd")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got e={e}")
    if modulus is None:
        modulus = smallest_irreducible(p, e)
    return FiniteField(p, e, modulus)
