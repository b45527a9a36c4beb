import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quadcodes.field import (FieldError, FiniteField, build_field, irreducibles, is_irreducible,
                             prime_factors, quadratic_character)


def naive_polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def has_root(poly, p):
    return any(sum(c * pow(x, k, p) for k, c in enumerate(poly)) % p == 0 for x in range(p))


def divisible_by_some_quadratic(poly, p):
    """Trial division by every monic quadratic via products: does poly = quad * monic quad?"""
    quads = [[a, b, 1] for a in range(p) for b in range(p)]
    return any(naive_polymul(q1, q2, p) == list(poly) for q1 in quads for q2 in quads)


SMALL = [(3, 1), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (3, 4), (3, 5), (5, 4), (11, 2), (3, 6)]


def test_prime_field_modulus():
    F = build_field(3, 1)
    assert F.modulus == (0, 1)
    assert F.q == 3
    assert [F.trace(x) for x in range(3)] == [0, 1, 2]


def test_modulus_5_3_has_no_roots(f125):
    assert len(f125.modulus) == 4 and f125.modulus[-1] == 1
    assert not has_root(f125.modulus, 5)


def test_modulus_3_4_no_roots_no_quadratic_factors(f81):
    assert not has_root(f81.modulus, 3)
    assert not divisible_by_some_quadratic(f81.modulus, 3)


def test_modulus_is_lexicographically_first():
    # every earlier monic quartic over F_3 has a root or splits into quadratics
    F = build_field(3, 4)
    for low in itertools.product(range(3), repeat=4):
        poly = list(low) + [1]
        if tuple(poly) == F.modulus:
            break
        assert has_root(poly, 3) or divisible_by_some_quadratic(poly, 3)


@pytest.mark.parametrize("p,e", SMALL)
def test_ben_or_matches_first_irreducible(p, e):
    F = build_field(p, e)
    assert is_irreducible(list(F.modulus), p)
    assert next(irreducibles(p, e)) == F.modulus


@pytest.mark.parametrize("p,e", [(3, 3), (5, 3), (3, 4), (7, 2)])
def test_primitive_order(p, e):
    F = build_field(p, e)
    g = F.primitive
    assert F.pow(g, F.q - 1) == 1
    for ell in prime_factors(F.q - 1):
        assert F.pow(g, (F.q - 1) // ell) != 1


def test_primitive_is_first_generator(f27):
    order = lambda x: next(k for k in range(1, 27) if f27.pow(x, k) == 1)
    for vec in itertools.product(range(3), repeat=3):
        x = f27.element(vec)
        if x == f27.primitive:
            break
        assert x == 0 or order(x) < 26


@pytest.mark.parametrize("bad", [1, 2, 4, 9, 15])
def test_rejects_bad_characteristic(bad):
    with pytest.raises(FieldError):
        build_field(bad, 2)


def test_rejects_reducible_modulus():
    with pytest.raises(FieldError):
        FiniteField(3, 2, [1, 0, 1 + 1])  # t^2 + 2 = (t - 1)(t + 1)


@pytest.mark.parametrize("p,e", [(3, 3), (5, 2), (3, 4), (7, 2), (3, 2)])
def test_field_axioms_exhaustive(p, e):
    F = build_field(p, e)
    xs = F.elements()
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    prod = F.mul(X, Y)
    assert (prod == prod.T).all()
    assert (F.mul(X, 0) == 0).all()
    assert (F.mul(X, 1) == X).all()
    nz = xs[1:]
    assert (F.mul(nz, F.inv(nz)) == 1).all()
    # distributivity over a slice of the cube
    for z in xs[: min(len(xs), 9)]:
        assert (F.mul(z, F.add(X, Y)) == F.add(F.mul(z, X), F.mul(z, Y))).all()
    # associativity of multiplication
    for z in xs[: min(len(xs), 9)]:
        assert (F.mul(F.mul(X, Y), z) == F.mul(X, F.mul(Y, z))).all()


def test_inverse_of_zero_raises(f27):
    with pytest.raises(ZeroDivisionError):
        f27.inv(0)


def test_frobenius(f27):
    xs = f27.elements()
    assert (f27.frobenius(xs, 0) == xs).all()
    assert (f27.frobenius(xs, 1) == np.array([f27.pow(int(x), 3) for x in xs])).all()
    for c in range(3):
        assert all(f27.frobenius(c, i) == c for i in range(3))
    for i in range(3):
        for j in range(3):
            assert (f27.frobenius(f27.frobenius(xs, i), j) == f27.frobenius(xs, (i + j) % 3)).all()


def test_trace(f27, f125):
    assert f27.trace(0) == 0
    assert f125.trace(1) == 3
    fibers = np.bincount(f27.trace(f27.elements()), minlength=3)
    assert fibers.tolist() == [9, 9, 9]
    # trace equals the sum of conjugates
    xs = f27.elements()
    conj = f27.add(f27.add(xs, f27.frobenius(xs, 1)), f27.frobenius(xs, 2))
    assert (conj == f27.trace(xs)).all()
    assert f27.in_prime_field(conj).all()


def test_trace_linear_exhaustive(f27):
    xs = f27.elements()
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    for a in range(3):
        for b in range(3):
            lhs = f27.trace(f27.add(f27.smul(a, X), f27.smul(b, Y)))
            rhs = (a * f27.trace(X) + b * f27.trace(Y)) % 3
            assert (lhs == rhs).all()


def test_trace_form_nondegenerate(f81):
    basis = f81.basis()
    xs = f81.elements()
    images = np.stack([f81.trace(f81.mul(xs, v)) for v in basis], axis=1)
    assert len({tuple(r) for r in images}) == f81.q


def test_quadratic_character():
    assert quadratic_character(0, 5) == 0
    assert quadratic_character(4, 5) == 1
    assert quadratic_character(2, 3) == -1
    for p in (3, 5, 7, 11, 13):
        squares = {x * x % p for x in range(1, p)}
        for a in range(1, p):
            assert quadratic_character(a, p) == (1 if a in squares else -1)


def test_serialization_roundtrip(f81):
    d = f81.to_dict()
    assert set(d) == {"p", "e", "modulus", "primitive"}
    G = FiniteField.from_dict(d)
    assert G == f81
    assert G.primitive == f81.primitive


def test_deterministic_build():
    assert build_field(5, 3).to_dict() == build_field(5, 3).to_dict()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 200))
def test_power_laws(a, b, n):
    F = build_field(3, 4)
    assert F.pow(F.mul(a, b), n) == F.mul(F.pow(a, n), F.pow(b, n))
    assert F.frobenius(F.add(a, b), 1) == F.add(F.frobenius(a, 1), F.frobenius(b, 1))
    if a:
        assert F.div(F.mul(a, b), a) == b


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (7, 2), (3, 3)]), st.data())
def test_alternative_modulus_gives_isomorphic_counts(pe, data):
    """Any irreducible modulus gives the same trace fiber sizes and element orders."""
    p, e = pe
    polys = list(irreducibles(p, e))
    poly = data.draw(st.sampled_from(polys))
    F = FiniteField(p, e, poly)
    assert np.bincount(F.trace(F.elements()), minlength=p).tolist() == [p ** (e - 1)] * p
    assert F.pow(F.primitive, F.q - 1) == 1
