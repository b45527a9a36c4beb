import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quadcodes.field import build_field, quadratic_character
from quadcodes.qform import (DegenerateFormError, FormSpec, IsotropicError, analyze, bilinear, count_on_subspace,
                             diagonalize, eval_form, eval_lf, find_isotropic, gram_matrix, lf_poly, rank_and_sign,
                             restrict, solve_xb, witt_index)
from quadcodes.subspaces import Subspace, all_vectors, enumerate_subspaces, pack

F27 = build_field(3, 3)


def det_mod_p(B, p):
    return int(round(np.linalg.det(np.asarray(B, dtype=float)))) % p


def radical_dim(form):
    F = form.field
    xs = F.elements()
    rad = [x for x in xs if all(bilinear(form, int(x), int(y)) == 0 for y in F.basis())]
    return int(round(np.log(len(rad)) / np.log(F.p)))


def forms_over(F, data):
    coeffs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=F.e, max_size=F.e))
    return FormSpec(F, tuple(coeffs))


def test_gram_reproduces_form(f27, f81, f125):
    for F, a in ((f27, 1), (f81, f81.primitive), (f81, 1), (f125, 1)):
        form = FormSpec.trace_square(F, a)
        B = gram_matrix(form)
        X = all_vectors(F.p, F.e)
        assert (np.einsum("ij,jk,ik->i", X, B, X) % F.p == form.values).all()


@pytest.mark.parametrize("p,e,a,sign", [(3, 4, "theta", 1), (3, 4, 1, -1), (5, 3, 1, 1), (3, 3, 1, 1)])
def test_sign_known_values(p, e, a, sign):
    F = build_field(p, e)
    form = FormSpec.trace_square(F, F.primitive if a == "theta" else a)
    prof = analyze(form)
    assert prof.rank == e
    assert prof.sign == sign
    # independent route: discriminant from an integer determinant
    assert quadratic_character(det_mod_p(prof.gram, p), p) == sign


def test_diagonal_is_congruent(f81):
    prof = analyze(FormSpec.trace_square(f81, f81.primitive))
    D = (prof.transform @ prof.gram @ prof.transform.T) % 3
    assert (D == np.diag(prof.diag)).all()


def test_sign_independent_of_basis_order(f81):
    form = FormSpec.trace_square(f81, f81.primitive)
    B = gram_matrix(form)
    got = {rank_and_sign(B, 3, order)[:2] for order in itertools.permutations(range(4))}
    assert got == {(4, 1)}


def test_zero_counts_match_sign(f81):
    # even e, nondegenerate: #{f = 0} = p^{e-1} + (p-1) p^{e/2-1} eta((-1)^{e/2}) eps
    for a in (1, f81.primitive):
        form = FormSpec.trace_square(f81, a)
        eps = analyze(form).sign
        zeros = int(np.count_nonzero(form.values == 0))
        assert zeros == 27 + 2 * 3 * quadratic_character(1, 3) * eps


def test_lf_matrix_matches_polynomial(f27, f81, f125):
    for F in (f27, f81, f125):
        form = FormSpec(F, tuple(range(1, F.e + 1)))
        prof = analyze(form)
        xs = F.elements()
        assert (eval_lf(prof, xs) == lf_poly(form, xs)).all()


def test_polarization_via_lf(f27):
    form = FormSpec(f27, (2, 5, 11))
    prof = analyze(form)
    xs = f27.elements()
    for y in xs:
        lhs = bilinear(form, xs, np.full_like(xs, y))
        rhs = f27.trace(f27.mul(y, eval_lf(prof, xs)))
        assert (lhs == rhs).all()


def test_solve_xb_exhaustive(f81):
    prof = analyze(FormSpec.trace_square(f81, 1))
    bs = f81.elements()
    xb = solve_xb(prof, bs)
    assert (eval_lf(prof, xb) == f81.smul((-f81.inv2) % 3, bs)).all()


def test_degenerate_form_rejected(f27):
    zero = FormSpec(f27, (0, 0, 0))
    prof = analyze(zero)
    assert prof.rank == 0 and not prof.nondegenerate
    with pytest.raises(DegenerateFormError):
        solve_xb(prof, 1)
    with pytest.raises(DegenerateFormError):
        count_on_subspace(zero, Subspace.full(3, 3), 0)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_rank_equals_codim_of_radical(data):
    form = forms_over(F27, data)
    prof = analyze(form)
    assert prof.rank == 3 - radical_dim(form)
    if prof.nondegenerate:
        assert quadratic_character(det_mod_p(prof.gram, 3), 3) == prof.sign


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_subspace_counts_random_forms(data):
    form = forms_over(F27, data)
    prof = analyze(form)
    if not prof.nondegenerate:
        return
    r = data.draw(st.integers(0, 3))
    subs = list(enumerate_subspaces(3, 3, r))
    h = data.draw(st.sampled_from(subs))
    for a in range(3):
        assert count_on_subspace(form, h, a, "formula", prof) == count_on_subspace(form, h, a, "oracle")


def test_subspace_counts_exhaustive_33(f27):
    form = FormSpec.trace_square(f27, 1)
    prof = analyze(form)
    for r in range(4):
        for h in enumerate_subspaces(3, 3, r):
            for a in range(3):
                assert count_on_subspace(form, h, a, "formula", prof) == count_on_subspace(form, h, a, "oracle")


def test_restrict_reports_rank_of_restriction(f81):
    form = FormSpec.trace_square(f81, 1)
    J = find_isotropic(form, 1)
    res = restrict(form, J)
    assert res.rank == 0 and res.sign == 1
    assert restrict(form, Subspace.full(3, 4)).rank == 4


def brute_witt(form):
    F = form.field
    best = 0
    for r in range(1, F.e // 2 + 1):
        if any((form.values[pack(h.elements(), F.p)] == 0).all() for h in enumerate_subspaces(F.p, F.e, r)):
            best = r
    return best


@pytest.mark.parametrize("p,e,a", [(3, 3, 1), (5, 3, 1), (3, 4, "theta"), (3, 4, 1), (3, 5, 1)])
def test_witt_index_matches_exhaustive_search(p, e, a):
    F = build_field(p, e)
    form = FormSpec.trace_square(F, F.primitive if a == "theta" else a)
    w = witt_index(form)
    assert w == brute_witt(form)
    J = find_isotropic(form, w)
    assert J.dim == w
    assert (form.values[pack(J.elements(), p)] == 0).all()
    with pytest.raises(IsotropicError):
        find_isotropic(form, w + 1)


def test_eval_form_scalar_and_vector(f27):
    form = FormSpec.trace_square(f27, 1)
    assert eval_form(form, 1) == 0  # Tr(1) = 3 = 0 in F_3
    assert isinstance(eval_form(form, 5), int)
    assert eval_form(form, f27.elements()).shape == (27,)


def test_form_serialization(f81):
    form = FormSpec.trace_square(f81, f81.primitive)
    assert FormSpec.from_dict(f81, form.to_dict()) == form
