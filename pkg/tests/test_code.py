import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quadcodes.checks import PRESETS
from quadcodes.code import (CodeSpec, WeightDistribution, codeword_weight, count_defining_set, defining_set,
                            dual_distance_at_least_2, pless_check, secret_sharing_ratio, weight_distribution)
from quadcodes.field import build_field
from quadcodes.qform import DegenerateFormError, FormSpec, analyze
from quadcodes.subspaces import BudgetExceeded, rank

ALL = ["3-3", "5-3", "3-4-plus", "3-4-minus"]
REFERENCE = {
    "5-3": {0: 1, 2375: 240, 2500: 15224, 2625: 160},
    "3-4-plus": {0: 1, 1296: 66, 1458: 6398, 1539: 96},
    "3-4-minus": {0: 1, 1377: 120, 1458: 6398, 1620: 42},
}


@pytest.fixture(scope="module", params=ALL)
def spec(request):
    return PRESETS[request.param].build()


def e2_spec(p, a=1, alpha=1):
    F = build_field(p, 2)
    return CodeSpec(FormSpec.trace_square(F, a), alpha)


def test_length(spec):
    xs, ys, n = defining_set(spec)
    assert n == spec.length == spec.p ** (2 * spec.e - 1) - 1
    assert count_defining_set(spec) == n
    assert all(spec.is_member(int(x), int(y)) for x, y in zip(xs[:200], ys[:200]))
    assert not spec.is_member(0, 0)


def test_dimension_is_2e(spec):
    assert rank(spec.generator_matrix, spec.p) == 2 * spec.e


def test_codeword_weights_exhaustive(spec):
    q = spec.field.q
    table = spec.weights
    assert table[0] == 0
    for idx in range(1, q * q):
        u, v = idx % q, idx // q
        assert codeword_weight(spec, u, v) == table[idx], (u, v)


def test_codeword_weight_enumerate_method(spec33):
    q = spec33.field.q
    for idx in (1, 5, 27, 28, 400, 728):
        assert codeword_weight(spec33, idx % q, idx // q, "enumerate") == spec33.weights[idx]
    with pytest.raises(ValueError):
        codeword_weight(spec33, 0, 0)


@pytest.mark.parametrize("name", sorted(REFERENCE))
def test_reference_distributions(name):
    s = PRESETS[name].build()
    for method in ("formula", "enumerate"):
        assert weight_distribution(s, method).as_dict() == REFERENCE[name]


def test_distribution_3_3(spec33):
    # frozen from exhaustive enumeration
    wd = weight_distribution(spec33, "enumerate")
    assert wd.as_dict() == {0: 1, 135: 24, 162: 692, 189: 12}
    assert weight_distribution(spec33, "formula") == wd


def test_pless_and_dual_distance(spec):
    wd = weight_distribution(spec, "enumerate")
    assert all(c.ok for c in pless_check(wd))
    assert dual_distance_at_least_2(spec)


def test_pless_detects_corruption():
    wd = WeightDistribution(5, 3124, 6, ((0, 1), (2375, 241), (2500, 15224), (2625, 160)))
    assert not all(c.ok for c in pless_check(wd))


def test_dual_distance_detects_zero_column(spec33):
    xs, ys = spec33.points
    assert not dual_distance_at_least_2(spec33, (np.append(xs, 0), np.append(ys, 0)))


def test_secret_sharing_ratio(spec):
    lo, hi, ok = secret_sharing_ratio(weight_distribution(spec, "formula"))
    assert ok and spec.p * lo > (spec.p - 1) * hi


@pytest.mark.parametrize("p", [3, 5, 7])
def test_even_e2_formula_matches_enumeration(p):
    for a in (1, build_field(p, 2).primitive):
        s = e2_spec(p, a)
        assert weight_distribution(s, "formula") == weight_distribution(s, "enumerate")


@settings(max_examples=12, deadline=None)
@given(st.lists(st.integers(0, 26), min_size=3, max_size=3), st.integers(1, 26))
def test_random_forms_formula_matches_enumeration(coeffs, alpha):
    F = build_field(3, 3)
    form = FormSpec(F, tuple(coeffs))
    if not analyze(form).nondegenerate:
        with pytest.raises(DegenerateFormError):
            CodeSpec(form, alpha)
        return
    s = CodeSpec(form, alpha)
    assert weight_distribution(s, "formula") == weight_distribution(s, "enumerate")


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 80))
def test_alpha_invariance(alpha):
    base = PRESETS["3-4-plus"].build()
    other = CodeSpec(base.form, alpha, base.profile)
    assert weight_distribution(other, "enumerate") == weight_distribution(base, "formula")


def test_rejections(f27):
    with pytest.raises(ValueError):
        CodeSpec(FormSpec.trace_square(f27, 1), 0)
    with pytest.raises(DegenerateFormError):
        CodeSpec(FormSpec(f27, (0, 0, 0)), 1)


def test_enumeration_budget(spec53):
    with pytest.raises(BudgetExceeded):
        weight_distribution(spec53, "enumerate", budget=1000)


def test_distribution_json_roundtrip():
    wd = weight_distribution(PRESETS["5-3"].build(), "formula")
    text = wd.to_json()
    assert WeightDistribution.from_json(text) == wd
    assert '"rows"' in text and '"multiplicity"' in text
    assert wd.enumerator() == "1 + 240x^2375 + 15224x^2500 + 160x^2625"


def test_distribution_validation():
    with pytest.raises(ValueError):
        WeightDistribution(3, 10, 2, ((5, 1), (3, 2)))
    with pytest.raises(ValueError):
        WeightDistribution(3, 10, 2, ((0, 1), (3, 0)))
