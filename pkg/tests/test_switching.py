from fractions import Fraction

import numpy as np
import pytest

from designlab.domain import BudgetNotReachedError, ConstructionError, VerificationError
from designlab.fixtures import first_code, switched_code
from designlab.gf import Field
from designlab.mds import linear_mds, subcode_order_admissible, verify_mds, verify_subcode
from designlab.switching import (
    enumerate_switched,
    exchange,
    line_subcode,
    lower_bound,
    select_disjoint,
    subcodes_through,
    switch_affine,
    switch_type1,
    switched_component,
)


@pytest.fixture(scope="module")
def distance3():
    return linear_mds(Field(3, 2), 4, 3)


def test_line_subcode_of_parity_code(parity9):
    component = line_subcode(parity9, (0, 0, 0), 1)
    assert len(component) == 9
    assert component.order == 3
    assert component.alphabets == ((0, 1, 2),) * 3
    assert component.word_set <= parity9.word_set
    assert verify_subcode(component).ok


def test_line_subcode_rejects_bad_input(parity9):
    with pytest.raises(ConstructionError):
        line_subcode(parity9, (0, 0, 1), 1)
    with pytest.raises(ConstructionError):
        line_subcode(parity9, (0, 0, 0), 0)
    with pytest.raises(ConstructionError):
        line_subcode(switched_code(), (0, 0, 0, 0), 1)


def test_subcodes_through_a_word(parity9):
    components = subcodes_through(parity9, (1, 2, 0))
    assert len(components) == 4
    for i, a in enumerate(components):
        for b in components[i + 1:]:
            assert a.word_set & b.word_set == {(1, 2, 0)}


def test_line_subcodes_have_admissible_order(distance3, rng):
    reps = distance3.linear.field.direction_representatives
    for _ in range(100):
        anchor = distance3.words[int(rng.integers(len(distance3)))]
        component = line_subcode(distance3, anchor, reps[int(rng.integers(len(reps)))])
        assert verify_subcode(component).ok
        assert subcode_order_admissible(distance3.q, distance3.rho, distance3.d, component.order)


def test_type1_switch_keeps_mds(parity9):
    component = line_subcode(parity9, (0, 0, 0), 1)
    switched = switch_type1(parity9, component, 1)
    assert verify_mds(switched).ok
    assert not switched.same_words(parity9)
    assert len(parity9.word_set - switched.word_set) == 9
    assert switch_type1(parity9, component, 0) is parity9


def test_reflection_fixes_the_centre(distance3):
    component = line_subcode(distance3, distance3.words[7], 1)
    image = switched_component(component, 2, 0, -1)
    assert len(component.word_set & image.word_set) == 3
    assert verify_mds(switch_affine(distance3, component, 2, 0, -1)).ok
    with pytest.raises(ConstructionError):
        switched_component(component, 2, 1, 0)


def test_exchange(parity9):
    component = line_subcode(parity9, (0, 0, 0), 1)
    image = switched_component(component, 0, 1)
    assert exchange(parity9, component, image.words).same_words(switch_type1(parity9, component, 1))
    outside = component.words.copy()
    outside[:, 0] = 5
    with pytest.raises(ConstructionError):
        exchange(parity9, component, outside)
    flat = component.words.copy()
    flat[:, 2] = 0
    with pytest.raises(VerificationError):
        exchange(parity9, component, flat)


def test_select_disjoint(parity9):
    components = select_disjoint(parity9, 3, seed=5)
    assert len(components) == 3
    seen = set()
    for component in components:
        assert seen.isdisjoint(component.word_set)
        seen |= component.word_set
    assert [c.anchor for c in select_disjoint(parity9, 3, seed=5)] == [c.anchor for c in components]


def test_select_disjoint_reports_shortfall(parity9):
    with pytest.raises(BudgetNotReachedError) as info:
        select_disjoint(parity9, 10)
    assert len(info.value.selected) <= 9


def test_enumerate_all_assignments(parity9):
    components = select_disjoint(parity9, 2)
    results = list(enumerate_switched(parity9, components, 8))
    assert len(results) == 8
    assert len({assignment for assignment, _ in results}) == 8
    word_sets = {code.word_set for _, code in results}
    assert len(word_sets) == 8
    assert parity9.word_set not in word_sets
    for _, code in results:
        assert verify_mds(code).ok


def test_enumerate_sampled_assignments(distance3):
    components = select_disjoint(distance3, 3, seed=11)
    results = list(enumerate_switched(distance3, components, 5, seed=11))
    assert len(results) == 5
    assert all(any(assignment) for assignment, _ in results)
    assert all(verify_mds(code).ok for _, code in results)


def test_enumerate_rejects_bad_requests(parity9):
    components = select_disjoint(parity9, 2)
    with pytest.raises(ConstructionError):
        list(enumerate_switched(parity9, components, 9))
    with pytest.raises(ConstructionError):
        list(enumerate_switched(parity9, [components[0], components[0]], 1))


def test_lower_bound_values():
    result = lower_bound(2, 8, 3, 2, Fraction(1, 8))
    assert result.t == 1792
    assert result.w == 262144
    assert not result.vacuous
    assert result.ln_bound > 0
    assert lower_bound(2, 8, 3, 2, 0.125).t == 1792
    assert lower_bound(2, 8, 3, 2, "1/8").t == 1792
    assert lower_bound(2, 8, 3, 2).t == 1792


def test_lower_bound_vacuous():
    result = lower_bound(3, 1, 3, 2, Fraction(1, 2))
    assert result.t == 0
    assert result.vacuous
    assert result.ln_bound == 0.0


def test_lower_bound_rejects():
    with pytest.raises(ConstructionError):
        lower_bound(2, 3, 4, 3)
    with pytest.raises(ValueError):
        lower_bound(2, 8, 3, 2, 0)
    with pytest.raises(ValueError):
        lower_bound(3, 1, 3, 2)


def test_example_code_is_switchable():
    code = first_code()
    assert code.linear.over_prime_subfield
    assert verify_mds(code).ok
    assert np.array_equal(code.linear.generator, [[1, 0, 1, 2], [0, 1, 1, 1]])


def test_switching_is_an_involution(parity9, gf9):
    component = line_subcode(parity9, (1, 2, 0), 3)
    image = switched_component(component, 0, 1)
    switched = switch_type1(parity9, component, 1)
    assert switch_type1(switched, image, 2).same_words(parity9)
    added = switched.word_set - parity9.word_set
    assert added == image.word_set
    step = gf9.mul(1, component.direction)
    shifted = {(gf9.add(w[0], step),) + w[1:] for w in component.word_set}
    assert added == shifted


def test_random_plans_keep_mds(parity9, rng):
    codes = [parity9, linear_mds(Field(2, 3), 3, 2), linear_mds(Field(2, 3), 4, 2)]
    for _ in range(100):
        code = codes[int(rng.integers(len(codes)))]
        field = code.linear.field
        reps = field.direction_representatives
        anchor = code.words[int(rng.integers(len(code)))]
        component = line_subcode(code, anchor, reps[int(rng.integers(len(reps)))])
        alpha = int(rng.integers(1, field.p))
        switched = switch_type1(code, component, alpha)
        assert verify_mds(switched).ok
        assert len(code.word_set - switched.word_set) == len(component)


def test_three_components_give_distinct_codes(distance3):
    components = select_disjoint(distance3, 3, seed=4)
    codes = [code.word_set for _, code in enumerate_switched(distance3, components, 26)]
    assert len(set(codes)) == 26


def test_line_subcode_total(parity9):
    reps = parity9.linear.field.direction_representatives
    found = {line_subcode(parity9, w, v).word_set for w in parity9.words.tolist() for v in reps}
    assert len(found) == 81 * 4 // 9


def test_lower_bound_against_integers():
    tuples = [(2, 8, 3, 2), (2, 6, 3, 2), (3, 4, 3, 2), (3, 3, 4, 3), (5, 2, 6, 4),
              (5, 3, 5, 5), (7, 2, 8, 4), (2, 10, 4, 4), (3, 5, 3, 3), (7, 3, 4, 2)]
    for p, k, d, rho in tuples:
        eps = Fraction(1, k + 1)
        m = d - rho + 1
        subcodes = p ** (k * (1 + m) - 1)
        t = ((eps.denominator - eps.numerator) * subcodes) // (eps.denominator * p ** (2 * m + k))
        result = lower_bound(p, k, d, rho, eps)
        assert result.t == t
        assert result.w == Fraction(eps.numerator * subcodes, eps.denominator * p ** m)
        assert result.vacuous == (t < 1)


def test_lower_bound_grows_with_k():
    values = [lower_bound(2, k, 3, 2, Fraction(1, 8)).ln_bound for k in range(6, 13)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_bound_at_order_16():
    result = lower_bound(2, 4, 3, 2, Fraction(1, 4))
    assert result.t == 6
    assert result.w == 128
    assert not result.vacuous
