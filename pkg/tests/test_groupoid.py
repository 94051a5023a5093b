"""Axiom validation and the stock constructors."""

import pytest
from hypothesis import given, strategies as st

from groupoidal import (CompositionError, FiniteGroupoid, StructuralError,
                        action_groupoid, fibred_pair_groupoid, group_groupoid,
                        pair_groupoid, product_groupoid, construct_standard,
                        validate_groupoid, z2_swap_action)


def test_z2_action_groupoid_shape(z2_groupoid):
    g = z2_groupoid
    assert g.n_objects == 2
    assert g.n_arrows == 4
    assert validate_groupoid(g).ok
    # arrow (r, 0) runs 0 -> 1
    a = g.arrow_index(("r", 0))
    assert g.src[a] == 0 and g.tgt[a] == 1
    # (r, 1).(r, 0) = (e, 0)
    b = g.arrow_index(("r", 1))
    assert g.compose(b, a) == g.arrow_index(("e", 0))


def test_pair_groupoid_valid(pair3):
    assert pair3.n_arrows == 9
    assert validate_groupoid(pair3).ok


@given(st.integers(min_value=1, max_value=4))
def test_pair_groupoid_axioms(n):
    assert validate_groupoid(pair_groupoid(n)).ok


def test_group_groupoid():
    elements = ["e", "r"]
    mult = {("e", "e"): "e", ("e", "r"): "r", ("r", "e"): "r", ("r", "r"): "e"}
    g = group_groupoid(elements, mult, "e", {"e": "e", "r": "r"})
    assert g.n_objects == 1
    assert validate_groupoid(g).ok


def test_fibred_pair_groupoid():
    g = fibred_pair_groupoid([[0, 1], [2, 3, 4]])
    assert g.n_arrows == 4 + 9
    assert validate_groupoid(g).ok
    a01 = g.arrow_index((0, 1))
    a23 = g.arrow_index((2, 3))
    with pytest.raises(CompositionError):
        g.compose(a01, a23)


def test_product_groupoid(z2_groupoid, pair3):
    g = product_groupoid(z2_groupoid, pair3)
    assert g.n_objects == 6
    assert g.n_arrows == 36
    assert validate_groupoid(g).ok


def test_construct_standard_dispatch(z2_groupoid):
    assert construct_standard("pair", n=2).n_arrows == 4
    assert construct_standard("action", action=z2_swap_action()) == z2_groupoid
    with pytest.raises(StructuralError):
        construct_standard("nonsense")


def test_non_composable_raises(z2_groupoid):
    g = z2_groupoid
    a = g.arrow_index(("r", 0))  # 0 -> 1
    with pytest.raises(CompositionError):
        g.compose(a, a)


def test_corrupted_inverse_detected(z2_groupoid):
    g = z2_groupoid
    bad_inv = list(g.inv)
    bad_inv[0], bad_inv[2] = bad_inv[2], bad_inv[0]
    bad = FiniteGroupoid(g.n_objects, g.src, g.tgt, g.unit, bad_inv, g.mul)
    report = validate_groupoid(bad)
    assert not report.ok
    assert any(v.check.startswith("iv:") for v in report.violations)


def test_missing_product_detected(pair3):
    g = pair3
    mul = dict(g.mul)
    key = next(iter(mul))
    del mul[key]
    bad = FiniteGroupoid(g.n_objects, g.src, g.tgt, g.unit, g.inv, mul)
    report = validate_groupoid(bad)
    assert any(v.check == "i:mul-total" and v.witness == key
               for v in report.violations)


def test_extra_product_detected(z2_groupoid):
    g = z2_groupoid
    a = g.arrow_index(("r", 0))
    mul = dict(g.mul)
    mul[(a, a)] = a
    bad = FiniteGroupoid(g.n_objects, g.src, g.tgt, g.unit, g.inv, mul)
    assert any(v.check == "i:mul-domain" for v in validate_groupoid(bad).violations)


def test_out_of_range_table_rejected():
    with pytest.raises(StructuralError):
        FiniteGroupoid(1, [0], [0], [5], [0], {})


@given(st.integers(min_value=1, max_value=4))
def test_json_round_trip(n):
    g = pair_groupoid(n)
    assert FiniteGroupoid.from_json(g.to_json()) == g


def test_json_rejects_sparse_ids(z2_groupoid):
    doc = z2_groupoid.to_json()
    doc["arrows"][0]["id"] = 99
    with pytest.raises(StructuralError):
        FiniteGroupoid.from_json(doc)


def test_validation_collects_all_violations(z2_groupoid):
    g = z2_groupoid
    bad_unit = [g.unit[1], g.unit[0]]
    bad = FiniteGroupoid(g.n_objects, g.src, g.tgt, bad_unit, g.inv, g.mul)
    report = validate_groupoid(bad)
    # both unit-src checks fail, and neither stops the other
    witnesses = {v.witness for v in report.violations if v.check == "iii:unit-src"}
    assert witnesses == {0, 1}
