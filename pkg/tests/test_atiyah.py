"""The symmetry groupoid over the shadow bundle and its exact sequence."""

import pytest

from groupoidal import (AtiyahGroupoid, AdjointBundle, CompositionError,
                        MomentMismatch, enumerate_projectable_bisections,
                        validate_groupoid, verify_atiyah_sequence,
                        verify_trident)
from groupoidal.atiyah import AtElement


@pytest.fixture(scope="module")
def at(three_point_bundle):
    return AtiyahGroupoid(three_point_bundle)


@pytest.fixture(scope="module")
def adjoint(three_point_bundle):
    return AdjointBundle(three_point_bundle)


def test_element_count(at, adjoint, three_point_bundle):
    # |Sigma|^2 base pairs, one copy of the fibre groupoid each
    assert len(at.elements) == 9 * three_point_bundle.groupoid.n_arrows == 36
    assert len(adjoint.elements) == 3 * three_point_bundle.groupoid.n_arrows == 12


def test_is_a_groupoid_over_shadow_points(at):
    fg = at.as_finite_groupoid()
    assert fg.n_objects == 6
    assert fg.n_arrows == 36
    assert validate_groupoid(fg).ok


def test_canonicalization(at, three_point_bundle):
    bundle = three_point_bundle
    g = bundle.groupoid
    # resolve an element over (b, b) in charts (1, 1); both ends transport
    a = g.arrow_index(("e", 0))
    e = at.canonical("b", 1, a, "b", 1)
    assert e.chart_i == 0 and e.chart_j == 0
    direct = at.canonical("b", 0, g.arrow_index(("e", 0)), "b", 0)
    # transporting both ends by the swap conjugates the arrow
    from groupoidal import conjugate
    swap = bundle.cocycle.beta(0, 1, "b")
    assert e.arrow == conjugate(swap, a)
    assert direct.arrow == a


def test_structure_map_guards(at):
    e = at.elements[0]
    bad = next(x for x in at.elements if at.target(x) != at.source(e))
    with pytest.raises(CompositionError):
        at.multiply(e, bad)
    p_bad = next(p for p in at.bundle.points
                 if at.bundle.sitting_duck(p) != at.source(e))
    with pytest.raises(MomentMismatch):
        at.act_on_bundle(e, p_bad)


def test_sequence_exact(three_point_bundle, at, adjoint):
    assert verify_atiyah_sequence(three_point_bundle, at, adjoint).ok


def test_adjoint_canonicalization(adjoint, three_point_bundle):
    bundle = three_point_bundle
    g = bundle.groupoid
    from groupoidal import conjugate
    swap = bundle.cocycle.beta(0, 1, "b")
    for a in g.arrows:
        e = adjoint.canonical("b", 1, a)
        assert e.chart == 0
        assert e.arrow == conjugate(swap, a)


def test_trident(three_point_bundle, at):
    assert verify_trident(three_point_bundle, at).ok


def test_division_is_action_inverse(three_point_bundle, at):
    bundle = three_point_bundle
    for p1 in bundle.points:
        for p2 in bundle.points:
            if bundle.moment(p1) != bundle.moment(p2):
                continue
            e = at.division(p1, p2)
            assert at.act_on_bundle(e, p2) == p1


def test_orbits_of_full_action_cover_fibre_classes(three_point_bundle, at):
    # acting with every element reaches every point with the same moment
    bundle = three_point_bundle
    p0 = bundle.points[0]
    reached = {at.act_on_bundle(e, p0) for e in at.elements
               if at.source(e) == bundle.sitting_duck(p0)}
    expected = {p for p in bundle.points
                if bundle.moment(p) == bundle.moment(p0)}
    assert reached == expected


def test_projectable_bisections(three_point_bundle, at):
    projectable, vertical = enumerate_projectable_bisections(
        three_point_bundle, at)
    # every projectable bisection covers one of the 3! base bijections
    assert len(projectable) == 48
    assert len(vertical) == 8
    for b in vertical:
        for k, fp in enumerate(three_point_bundle.shadow_points):
            assert at.elements[b(k)].sigma1 == fp.sigma
