import pytest

from groupoidal import (Bisection, CechBase, Cocycle, action_groupoid,
                        build_bundle, pair_groupoid, z2_swap_action)


@pytest.fixture(scope="session")
def z2_groupoid():
    return action_groupoid(z2_swap_action())


@pytest.fixture(scope="session")
def pair3():
    return pair_groupoid(3)


@pytest.fixture(scope="session")
def three_point_bundle(z2_groupoid):
    """The running example: base {a,b,c}, two charts overlapping in b,
    glued by the swap bisection."""
    g = z2_groupoid
    base = CechBase(["a", "b", "c"], [["a", "b"], ["b", "c"]])
    beta_r = Bisection(g, [g.arrow_index(("r", 0)), g.arrow_index(("r", 1))])
    cocycle = Cocycle(g, {(0, 1, "b"): beta_r})
    return build_bundle(base, cocycle, g)
