"""Matrix-group action scenarios for the numeric connection engine.

A scenario is a matrix Lie group acting linearly on R^n, a base covered by
open boxes, and a cocycle of smooth bisection families on the overlaps.  A
bisection of the action structure is a map m -> g(m); its arrows are pairs
(a, m) with source m and target a.m, and the fibrewise operations below are
the exact arrow formulas, no discretization involved.
"""

import numpy as np
from scipy.linalg import expm

from .report import StructuralError


class NumericFailure(RuntimeError):
    """An iterative numeric step failed to converge."""


class Box:
    """An open axis-aligned box in the base."""

    def __init__(self, intervals):
        self.intervals = [(float(a), float(b)) for a, b in intervals]

    def contains(self, sigma):
        return all(a < x < b for x, (a, b) in zip(sigma, self.intervals))

    def sample(self, rng):
        return np.array([rng.uniform(a, b) for a, b in self.intervals])


class BisectionFamily:
    """A base-parametrized bisection sigma -> (m -> g(sigma, m)).

    The shadow is m -> g(sigma, m).m; its inverse is exact when g does not
    depend on m and is found by Newton iteration otherwise.
    """

    def __init__(self, g, constant_in_m=True):
        self.g = g
        self.constant_in_m = constant_in_m

    def __call__(self, sigma, m):
        return self.g(np.asarray(sigma, dtype=float), np.asarray(m, dtype=float))

    def at(self, sigma):
        sigma = np.asarray(sigma, dtype=float)
        return lambda m: self.g(sigma, np.asarray(m, dtype=float))

    def shadow(self, sigma, m):
        m = np.asarray(m, dtype=float)
        return self(sigma, m) @ m

    def shadow_inv(self, sigma, mp, tol=1e-12, max_iter=50):
        mp = np.asarray(mp, dtype=float)
        if self.constant_in_m:
            return np.linalg.solve(self(sigma, mp), mp)
        m = np.linalg.solve(self(sigma, mp), mp)
        h = 1e-7
        for _ in range(max_iter):
            r = self.shadow(sigma, m) - mp
            if np.linalg.norm(r) < tol:
                return m
            jac = np.empty((len(mp), len(m)))
            for k in range(len(m)):
                dm = np.zeros_like(m)
                dm[k] = h
                jac[:, k] = (self.shadow(sigma, m + dm)
                             - self.shadow(sigma, m - dm)) / (2 * h)
            m = m - np.linalg.solve(jac, r)
        raise NumericFailure("shadow inversion did not converge")


class MatrixGroupScenario:
    """Group data, carrier, covered base, and the overlap cocycle."""

    def __init__(self, name, algebra, n, charts, cocycle, partition=None,
                 fd_step=1e-5):
        self.name = name
        self.algebra = [np.asarray(t, dtype=float) for t in algebra]
        self.n = n
        self.charts = charts
        self.d = len(charts[0].intervals)
        self.cocycle = dict(cocycle)
        self.partition = partition
        self.fd_step = fd_step

    def exp(self, X):
        return expm(X)

    def act(self, g, m):
        return np.asarray(g) @ np.asarray(m, dtype=float)

    def charts_containing(self, sigma):
        return [i for i, c in enumerate(self.charts) if c.contains(sigma)]

    def beta(self, i, j):
        """The family beta_ij; identity on the diagonal."""
        if i == j:
            eye = np.eye(self.n)
            return BisectionFamily(lambda sigma, m: eye)
        if (i, j) in self.cocycle:
            return self.cocycle[(i, j)]
        raise StructuralError("no cocycle family for ({}, {})".format(i, j))


def compose_arrow(arrow1, arrow2):
    """(a1, a2.m).(a2, m) = (a1 a2, m); source of arrow1 must be a2.m."""
    a1, m1 = arrow1
    a2, m2 = arrow2
    if not np.allclose(m1, a2 @ m2):
        raise StructuralError("arrows not composable")
    return (a1 @ a2, m2)


def inv_arrow(arrow):
    a, m = arrow
    ai = np.linalg.inv(a)
    return (ai, a @ m)


def left_mult_arrow(b, arrow):
    """L_b(a, m) = (b(a.m) a, m): the bisection value at the target, composed."""
    a, m = arrow
    return (b(a @ m) @ a, m)


def conjugate_arrow(b, arrow):
    """C_b(a, m) = b(a.m) . (a, m) . b(m)^{-1}."""
    a, m = arrow
    return (b(a @ m) @ a @ np.linalg.inv(b(m)), b(m) @ m)


def smoothstep(x):
    """A smooth 0-to-1 transition on [0, 1], flat at both ends."""
    def f(y):
        return np.exp(-1.0 / y) if y > 0 else 0.0
    return f(x) / (f(x) + f(1.0 - x))


J2 = np.array([[0.0, -1.0], [1.0, 0.0]])
L_X = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
L_Y = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
L_Z = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])


def rot2(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def so2_angle(sigma):
    return sigma[0] + 0.5 * sigma[1]


def so2_angle_grad(u):
    return u[0] + 0.5 * u[1]


def so2_two_chart_scenario(fd_step=1e-5):
    """Rotations of the plane over a 2-dimensional base with two charts
    overlapping in 0.3 < sigma_0 < 0.7; the cocycle is the rotation by a
    base-dependent angle, constant in m."""
    charts = [Box([(-1.0, 0.7), (-1.0, 1.0)]),
              Box([(0.3, 2.0), (-1.0, 1.0)])]
    cocycle = {
        (0, 1): BisectionFamily(lambda s, m: rot2(so2_angle(s))),
        (1, 0): BisectionFamily(lambda s, m: rot2(-so2_angle(s))),
    }

    def h1(sigma):
        return smoothstep((sigma[0] - 0.3) / 0.4)

    partition = [lambda s: 1.0 - h1(s), h1]
    return MatrixGroupScenario("so2-two-chart", [J2], 2, charts, cocycle,
                               partition, fd_step)


def so2_single_chart_scenario(fd_step=1e-5):
    charts = [Box([(-2.0, 2.0), (-2.0, 2.0)])]
    return MatrixGroupScenario("so2-single-chart", [J2], 2, charts, {},
                               [lambda s: 1.0], fd_step)


def so3_two_chart_scenario(fd_step=1e-5):
    """Rotations of R^3 over the same two-chart base; the cocycle mixes two
    generators so the adjoint and Maurer-Cartan terms are nontrivial."""
    charts = [Box([(-1.0, 0.7), (-1.0, 1.0)]),
              Box([(0.3, 2.0), (-1.0, 1.0)])]

    def g01(s, m):
        return expm(s[0] * L_Z + 0.4 * s[1] * L_X)

    cocycle = {
        (0, 1): BisectionFamily(g01),
        (1, 0): BisectionFamily(lambda s, m: np.linalg.inv(g01(s, m))),
    }

    def h1(sigma):
        return smoothstep((sigma[0] - 0.3) / 0.4)

    partition = [lambda s: 1.0 - h1(s), h1]
    return MatrixGroupScenario("so3-two-chart", [L_X, L_Y, L_Z], 3, charts,
                               cocycle, partition, fd_step)
