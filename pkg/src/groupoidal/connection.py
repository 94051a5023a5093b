"""Local connection data on action-groupoid scenarios, and everything that
hangs off it: the gluing law, the vertical projectors, Christoffel forms,
parallel transport, gauge transformations, and covariant derivatives.

All Lie-algebra values are plain matrices, identified across fibres by right
translation at the unit.  Derivatives are central finite differences with
the scenario's step unless a closed form is exact.
"""

import numpy as np

from .report import StructuralError
from .scenario import BisectionFamily, NumericFailure


def mc_right(scenario, fam, m, sigma, u):
    """Right-logarithmic base derivative (d_u g(sigma, m)) g(sigma, m)^{-1}."""
    sigma = np.asarray(sigma, dtype=float)
    u = np.asarray(u, dtype=float)
    h = scenario.fd_step
    dg = (fam(sigma + h * u, m) - fam(sigma - h * u, m)) / (2 * h)
    return dg @ np.linalg.inv(fam(sigma, m))


def tangent_conjugation(scenario, b, m, X):
    """The derivative of conjugation by the bisection b at the unit over m.

    Computed from the full conjugated curve t -> b(exp(tX).m) exp(tX) b(m)^{-1};
    the result is attached at the shadow point b(m).m.
    """
    m = np.asarray(m, dtype=float)
    h = scenario.fd_step
    gminv = np.linalg.inv(b(m))

    def curve(t):
        e = scenario.exp(t * X)
        return b(e @ m) @ e @ gminv

    return (curve(h) - curve(-h)) / (2 * h)


def tangent_conjugation_split(scenario, b, m, X):
    """The same map as the sum Ad_{b(m)} X + (d_{X.m} b) b(m)^{-1}."""
    m = np.asarray(m, dtype=float)
    h = scenario.fd_step
    g = b(m)
    v = X @ m
    db = (b(m + h * v) - b(m - h * v)) / (2 * h)
    return g @ X @ np.linalg.inv(g) + db @ np.linalg.inv(g)


def anchor(scenario, m, X):
    """The infinitesimal action: rho(X)(m) = X.m."""
    return np.asarray(X) @ np.asarray(m, dtype=float)


def algebroid_bracket(scenario, s1, s2):
    """The bracket of sections m -> g, for the right-translation framing.

    Pointwise matrix commutator plus the anchor-directional derivatives of
    the coefficient fields.
    """
    h = scenario.fd_step

    def out(m):
        m = np.asarray(m, dtype=float)
        a, b = s1(m), s2(m)
        v1, v2 = a @ m, b @ m
        d2 = (s2(m + h * v1) - s2(m - h * v1)) / (2 * h)
        d1 = (s1(m + h * v2) - s1(m - h * v2)) / (2 * h)
        return a @ b - b @ a + d2 - d1

    return out


class LocalConnectionData:
    """Per-chart fields A_i(sigma, m)(u), linear in u."""

    def __init__(self, scenario, fields):
        self.scenario = scenario
        self.fields = list(fields)

    def __call__(self, i, sigma, m, u):
        return self.fields[i](np.asarray(sigma, dtype=float),
                              np.asarray(m, dtype=float),
                              np.asarray(u, dtype=float))


def zero_connection(scenario):
    z = np.zeros((scenario.n, scenario.n))
    return LocalConnectionData(
        scenario, [lambda s, m, u: z for _ in scenario.charts])


def gluing_residual(scenario, A, i, j, sigma, m, u):
    """Norm of A_i(sigma, b|>m)(u) - TC_b(A_j(sigma, m)(u)) + mc(b; m, sigma, u)
    for b = beta_ij(sigma); zero exactly when the data glue."""
    sigma = np.asarray(sigma, dtype=float)
    if not (scenario.charts[i].contains(sigma)
            and scenario.charts[j].contains(sigma)):
        raise StructuralError("sigma outside the (i, j) overlap")
    fam = scenario.beta(i, j)
    b = fam.at(sigma)
    lhs = A(i, sigma, fam.shadow(sigma, m), u)
    mid = tangent_conjugation(scenario, b, m, A(j, sigma, m, u))
    return np.linalg.norm(lhs - mid + mc_right(scenario, fam, m, sigma, u))


def construct_connection(scenario, partition=None, check_partition=True):
    """Glue the flat chart data through a partition of unity.

    The flat datum of chart k, read in chart j, is the tangent-conjugation
    transport of the Maurer-Cartan derivative of beta_kj; the convex
    combination satisfies the gluing law because the law is affine with a
    shared inhomogeneous term.
    """
    partition = partition if partition is not None else scenario.partition
    if partition is None or len(partition) != len(scenario.charts):
        raise StructuralError("need one partition function per chart")
    if check_partition:
        rng = np.random.default_rng(0)
        for c in scenario.charts:
            s = c.sample(rng)
            total = sum(h(s) for k, h in enumerate(partition)
                        if scenario.charts[k].contains(s))
            if abs(total - 1.0) > 1e-9:
                raise StructuralError("partition does not sum to 1")

    def field(j):
        def A_j(sigma, m, u):
            out = np.zeros((scenario.n, scenario.n))
            for k in range(len(scenario.charts)):
                if k == j or not scenario.charts[k].contains(sigma):
                    continue
                w = partition[k](sigma)
                if w == 0.0:
                    continue
                fam_kj = scenario.beta(k, j)
                m_k = fam_kj.shadow(sigma, m)
                X = mc_right(scenario, fam_kj, m, sigma, u)
                out += w * tangent_conjugation(
                    scenario, scenario.beta(j, k).at(sigma), m_k, X)
            return out
        return A_j

    return LocalConnectionData(scenario, [field(j) for j in
                                          range(len(scenario.charts))])


def apply_theta(scenario, A, i, sigma, point, tangent):
    """The vertical projector on chart tangents (u, adot, mdot)."""
    a, m = point
    u, adot, mdot = tangent
    corr = A(i, sigma, np.asarray(a) @ np.asarray(m, dtype=float), u) @ a
    return (np.zeros_like(np.asarray(u, dtype=float)), adot + corr, mdot)


def christoffel(scenario, A, i, sigma, point, u):
    """Right-translated connection value: the horizontal-lift ODE right side
    is minus this."""
    a, m = point
    return (A(i, sigma, np.asarray(a) @ np.asarray(m, dtype=float), u) @ a,
            np.zeros(scenario.n))


class BasePath:
    """A piecewise-smooth base path with a chart itinerary.

    Segments are (chart, sigma(t), dsigma(t), t0, t1) with matching
    endpoints; each segment stays inside its chart.
    """

    def __init__(self, segments):
        self.segments = list(segments)

    @classmethod
    def polyline(cls, waypoints, charts):
        """Straight segments between consecutive waypoints, one chart each."""
        segs = []
        for k, chart in enumerate(charts):
            p = np.asarray(waypoints[k], dtype=float)
            q = np.asarray(waypoints[k + 1], dtype=float)
            segs.append((chart,
                         (lambda p, q: lambda t: p + t * (q - p))(p, q),
                         (lambda p, q: lambda t: q - p)(p, q),
                         0.0, 1.0))
        return cls(segs)


def parallel_transport(scenario, A, path, start, step=1e-3):
    """Horizontal lift along the path by classical Runge-Kutta.

    The fibre label m never moves; the group part solves
    da/dt = -A_i(sigma(t), a.m)(dsigma) a, with chart switches by left
    multiplication with the cocycle value.  Returns ((a, m), shadow endpoint).
    """
    a, m = start
    a = np.asarray(a, dtype=float)
    m = np.asarray(m, dtype=float)
    chart = path.segments[0][0]
    for (i, sig, dsig, t0, t1) in path.segments:
        if i != chart:
            a = scenario.beta(i, chart)(sig(t0), a @ m) @ a
            chart = i

        def rhs(t, a):
            return -A(i, sig(t), a @ m, dsig(t)) @ a

        n_steps = max(1, int(round((t1 - t0) / step)))
        h = (t1 - t0) / n_steps
        t = t0
        for _ in range(n_steps):
            k1 = rhs(t, a)
            k2 = rhs(t + h / 2, a + h / 2 * k1)
            k3 = rhs(t + h / 2, a + h / 2 * k2)
            k4 = rhs(t + h, a + h * k3)
            a = a + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            t += h
        if not np.all(np.isfinite(a)):
            raise NumericFailure("transport diverged")
    return (a, m), a @ m


def shadow_theta(scenario, A, i, sigma, m, tangent):
    """The induced vertical projector on shadow tangents (u, w)."""
    u, w = tangent
    return (np.zeros_like(np.asarray(u, dtype=float)),
            np.asarray(w, dtype=float) + A(i, sigma, m, u) @ np.asarray(m, dtype=float))


def gauge_transform_connection(scenario, A, gauge, base_map=None):
    """Transform the local data by per-chart bisection families gamma_i.

    The new field at the displaced fibre label is the tangent-conjugation
    image of the old one minus the Maurer-Cartan derivative of gamma_i; an
    optional (f, f_inv, Tf_inv) triple composes a base diffeomorphism.
    """
    def field(i):
        fam = gauge[i]

        def A_phi(tau, mp, u):
            if base_map is None:
                sigma = tau
            else:
                f, f_inv, tf_inv = base_map
                sigma = np.asarray(f_inv(tau), dtype=float)
                u = np.asarray(tf_inv(tau, u), dtype=float)
            m = fam.shadow_inv(sigma, mp)
            val = tangent_conjugation(scenario, fam.at(sigma), m,
                                      A(i, sigma, m, u))
            return val - mc_right(scenario, fam, m, sigma, u)
        return A_phi

    return LocalConnectionData(scenario,
                               [field(i) for i in range(len(scenario.charts))])


def inverse_gauge(scenario, gauge):
    """The pointwise inverse families gamma_i(sigma)^{-1}."""
    out = {}
    for i, fam in gauge.items():
        def g(sigma, mp, fam=fam):
            m = fam.shadow_inv(sigma, mp)
            return np.linalg.inv(fam(sigma, m))
        out[i] = BisectionFamily(g, constant_in_m=fam.constant_in_m)
    return out


def covariant_derivative(scenario, A, phi, i, sigma, u):
    """d_u phi + rho(A_i(sigma, phi(sigma))(u)) at phi(sigma)."""
    sigma = np.asarray(sigma, dtype=float)
    u = np.asarray(u, dtype=float)
    h = scenario.fd_step
    m = np.asarray(phi(sigma), dtype=float)
    dphi = (np.asarray(phi(sigma + h * u), dtype=float)
            - np.asarray(phi(sigma - h * u), dtype=float)) / (2 * h)
    return dphi + A(i, sigma, m, u) @ m
