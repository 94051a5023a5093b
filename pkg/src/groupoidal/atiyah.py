"""The symmetry groupoid of a glued bundle, over its shadow bundle.

Elements are classes of (sigma1, g, sigma2) resolved in a pair of charts;
canonical form uses the least chart at both ends, transporting the arrow by
left multiplication at the source-1 end and right multiplication at the
sigma2 end.  A single helper owns that transport formula.

The kernel of the projection onto the pair groupoid of the base is the
conjugation-glued bundle of fibres, and the whole structure acts on the
bundle and its shadow from the left.
"""

from collections import namedtuple

from .bisection import left_mult, right_mult, conjugate
from .bundle import FPoint, PPoint, MomentMismatch
from .groupoid import FiniteGroupoid
from .report import CompositionError, EnumerationBound, ValidationReport

AtElement = namedtuple("AtElement", ["sigma1", "chart_i", "arrow", "sigma2", "chart_j"])
AdElement = namedtuple("AdElement", ["sigma", "chart", "arrow"])


class AtiyahGroupoid:
    """All canonical elements, with the structure maps over shadow points."""

    def __init__(self, bundle):
        self.bundle = bundle
        g = bundle.groupoid
        self.elements = [
            AtElement(s1, bundle.base.canonical_chart(s1), a,
                      s2, bundle.base.canonical_chart(s2))
            for s1 in bundle.base.base for s2 in bundle.base.base for a in g.arrows]
        self._index = {e: k for k, e in enumerate(self.elements)}

    def canonical(self, sigma1, chart_k, arrow, sigma2, chart_l):
        """Transport (sigma1, arrow, sigma2) from charts (k, l) to canonical.

        The class representative in charts (i, j) carries the arrow
        beta_ik(sigma1) |> arrow <| beta_lj(sigma2).
        """
        base = self.bundle.base
        i = base.canonical_chart(sigma1)
        j = base.canonical_chart(sigma2)
        a = arrow
        if i != chart_k:
            a = left_mult(self.bundle.cocycle.beta(i, chart_k, sigma1), a)
        if j != chart_l:
            a = right_mult(a, self.bundle.cocycle.beta(chart_l, j, sigma2))
        return AtElement(sigma1, i, a, sigma2, j)

    def index(self, e):
        return self._index[e]

    def source(self, e):
        return FPoint(e.sigma2, e.chart_j, self.bundle.groupoid.src[e.arrow])

    def target(self, e):
        return FPoint(e.sigma1, e.chart_i, self.bundle.groupoid.tgt[e.arrow])

    def unit(self, f):
        return AtElement(f.sigma, f.chart, self.bundle.groupoid.unit[f.obj],
                         f.sigma, f.chart)

    def invert(self, e):
        return AtElement(e.sigma2, e.chart_j, self.bundle.groupoid.inv[e.arrow],
                         e.sigma1, e.chart_i)

    def multiply(self, e1, e2):
        if self.source(e1) != self.target(e2):
            raise CompositionError("source/target mismatch in symmetry groupoid")
        arrow = self.bundle.groupoid.compose(e1.arrow, e2.arrow)
        return AtElement(e1.sigma1, e1.chart_i, arrow, e2.sigma2, e2.chart_j)

    def project(self, e):
        """The arrow (sigma1, sigma2) of the pair groupoid of the base."""
        return (e.sigma1, e.sigma2)

    def act_on_bundle(self, e, p):
        """Left action on bundle points: [(s1,g,s2)] . [(s2,h)] = [(s1,g.h)]."""
        if self.source(e) != self.bundle.sitting_duck(p):
            raise MomentMismatch("element source differs from the duck of the point")
        return PPoint(e.sigma1, e.chart_i,
                      self.bundle.groupoid.compose(e.arrow, p.arrow))

    def act_on_shadow(self, e, f):
        if self.source(e) != f:
            raise MomentMismatch("element source differs from the shadow point")
        return self.target(e)

    def division(self, p1, p2):
        """The element carrying p2 to p1: locally g1 . g2^{-1}."""
        g = self.bundle.groupoid
        if self.bundle.moment(p1) != self.bundle.moment(p2):
            raise MomentMismatch("moments differ")
        return AtElement(p1.sigma, p1.chart,
                         g.compose(p1.arrow, g.inv[p2.arrow]),
                         p2.sigma, p2.chart)

    def as_finite_groupoid(self):
        """The element set as a plain finite groupoid over shadow points."""
        fpoints = self.bundle.shadow_points
        findex = {f: k for k, f in enumerate(fpoints)}
        src = [findex[self.source(e)] for e in self.elements]
        tgt = [findex[self.target(e)] for e in self.elements]
        unit = [self._index[self.unit(f)] for f in fpoints]
        inv = [self._index[self.invert(e)] for e in self.elements]
        mul = {}
        for k1, e1 in enumerate(self.elements):
            for k2, e2 in enumerate(self.elements):
                if self.source(e1) == self.target(e2):
                    mul[(k1, k2)] = self._index[self.multiply(e1, e2)]
        return FiniteGroupoid(len(fpoints), src, tgt, unit, inv, mul,
                              arrow_labels=self.elements, object_labels=fpoints)


def build_atiyah(bundle):
    return AtiyahGroupoid(bundle)


class AdjointBundle:
    """The conjugation-glued bundle of groupoid fibres."""

    def __init__(self, bundle):
        self.bundle = bundle
        self.elements = [AdElement(sigma, bundle.base.canonical_chart(sigma), a)
                         for sigma in bundle.base.base
                         for a in bundle.groupoid.arrows]

    def canonical(self, sigma, chart, arrow):
        """(sigma, arrow, chart) glued by conjugation into the least chart."""
        i = self.bundle.base.canonical_chart(sigma)
        if i == chart:
            return AdElement(sigma, i, arrow)
        b = self.bundle.cocycle.beta(i, chart, sigma)
        return AdElement(sigma, i, conjugate(b, arrow))

    def embed(self, e):
        """The injection into the symmetry groupoid over the unit pair."""
        return AtElement(e.sigma, e.chart, e.arrow, e.sigma, e.chart)

    def project_source(self, e):
        return FPoint(e.sigma, e.chart, self.bundle.groupoid.src[e.arrow])


def build_adjoint(bundle):
    return AdjointBundle(bundle)


def verify_atiyah_sequence(bundle, at=None, adjoint=None):
    """Exactness over the pair groupoid of the base, checked element by element."""
    at = at or AtiyahGroupoid(bundle)
    adjoint = adjoint or AdjointBundle(bundle)
    report = ValidationReport()
    pairs = {(s1, s2) for s1 in bundle.base.base for s2 in bundle.base.base}
    report.record("sequence:surjective",
                  {at.project(e) for e in at.elements} == pairs)
    for e1 in at.elements:
        for e2 in at.elements:
            if at.source(e1) != at.target(e2):
                continue
            prod = at.multiply(e1, e2)
            report.record("sequence:morphism",
                          at.project(prod) == (e1.sigma1, e2.sigma2), (e1, e2))
    kernel = {e for e in at.elements if e.sigma1 == e.sigma2}
    image = {adjoint.embed(e) for e in adjoint.elements}
    report.record("sequence:kernel", kernel == image)
    report.record("sequence:embedding-injective",
                  len(image) == len(adjoint.elements))
    for s1 in bundle.base.base:
        for s2 in bundle.base.base:
            fibre = [e for e in at.elements if at.project(e) == (s1, s2)]
            report.record("sequence:fibre-size",
                          len(fibre) == bundle.groupoid.n_arrows, (s1, s2))
    return report


def verify_trident(bundle, at=None):
    """The commuting pair of actions on the bundle, both of them principal."""
    at = at or AtiyahGroupoid(bundle)
    g = bundle.groupoid
    report = ValidationReport()
    for e in at.elements:
        for p in bundle.points:
            if at.source(e) != bundle.sitting_duck(p):
                continue
            q = at.act_on_bundle(e, p)
            report.record("trident:covers-pair",
                          (q.sigma, p.sigma) == at.project(e), (e, p))
            report.record("trident:duck-of-action",
                          bundle.sitting_duck(q) == at.target(e), (e, p))
            report.record("trident:moment-invariant",
                          bundle.moment(q) == bundle.moment(p), (e, p))
            report.record("trident:shadow-intertwines",
                          at.act_on_shadow(e, bundle.sitting_duck(p))
                          == bundle.sitting_duck(q), (e, p))
            for h in g.target_fibre(bundle.moment(p)):
                lhs = at.act_on_bundle(e, bundle.right_action(p, h))
                rhs = bundle.right_action(q, h)
                report.record("trident:actions-commute", lhs == rhs, (e, p, h))
            report.record("trident:division-inverts",
                          at.division(q, p) == e, (e, p))
    for p1 in bundle.points:
        for p2 in bundle.points:
            if bundle.moment(p1) != bundle.moment(p2):
                continue
            e = at.division(p1, p2)
            report.record("trident:act-after-division",
                          at.act_on_bundle(e, p2) == p1, (p1, p2))
    for p in bundle.points:
        f = bundle.sitting_duck(p)
        report.record("trident:unit-acts-trivially",
                      at.act_on_bundle(at.unit(f), p) == p, p)
    return report


def enumerate_projectable_bisections(bundle, at=None, cap=1_000_000):
    """Bisections of the symmetry groupoid that cover a base bijection.

    Returns (projectable, vertical): bisections whose projection sends every
    shadow point over sigma to a fixed f(sigma), and the subset with f = id.
    """
    from .bisection import enumerate_bisections

    at = at or AtiyahGroupoid(bundle)
    fg = at.as_finite_groupoid()
    try:
        bis = enumerate_bisections(fg, cap=cap)
    except EnumerationBound:
        raise
    fpoints = bundle.shadow_points
    projectable, vertical = [], []
    for b in bis:
        base_map = {}
        ok = True
        for k, f in enumerate(fpoints):
            e = at.elements[b(k)]
            if base_map.setdefault(f.sigma, e.sigma1) != e.sigma1:
                ok = False
                break
        if not ok or len(set(base_map.values())) != len(base_map):
            continue
        projectable.append(b)
        if all(s1 == s for s, s1 in base_map.items()):
            vertical.append(b)
    return projectable, vertical
