"""Clutching construction of a bundle of groupoid fibres over a finite base.

Given a finite base with a cover and a bisection-valued 1-cocycle on the
overlaps, the total space is the disjoint union of chart products glued by
left multiplication; the shadow bundle is glued by the shadow action.  All
points are stored in canonical form, with the chart equal to the least
cover index containing the base point, so equality is plain tuple equality.
"""

from collections import namedtuple

from .bisection import (Bisection, bisection_inverse, bisection_product,
                        left_mult, right_mult, shadow_inverse, unit_bisection,
                        validate_bisection)
from .report import StructuralError, ValidationReport

PPoint = namedtuple("PPoint", ["sigma", "chart", "arrow"])
FPoint = namedtuple("FPoint", ["sigma", "chart", "obj"])


class MomentMismatch(ValueError):
    """The acting arrow's target differs from the point's moment value."""


class DivisionError(ValueError):
    """Division requested across distinct sitting-duck fibres."""


class CechBase:
    """A finite base set with an indexed open cover."""

    def __init__(self, base, cover):
        self.base = list(base)
        self.cover = [frozenset(chart) for chart in cover]
        if not self.cover or any(not chart for chart in self.cover):
            raise StructuralError("every chart must be nonempty")
        covered = set().union(*self.cover)
        if covered != set(self.base):
            raise StructuralError("cover does not exhaust the base")

    @property
    def n_charts(self):
        return len(self.cover)

    def charts_containing(self, sigma):
        return [i for i, chart in enumerate(self.cover) if sigma in chart]

    def canonical_chart(self, sigma):
        return min(self.charts_containing(sigma))

    def overlap(self, i, j):
        return sorted(self.cover[i] & self.cover[j], key=self.base.index)


class Cocycle:
    """Bisection values beta_ij(sigma) on the overlaps of a cover."""

    def __init__(self, groupoid, entries):
        self.groupoid = groupoid
        self.entries = dict(entries)
        for (i, j, sigma), b in self.entries.items():
            if not isinstance(b, Bisection) or not validate_bisection(groupoid, b):
                raise StructuralError(
                    "cocycle value at {} is not a valid bisection".format((i, j, sigma)))

    def beta(self, i, j, sigma):
        """beta_ij(sigma), falling back to Id on the diagonal and to the
        inverse of the transposed entry when only one direction was given."""
        if (i, j, sigma) in self.entries:
            return self.entries[(i, j, sigma)]
        if i == j:
            return unit_bisection(self.groupoid)
        if (j, i, sigma) in self.entries:
            return bisection_inverse(self.entries[(j, i, sigma)])
        raise StructuralError("no cocycle entry for {}".format((i, j, sigma)))


def validate_cocycle(base, c):
    """All 1-cocycle conditions, with (i, j, k, sigma) witnesses."""
    report = ValidationReport()
    unit = unit_bisection(c.groupoid)
    for i in range(base.n_charts):
        for sigma in base.cover[i]:
            if (i, i, sigma) in c.entries:
                report.record("cocycle:diag", c.entries[(i, i, sigma)] == unit,
                              (i, i, sigma))
    for i in range(base.n_charts):
        for j in range(base.n_charts):
            if i == j:
                continue
            for sigma in base.overlap(i, j):
                prod = bisection_product(c.beta(i, j, sigma), c.beta(j, i, sigma))
                report.record("cocycle:inverse", prod == unit, (i, j, sigma))
    for i in range(base.n_charts):
        for j in range(base.n_charts):
            for k in range(base.n_charts):
                if len({i, j, k}) < 3:
                    continue
                triple = base.cover[i] & base.cover[j] & base.cover[k]
                for sigma in triple:
                    lhs = bisection_product(c.beta(i, j, sigma), c.beta(j, k, sigma))
                    report.record("cocycle:triple", lhs == c.beta(i, k, sigma),
                                  (i, j, k, sigma))
    return report


class PrincipaloidBundle:
    """The glued bundle with groupoid fibres, its shadow, and the actions."""

    def __init__(self, base, cocycle, groupoid, validate=True):
        if validate:
            report = validate_cocycle(base, cocycle)
            if not report.ok:
                raise StructuralError("invalid cocycle: {}".format(report.violations))
        self.base = base
        self.cocycle = cocycle
        self.groupoid = groupoid
        self.points = [PPoint(sigma, base.canonical_chart(sigma), a)
                       for sigma in base.base for a in groupoid.arrows]
        self.shadow_points = [FPoint(sigma, base.canonical_chart(sigma), m)
                              for sigma in base.base for m in groupoid.objects]

    def canonical_point(self, sigma, chart, arrow):
        """Canonical representative of the class of (sigma, arrow, chart)."""
        i = self.base.canonical_chart(sigma)
        if i == chart:
            return PPoint(sigma, i, arrow)
        b = self.cocycle.beta(i, chart, sigma)
        return PPoint(sigma, i, left_mult(b, arrow))

    def canonical_shadow_point(self, sigma, chart, obj):
        i = self.base.canonical_chart(sigma)
        if i == chart:
            return FPoint(sigma, i, obj)
        b = self.cocycle.beta(i, chart, sigma)
        return FPoint(sigma, i, b.shadow()[obj])

    def in_chart(self, p, chart):
        """The fibre coordinate of a canonical point, read in another chart."""
        if chart == p.chart:
            return p.arrow
        b = self.cocycle.beta(chart, p.chart, p.sigma)
        return left_mult(b, p.arrow)

    def moment(self, p):
        return self.groupoid.src[p.arrow]

    def right_action(self, p, h):
        if self.groupoid.tgt[h] != self.moment(p):
            raise MomentMismatch(
                "t(h)={} but moment={}".format(self.groupoid.tgt[h], self.moment(p)))
        return PPoint(p.sigma, p.chart, self.groupoid.compose(p.arrow, h))

    def sitting_duck(self, p):
        return FPoint(p.sigma, p.chart, self.groupoid.tgt[p.arrow])

    def duck_fibre(self, f):
        return [p for p in self.points
                if p.sigma == f.sigma and self.groupoid.tgt[p.arrow] == f.obj]

    def division(self, p1, p2):
        """The unique arrow with right_action(p1, .) == p2; locally g1^{-1}.g2."""
        if self.sitting_duck(p1) != self.sitting_duck(p2):
            raise DivisionError("points lie in distinct sitting-duck fibres")
        return self.groupoid.compose(self.groupoid.inv[p1.arrow], p2.arrow)

    def b_action(self, p, b):
        """The fibrewise right action of a bisection, locally R_beta."""
        return PPoint(p.sigma, p.chart, right_mult(p.arrow, b))

    def induced_b_action(self, p, b):
        """The action induced from the groupoid action: p <| Inv(b^{-1}(mu(p)))."""
        binv = bisection_inverse(b)
        h = self.groupoid.inv[binv(self.moment(p))]
        return self.right_action(p, h)

    def orbit(self, p):
        """The right-action orbit of a point."""
        out = {p}
        for h in self.groupoid.target_fibre(self.moment(p)):
            out.add(self.right_action(p, h))
        return out


def build_bundle(base, cocycle, groupoid):
    return PrincipaloidBundle(base, cocycle, groupoid)


def bundle_to_json(bundle):
    return {
        "base": list(bundle.base.base),
        "cover": [sorted(chart, key=bundle.base.base.index)
                  for chart in bundle.base.cover],
        "groupoid": bundle.groupoid.to_json(),
        "cocycle": [{"i": i, "j": j, "sigma": sigma, "bisection": b.to_json()}
                    for (i, j, sigma), b in sorted(bundle.cocycle.entries.items(),
                                                   key=lambda kv: repr(kv[0]))],
    }


def bundle_from_json(doc):
    from .groupoid import FiniteGroupoid
    try:
        base = CechBase(doc["base"], doc["cover"])
        groupoid = FiniteGroupoid.from_json(doc["groupoid"])
        entries = {(e["i"], e["j"], e["sigma"]):
                   Bisection.from_json(groupoid, e["bisection"])
                   for e in doc["cocycle"]}
    except (KeyError, TypeError) as exc:
        raise StructuralError("malformed bundle document: {}".format(exc))
    return PrincipaloidBundle(base, Cocycle(groupoid, entries), groupoid)


def verify_principal_axioms(bundle):
    """Exhaustive check of the module axioms and the principality bijection."""
    g = bundle.groupoid
    report = ValidationReport()
    for p in bundle.points:
        mu = bundle.moment(p)
        report.record("GrM2:unit", bundle.right_action(p, g.unit[mu]) == p, p)
        for h in g.target_fibre(mu):
            q = bundle.right_action(p, h)
            report.record("GrM1:moment", bundle.moment(q) == g.src[h], (p, h))
            report.record("PGr2:duck-invariant",
                          bundle.sitting_duck(q) == bundle.sitting_duck(p), (p, h))
            for k in g.target_fibre(g.src[h]):
                report.record(
                    "GrM3:assoc",
                    bundle.right_action(q, k)
                    == bundle.right_action(p, g.compose(h, k)),
                    (p, h, k))
    for f in bundle.shadow_points:
        fibre = bundle.duck_fibre(f)
        for p1 in fibre:
            for p2 in fibre:
                d = bundle.division(p1, p2)
                report.record("PGr3:div-target",
                              g.tgt[d] == bundle.moment(p1), (p1, p2))
                report.record("PGr3:div-act",
                              bundle.right_action(p1, d) == p2, (p1, p2))
            for h in g.target_fibre(bundle.moment(p1)):
                report.record("PGr3:act-div",
                              bundle.division(p1, bundle.right_action(p1, h)) == h,
                              (p1, h))
    return report
