"""Automorphisms of a glued bundle and their global-bisection avatars.

An automorphism is a base bijection f together with chart transition data
gamma_(j,i)(sigma), a bisection for each sigma in O_i with f(sigma) in O_j,
compatible with the cocycle.  Locally it acts by left multiplication, so it
commutes with the right groupoid action by construction; the interesting
checks are the gluing relations and the correspondence with bisections of
the symmetry groupoid.
"""

from itertools import product as iproduct

from .atiyah import AtElement, AtiyahGroupoid
from .bisection import (Bisection, BisectionGroup, bisection_inverse,
                        bisection_product, enumerate_bisections, left_mult,
                        validate_bisection)
from .bundle import FPoint, PPoint
from .report import EnumerationBound, StructuralError, ValidationReport


class BundleAutomorphism:
    """A base bijection with bisection-valued chart data."""

    def __init__(self, bundle, f, gamma):
        self.bundle = bundle
        self.f = dict(f)
        self.f_inv = {v: k for k, v in self.f.items()}
        if len(self.f_inv) != len(self.f):
            raise StructuralError("base map is not a bijection")
        self.gamma = dict(gamma)

    def gamma_at(self, j, i, sigma):
        """gamma_(j,i)(sigma), derived from a stored entry by the gluing rule
        gamma_(l,k) = beta_lj(f(sigma)) . gamma_(j,i) . beta_ik(sigma)."""
        if (j, i, sigma) in self.gamma:
            return self.gamma[(j, i, sigma)]
        fs = self.f[sigma]
        for (j0, i0, s0), g0 in self.gamma.items():
            if s0 != sigma:
                continue
            c = self.bundle.cocycle
            val = bisection_product(
                c.beta(j, j0, fs), bisection_product(g0, c.beta(i0, i, sigma)))
            self.gamma[(j, i, sigma)] = val
            return val
        raise StructuralError("no chart data at {}".format(sigma))

    def apply(self, p):
        """The image of a canonical point, again in canonical form."""
        fs = self.f[p.sigma]
        j = self.bundle.base.canonical_chart(fs)
        g = self.gamma_at(j, p.chart, p.sigma)
        return PPoint(fs, j, left_mult(g, p.arrow))

    def apply_shadow(self, fp):
        fs = self.f[fp.sigma]
        j = self.bundle.base.canonical_chart(fs)
        g = self.gamma_at(j, fp.chart, fp.sigma)
        return FPoint(fs, j, g.shadow()[fp.obj])

    def apply_adjoint(self, e):
        """Conjugation on the adjoint bundle; only defined when f = id."""
        if not self.is_vertical():
            raise StructuralError("adjoint push-forward needs a vertical map")
        from .bisection import conjugate
        g = self.gamma_at(e.chart, e.chart, e.sigma)
        return type(e)(e.sigma, e.chart, conjugate(g, e.arrow))

    def is_vertical(self):
        return all(v == k for k, v in self.f.items())

    def compose(self, other):
        """self after other."""
        bundle = self.bundle
        f = {s: self.f[other.f[s]] for s in other.f}
        gamma = {}
        for sigma in bundle.base.base:
            i = bundle.base.canonical_chart(sigma)
            mid = other.f[sigma]
            k = bundle.base.canonical_chart(mid)
            j = bundle.base.canonical_chart(self.f[mid])
            gamma[(j, i, sigma)] = bisection_product(
                self.gamma_at(j, k, mid), other.gamma_at(k, i, sigma))
        return BundleAutomorphism(bundle, f, gamma)

    def inverse(self):
        bundle = self.bundle
        gamma = {}
        for sigma in bundle.base.base:
            i = bundle.base.canonical_chart(sigma)
            tau = self.f[sigma]
            j = bundle.base.canonical_chart(tau)
            gamma[(i, j, tau)] = bisection_inverse(self.gamma_at(j, i, sigma))
        return BundleAutomorphism(bundle, self.f_inv, gamma)

    def action_key(self):
        """A hashable fingerprint of the action on all points."""
        return tuple(self.apply(p) for p in self.bundle.points)


def identity_automorphism(bundle):
    from .bisection import unit_bisection
    gamma = {}
    for sigma in bundle.base.base:
        i = bundle.base.canonical_chart(sigma)
        gamma[(i, i, sigma)] = unit_bisection(bundle.groupoid)
    return BundleAutomorphism(bundle, {s: s for s in bundle.base.base}, gamma)


def validate_automorphism(bundle, aut):
    """Bijectivity, bisection values, gluing relations, equivariance."""
    report = ValidationReport()
    base = bundle.base
    report.record("aut:f-bijection",
                  sorted(aut.f) == sorted(base.base)
                  and sorted(aut.f.values()) == sorted(base.base))
    for key, g in list(aut.gamma.items()):
        report.record("aut:gamma-bisection",
                      validate_bisection(bundle.groupoid, g), key)
    for sigma in base.base:
        fs = aut.f[sigma]
        charts_in = base.charts_containing(sigma)
        charts_out = base.charts_containing(fs)
        for i in charts_in:
            for j in charts_out:
                g_ji = aut.gamma_at(j, i, sigma)
                for k in charts_in:
                    for l in charts_out:
                        lhs = aut.gamma_at(l, k, sigma)
                        rhs = bisection_product(
                            bundle.cocycle.beta(l, j, fs),
                            bisection_product(g_ji, bundle.cocycle.beta(i, k, sigma)))
                        report.record("aut:gluing", lhs == rhs, (i, j, k, l, sigma))
    for p in bundle.points:
        q = aut.apply(p)
        for h in bundle.groupoid.target_fibre(bundle.moment(p)):
            report.record("aut:equivariance",
                          aut.apply(bundle.right_action(p, h))
                          == bundle.right_action(q, h), (p, h))
        report.record("aut:shadow-compatible",
                      aut.apply_shadow(bundle.sitting_duck(p))
                      == bundle.sitting_duck(q), p)
    return report


def automorphism_to_bisection(at, aut, fg=None):
    """The global bisection of the symmetry groupoid attached to an
    automorphism: over (sigma, m) it places the class of the arrow
    gamma_(j,i)(sigma)(m) from (sigma, m) to its image shadow point."""
    bundle = at.bundle
    fg = fg or at.as_finite_groupoid()
    assign = []
    for fp in bundle.shadow_points:
        fs = aut.f[fp.sigma]
        j = bundle.base.canonical_chart(fs)
        g = aut.gamma_at(j, fp.chart, fp.sigma)
        e = AtElement(fs, j, g(fp.obj), fp.sigma, fp.chart)
        assign.append(at.index(e))
    return Bisection(fg, assign)


def bisection_to_automorphism(bundle, at, b):
    """Recover the automorphism from a projectable bisection of the
    symmetry groupoid.  Raises if the bisection does not cover a base map."""
    findex = {fp: k for k, fp in enumerate(bundle.shadow_points)}
    f, gamma = {}, {}
    for sigma in bundle.base.base:
        i = bundle.base.canonical_chart(sigma)
        assign = [None] * bundle.groupoid.n_objects
        fs = None
        for m in bundle.groupoid.objects:
            e = at.elements[b(findex[FPoint(sigma, i, m)])]
            if fs is None:
                fs = e.sigma1
            elif e.sigma1 != fs:
                raise StructuralError(
                    "bisection does not project over {}".format(sigma))
            assign[m] = e.arrow
        f[sigma] = fs
        j = bundle.base.canonical_chart(fs)
        gamma[(j, i, sigma)] = Bisection(bundle.groupoid, assign)
    return BundleAutomorphism(bundle, f, gamma)


def verify_bisection_correspondence(bundle, at, aut, fg=None):
    """The attached bisection is a section of S, covers the shadow map
    through T, implements the automorphism through the left action, and
    survives the round trip back to automorphism data."""
    fg = fg or at.as_finite_groupoid()
    report = ValidationReport()
    b = automorphism_to_bisection(at, aut, fg)
    report.record("corr:is-bisection", validate_bisection(fg, b))
    for k, fp in enumerate(bundle.shadow_points):
        e = at.elements[b(k)]
        report.record("corr:section-of-S", at.source(e) == fp, fp)
        report.record("corr:T-is-shadow-map",
                      at.target(e) == aut.apply_shadow(fp), fp)
    for p in bundle.points:
        fp = bundle.sitting_duck(p)
        e = at.elements[b(findex_of(bundle, fp))]
        report.record("corr:implements",
                      at.act_on_bundle(e, p) == aut.apply(p), p)
    back = bisection_to_automorphism(bundle, at, b)
    report.record("corr:round-trip", back.action_key() == aut.action_key())
    return report


def findex_of(bundle, fp):
    return bundle.shadow_points.index(fp)


def enumerate_gauge_group(bundle, cap=1_000_000):
    """All vertical automorphisms, by brute force over the free chart data.

    The gluing relations leave one free bisection per base point, read in
    its canonical chart; distinct choices may still act identically, so the
    list is deduplicated by the action on points.
    """
    bis = enumerate_bisections(bundle.groupoid)
    n = len(bundle.base.base)
    if len(bis) ** n > cap:
        raise EnumerationBound(
            "{}^{} candidate gauge maps exceed cap {}".format(len(bis), n, cap))
    ident = {s: s for s in bundle.base.base}
    seen, out = set(), []
    for choice in iproduct(bis, repeat=n):
        gamma = {}
        for sigma, g in zip(bundle.base.base, choice):
            i = bundle.base.canonical_chart(sigma)
            gamma[(i, i, sigma)] = g
        aut = BundleAutomorphism(bundle, ident, gamma)
        key = aut.action_key()
        if key not in seen:
            seen.add(key)
            out.append(aut)
    return out


def verify_gauge_group(bundle, gauge=None):
    """Closure, identity, inverses, and agreement with the vertical
    projectable bisections of the symmetry groupoid."""
    from .atiyah import enumerate_projectable_bisections

    gauge = gauge or enumerate_gauge_group(bundle)
    report = ValidationReport()
    keys = {aut.action_key(): aut for aut in gauge}
    ident = identity_automorphism(bundle)
    report.record("gauge:has-identity", ident.action_key() in keys)
    for a in gauge:
        report.record("gauge:inverse-closed",
                      a.inverse().action_key() in keys, a.f)
        for b in gauge:
            report.record("gauge:product-closed",
                          a.compose(b).action_key() in keys)
    at = AtiyahGroupoid(bundle)
    _, vertical = enumerate_projectable_bisections(bundle, at)
    report.record("gauge:matches-vertical-bisections",
                  len(vertical) == len(gauge),
                  detail="{} bisections vs {} gauge maps".format(
                      len(vertical), len(gauge)))
    return report
