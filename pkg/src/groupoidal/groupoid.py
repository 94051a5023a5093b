"""Finite groupoids: arrows over objects with a partial multiplication table.

Objects and arrows are dense integer ids.  Structure maps are array-backed;
the multiplication table is a dict keyed by composable pairs, since those
are sparse in the square of the arrow set.
"""

import itertools

from .report import CompositionError, StructuralError, ValidationReport


class FiniteGroupoid:
    """A small category with all morphisms invertible, on finite data.

    Fields follow the usual structure maps: src/tgt per arrow, unit per
    object, inv per arrow, and mul defined exactly on pairs (a, b) with
    src(a) == tgt(b).  Instances are immutable after construction.
    """

    def __init__(self, n_objects, src, tgt, unit, inv, mul, arrow_labels=None,
                 object_labels=None):
        self.n_objects = n_objects
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.unit = tuple(unit)
        self.inv = tuple(inv)
        self.mul = dict(mul)
        self.arrow_labels = tuple(arrow_labels) if arrow_labels is not None else None
        self.object_labels = tuple(object_labels) if object_labels is not None else None
        self._check_shape()

    def _check_shape(self):
        n = self.n_arrows
        if len(self.tgt) != n or len(self.inv) != n:
            raise StructuralError("src/tgt/inv tables disagree in length")
        if len(self.unit) != self.n_objects:
            raise StructuralError("unit table length differs from object count")
        for a in itertools.chain(self.inv, self.unit):
            if not (0 <= a < n):
                raise StructuralError("arrow id out of range: {}".format(a))
        for m in itertools.chain(self.src, self.tgt):
            if not (0 <= m < self.n_objects):
                raise StructuralError("object id out of range: {}".format(m))
        for (a, b), c in self.mul.items():
            if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
                raise StructuralError("mul entry out of range: {}".format((a, b, c)))

    @property
    def n_arrows(self):
        return len(self.src)

    @property
    def objects(self):
        return range(self.n_objects)

    @property
    def arrows(self):
        return range(self.n_arrows)

    def composable(self, a, b):
        return self.src[a] == self.tgt[b]

    def compose(self, a, b):
        """The product a.b, defined when src(a) == tgt(b)."""
        try:
            return self.mul[(a, b)]
        except KeyError:
            raise CompositionError(
                "non-composable pair: src={} tgt={}".format(self.src[a], self.tgt[b]))

    def inverse(self, a):
        return self.inv[a]

    def source_fibre(self, m):
        return [a for a in self.arrows if self.src[a] == m]

    def target_fibre(self, m):
        return [a for a in self.arrows if self.tgt[a] == m]

    def arrow_index(self, label):
        """Look an arrow up by its label, when labels were supplied."""
        return self.arrow_labels.index(label)

    def __eq__(self, other):
        if not isinstance(other, FiniteGroupoid):
            return False
        return (self.n_objects == other.n_objects and self.src == other.src
                and self.tgt == other.tgt and self.unit == other.unit
                and self.inv == other.inv and self.mul == other.mul)

    def __repr__(self):
        return "FiniteGroupoid(objects={}, arrows={})".format(
            self.n_objects, self.n_arrows)

    def to_json(self):
        return {
            "objects": self.n_objects,
            "arrows": [{"id": a, "src": self.src[a], "tgt": self.tgt[a]}
                       for a in self.arrows],
            "units": list(self.unit),
            "inv": list(self.inv),
            "mul": sorted([a, b, c] for (a, b), c in self.mul.items()),
        }

    @classmethod
    def from_json(cls, doc):
        try:
            n_objects = doc["objects"]
            arrows = sorted(doc["arrows"], key=lambda e: e["id"])
            if [e["id"] for e in arrows] != list(range(len(arrows))):
                raise StructuralError("arrow ids are not dense")
            src = [e["src"] for e in arrows]
            tgt = [e["tgt"] for e in arrows]
            mul = {(a, b): c for a, b, c in doc["mul"]}
            return cls(n_objects, src, tgt, doc["units"], doc["inv"], mul)
        except (KeyError, TypeError) as exc:
            raise StructuralError("malformed groupoid document: {}".format(exc))


def validate_groupoid(g):
    """Check every groupoid axiom, collecting all violations with witnesses.

    Axiom (i): src/tgt compatibility of the product and totality of mul on
    composable pairs.  (ii): associativity.  (iii): units.  (iv): inverses.
    """
    report = ValidationReport()
    for a in g.arrows:
        for b in g.arrows:
            if g.composable(a, b):
                if (a, b) not in g.mul:
                    report.add("i:mul-total", (a, b), "composable pair missing from mul")
                    continue
                c = g.mul[(a, b)]
                report.record("i:src", g.src[c] == g.src[b], (a, b),
                              "s(a.b) != s(b)")
                report.record("i:tgt", g.tgt[c] == g.tgt[a], (a, b),
                              "t(a.b) != t(a)")
            elif (a, b) in g.mul:
                report.add("i:mul-domain", (a, b), "mul defined on non-composable pair")
    for a in g.arrows:
        for b in g.arrows:
            if not g.composable(a, b) or (a, b) not in g.mul:
                continue
            for c in g.arrows:
                if not g.composable(b, c) or (b, c) not in g.mul:
                    continue
                left = g.mul.get((g.mul[(a, b)], c))
                right = g.mul.get((a, g.mul[(b, c)]))
                report.record("ii:assoc", left is not None and left == right,
                              (a, b, c))
    for m in g.objects:
        e = g.unit[m]
        report.record("iii:unit-src", g.src[e] == m, m)
        report.record("iii:unit-tgt", g.tgt[e] == m, m)
    for a in g.arrows:
        e_t = g.unit[g.tgt[a]]
        e_s = g.unit[g.src[a]]
        report.record("iii:unit-left", g.mul.get((e_t, a)) == a, a)
        report.record("iii:unit-right", g.mul.get((a, e_s)) == a, a)
    for a in g.arrows:
        b = g.inv[a]
        report.record("iv:inv-src", g.src[b] == g.tgt[a], a)
        report.record("iv:inv-tgt", g.tgt[b] == g.src[a], a)
        report.record("iv:inv-right", g.mul.get((a, b)) == g.unit[g.tgt[a]], a)
        report.record("iv:inv-left", g.mul.get((b, a)) == g.unit[g.src[a]], a)
    return report


class FiniteGroupAction:
    """A finite group together with an action table on a finite carrier."""

    def __init__(self, elements, mult, identity, inverse, carrier_size, act):
        self.elements = list(elements)
        self.mult = dict(mult)
        self.identity = identity
        self.inverse = dict(inverse)
        self.carrier_size = carrier_size
        self.act = dict(act)
        self._validate()

    def _validate(self):
        for m in range(self.carrier_size):
            if self.act[(self.identity, m)] != m:
                raise StructuralError("act(e, m) != m at m={}".format(m))
        for h in self.elements:
            for gg in self.elements:
                for m in range(self.carrier_size):
                    if self.act[(h, self.act[(gg, m)])] != self.act[(self.mult[(h, gg)], m)]:
                        raise StructuralError(
                            "action not homomorphic at {}".format((h, gg, m)))


def pair_groupoid(n):
    """The pair groupoid of an n-point set: one arrow (m2, m1) per ordered pair."""
    labels = [(m2, m1) for m2 in range(n) for m1 in range(n)]
    index = {lab: k for k, lab in enumerate(labels)}
    src = [m1 for (_, m1) in labels]
    tgt = [m2 for (m2, _) in labels]
    unit = [index[(m, m)] for m in range(n)]
    inv = [index[(m1, m2)] for (m2, m1) in labels]
    mul = {}
    for (m3, m2) in labels:
        for (m2b, m1) in labels:
            if m2 == m2b:
                mul[(index[(m3, m2)], index[(m2, m1)])] = index[(m3, m1)]
    return FiniteGroupoid(n, src, tgt, unit, inv, mul, arrow_labels=labels)


def action_groupoid(action):
    """The action groupoid of a FiniteGroupAction: arrows (g, m), s=m, t=g.m."""
    labels = [(gg, m) for gg in action.elements for m in range(action.carrier_size)]
    index = {lab: k for k, lab in enumerate(labels)}
    src = [m for (_, m) in labels]
    tgt = [action.act[(gg, m)] for (gg, m) in labels]
    unit = [index[(action.identity, m)] for m in range(action.carrier_size)]
    inv = [index[(action.inverse[gg], action.act[(gg, m)])] for (gg, m) in labels]
    mul = {}
    for (h, m2) in labels:
        for (gg, m1) in labels:
            # (h, g.m).(g, m) = (h*g, m)
            if m2 == action.act[(gg, m1)]:
                mul[(index[(h, m2)], index[(gg, m1)])] = index[(action.mult[(h, gg)], m1)]
    return FiniteGroupoid(action.carrier_size, src, tgt, unit, inv, mul,
                          arrow_labels=labels)


def group_groupoid(elements, mult, identity, inverse):
    """A group as a one-object groupoid."""
    labels = list(elements)
    index = {lab: k for k, lab in enumerate(labels)}
    n = len(labels)
    src = [0] * n
    tgt = [0] * n
    unit = [index[identity]]
    inv = [index[inverse[gg]] for gg in labels]
    mul = {(index[a], index[b]): index[mult[(a, b)]] for a in labels for b in labels}
    return FiniteGroupoid(1, src, tgt, unit, inv, mul, arrow_labels=labels)


def fibred_pair_groupoid(blocks):
    """The pair groupoid fibred over a partition: arrows only within blocks."""
    points = sorted(p for block in blocks for p in block)
    if points != list(range(len(points))):
        raise StructuralError("blocks must partition a dense range of object ids")
    labels = [(m2, m1) for block in blocks for m2 in block for m1 in block]
    index = {lab: k for k, lab in enumerate(labels)}
    src = [m1 for (_, m1) in labels]
    tgt = [m2 for (m2, _) in labels]
    unit = [index[(m, m)] for m in range(len(points))]
    inv = [index[(m1, m2)] for (m2, m1) in labels]
    mul = {}
    for (m3, m2) in labels:
        for m1 in range(len(points)):
            if (m2, m1) in index:
                mul[(index[(m3, m2)], index[(m2, m1)])] = index[(m3, m1)]
    return FiniteGroupoid(len(points), src, tgt, unit, inv, mul, arrow_labels=labels)


def product_groupoid(g1, g2):
    """The product groupoid: componentwise structure on pairs of arrows."""
    n1, n2 = g1.n_arrows, g2.n_arrows
    def aid(a1, a2):
        return a1 * n2 + a2
    def oid(m1, m2):
        return m1 * g2.n_objects + m2
    src = [oid(g1.src[a1], g2.src[a2]) for a1 in g1.arrows for a2 in g2.arrows]
    tgt = [oid(g1.tgt[a1], g2.tgt[a2]) for a1 in g1.arrows for a2 in g2.arrows]
    unit = [aid(g1.unit[m1], g2.unit[m2])
            for m1 in g1.objects for m2 in g2.objects]
    inv = [aid(g1.inv[a1], g2.inv[a2]) for a1 in g1.arrows for a2 in g2.arrows]
    mul = {}
    for (a1, b1), c1 in g1.mul.items():
        for (a2, b2), c2 in g2.mul.items():
            mul[(aid(a1, a2), aid(b1, b2))] = aid(c1, c2)
    return FiniteGroupoid(g1.n_objects * g2.n_objects, src, tgt, unit, inv, mul)


def z2_swap_action():
    """Z_2 acting on {0, 1} by the swap; the running two-object example."""
    elements = ["e", "r"]
    mult = {("e", "e"): "e", ("e", "r"): "r", ("r", "e"): "r", ("r", "r"): "e"}
    inverse = {"e": "e", "r": "r"}
    act = {("e", 0): 0, ("e", 1): 1, ("r", 0): 1, ("r", 1): 0}
    return FiniteGroupAction(elements, mult, "e", inverse, 2, act)


def construct_standard(kind, **params):
    """Build one of the stock groupoids by kind name."""
    if kind == "pair":
        return pair_groupoid(params["n"])
    if kind == "action":
        return action_groupoid(params["action"])
    if kind == "group":
        return group_groupoid(params["elements"], params["mult"],
                              params["identity"], params["inverse"])
    if kind == "fibred-pair":
        return fibred_pair_groupoid(params["blocks"])
    if kind == "product":
        return product_groupoid(params["g1"], params["g2"])
    raise StructuralError("unknown groupoid kind: {!r}".format(kind))
