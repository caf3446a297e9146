"""Quivers, paths, and presentations of path-algebra quotients.

Composition convention: the product ``p*q`` is "q followed by p", i.e. q is
applied first.  Internally a path stores its arrows in *application order*
(first-applied arrow first); the printed word runs the other way, so the word
"b*a" denotes the path that applies a and then b.
"""

from fractions import Fraction

from .errors import InputError


class Quiver:
    """A finite directed multigraph with labelled vertices and arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex labels")
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.arrows = []  # (name, src_index, tgt_index)
        names = set()
        for name, s, t in arrows:
            name = str(name)
            if name in names or name in self.vindex:
                raise InputError(f"duplicate identifier {name!r}")
            names.add(name)
            if str(s) not in self.vindex or str(t) not in self.vindex:
                raise InputError(f"arrow {name!r} uses undeclared vertex")
            self.arrows.append((name, self.vindex[str(s)], self.vindex[str(t)]))
        self.arrows = tuple(self.arrows)
        self.aindex = {a[0]: i for i, a in enumerate(self.arrows)}

    def arrow_source(self, i):
        return self.arrows[i][1]

    def arrow_target(self, i):
        return self.arrows[i][2]

    def arrow_name(self, i):
        return self.arrows[i][0]

    def arrows_from(self, v):
        return [i for i, a in enumerate(self.arrows) if a[1] == v]

    def arrows_into(self, v):
        return [i for i, a in enumerate(self.arrows) if a[2] == v]

    def sources(self):
        """Vertices with no incoming arrow."""
        return [v for i, v in enumerate(self.vertices) if not self.arrows_into(i)]

    def sinks(self):
        """Vertices with no outgoing arrow."""
        return [v for i, v in enumerate(self.vertices) if not self.arrows_from(i)]

    def reverse(self):
        return Quiver(self.vertices,
                      [(n, self.vertices[t], self.vertices[s])
                       for n, s, t in self.arrows])

    def lazy(self, v):
        return Path(self, (), self.vindex[str(v)])

    def arrow_path(self, name):
        i = self.aindex[str(name)]
        return Path(self, (i,), self.arrows[i][1])

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __repr__(self):
        arr = ", ".join(f"{n}:{self.vertices[s]}->{self.vertices[t]}"
                        for n, s, t in self.arrows)
        return f"Quiver([{', '.join(self.vertices)}], [{arr}])"


class Path:
    """A composable arrow sequence; the empty sequence is a lazy path."""

    __slots__ = ("quiver", "arrows", "source")

    def __init__(self, quiver, arrows, source):
        self.quiver = quiver
        self.arrows = tuple(arrows)  # application order
        self.source = source  # vertex index
        v = source
        for a in self.arrows:
            if quiver.arrow_source(a) != v:
                raise InputError("arrows do not compose")
            v = quiver.arrow_target(a)

    @property
    def target(self):
        if self.arrows:
            return self.quiver.arrow_target(self.arrows[-1])
        return self.source

    def __len__(self):
        return len(self.arrows)

    @property
    def is_lazy(self):
        return not self.arrows

    def word(self):
        """Arrow indices in written order (last applied first)."""
        return tuple(reversed(self.arrows))

    def key(self):
        return (len(self.arrows), self.word())

    def reverse(self, reversed_quiver):
        """The same walk read backwards, as a path of the reversed quiver."""
        rq = reversed_quiver
        arrows = tuple(reversed(self.arrows))
        src = self.target
        return Path(rq, arrows, src)

    def __eq__(self, other):
        return (isinstance(other, Path) and self.arrows == other.arrows
                and self.source == other.source)

    def __hash__(self):
        return hash((self.arrows, self.source))

    def __str__(self):
        q = self.quiver
        if not self.arrows:
            return q.vertices[self.source]
        return "*".join(q.arrow_name(a) for a in self.word())

    def __repr__(self):
        return f"<path {self}>"


def compose(p, q):
    """The path p*q (q followed by p), or None if endpoints mismatch."""
    if p.quiver is not q.quiver and p.quiver != q.quiver:
        return None
    if q.target != p.source:
        return None
    return Path(p.quiver, q.arrows + p.arrows, q.source)


def word_path(quiver, names):
    """Path from arrow names in written order, e.g. ("b", "a") for b*a."""
    idx = [quiver.aindex[str(n)] for n in names]
    arrows = tuple(reversed(idx))
    if not arrows:
        raise InputError("empty word")
    return Path(quiver, arrows, quiver.arrow_source(arrows[0]))


def contains_subpath(arrows, sub):
    """True if `sub` occurs as a contiguous block of `arrows`."""
    n, m = len(arrows), len(sub)
    if m == 0 or m > n:
        return m == 0
    for i in range(n - m + 1):
        if arrows[i:i + m] == sub:
            return True
    return False


class MonomialPresentation:
    """A quiver with a set of forbidden paths generating the relation ideal."""

    def __init__(self, quiver, forbidden, nilpotency_witness=None):
        self.quiver = quiver
        reduced = []
        fset = sorted(set(forbidden), key=lambda p: p.key())
        for p in fset:
            if p.quiver != quiver:
                raise InputError("forbidden path from a different quiver")
            if len(p) < 2:
                raise InputError("forbidden paths must have length >= 2")
            if not any(contains_subpath(p.arrows, q.arrows) for q in reduced):
                reduced.append(p)
        self.forbidden = tuple(reduced)
        self.nilpotency_witness = nilpotency_witness

    def is_dead(self, path):
        return any(contains_subpath(path.arrows, f.arrows) for f in self.forbidden)

    def __repr__(self):
        rels = ", ".join(str(p) for p in self.forbidden)
        return f"MonomialPresentation({self.quiver!r}, [{rels}])"


class LinearPresentation:
    """Quiver with linear relations among parallel paths of equal length.

    Each relation is a list of (coefficient, Path) terms.  Relations must be
    homogeneous in path length: the degree-by-degree ideal closure used by
    the builder relies on the grading.
    """

    def __init__(self, quiver, relations):
        self.quiver = quiver
        self.relations = []
        for rel in relations:
            terms = [(Fraction(c), p) for c, p in rel if c != 0]
            if not terms:
                continue
            srcs = {p.source for _, p in terms}
            tgts = {p.target for _, p in terms}
            lens = {len(p) for _, p in terms}
            if len(srcs) > 1 or len(tgts) > 1:
                raise InputError("relation terms are not parallel paths")
            if len(lens) > 1:
                raise InputError("relation terms must have equal length")
            if lens == {0}:
                raise InputError("relations among lazy paths are not allowed")
            self.relations.append(terms)

    def __repr__(self):
        return f"LinearPresentation({self.quiver!r}, {len(self.relations)} relations)"
