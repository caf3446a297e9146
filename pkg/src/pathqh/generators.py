"""Constructors for the named algebra families used as fixtures.

Covers Hirzebruch-Jung continued fractions, Knoerrer invariant algebras,
truncated path algebras kQ/J^m, cyclic Nakayama algebras, staircase
nilpotent quiver algebras, and the tower of radical quotients behind ADR
endomorphism algebras.
"""

from fractions import Fraction
from math import gcd

from .errors import InputError
from .quiver import LinearPresentation, MonomialPresentation, Path, Quiver, word_path


class HJExpansion:
    """Continued fraction r/a = c_1 - 1/(c_2 - 1/(... - 1/c_n)), c_i >= 2."""

    def __init__(self, r, a, coefficients):
        self.r = r
        self.a = a
        self.coefficients = tuple(coefficients)
        if self.evaluate() != Fraction(r, a):
            raise InputError("continued fraction does not evaluate to r/a")

    def evaluate(self):
        val = None
        for c in reversed(self.coefficients):
            val = Fraction(c) if val is None else Fraction(c) - 1 / val
        return val

    def __repr__(self):
        return f"HJExpansion({self.r}/{self.a} = {list(self.coefficients)})"


def hj_continued_fraction(r, a):
    """Expansion of r/a by the ceiling-division recursion."""
    if not (0 < a < r):
        raise InputError("need 0 < a < r")
    if gcd(r, a) != 1:
        raise InputError("r and a must be coprime")
    coeffs = []
    rr, aa = r, a
    while True:
        c = -(-rr // aa)  # ceiling division
        coeffs.append(c)
        rr, aa = aa, c * aa - rr
        if aa == 0:
            break
    return HJExpansion(r, a, coeffs)


def knorrer(r, a):
    """Knoerrer invariant algebra presentation for coprime 0 < a < r.

    One vertex with loops z_1 .. z_l, where the loop count and the relation
    degrees come from the continued fraction of r/(r-a): with coefficients
    [b_1, ..., b_l] the forbidden words are z_i*z_j for i < j together with
    the chains z_i * z_i^(b_i - 2) * z_(i-1)^(b_(i-1)-2) * ... * z_j^(b_j-2) * z_j
    for j <= i.
    """
    exp = hj_continued_fraction(r, r - a)
    b = exp.coefficients
    l = len(b)
    quiver = Quiver(["v"], [(f"z{i}", "v", "v") for i in range(1, l + 1)])
    forbidden = []
    for i in range(1, l + 1):
        for j in range(1, i + 1):
            word = [f"z{i}"]
            for k in range(i, j - 1, -1):
                word.extend([f"z{k}"] * (b[k - 1] - 2))
            word.append(f"z{j}")
            forbidden.append(word_path(quiver, word))
        for j in range(i + 1, l + 1):
            forbidden.append(word_path(quiver, [f"z{i}", f"z{j}"]))
    return MonomialPresentation(quiver, forbidden, nilpotency_witness=r)


def truncated(quiver, m):
    """kQ/J^m: all paths of length m are forbidden.

    For m = 1 the quotient is semisimple; it is returned as the path algebra
    of the arrowless quiver on the same vertices, since forbidden paths must
    have length at least two.
    """
    if m < 1:
        raise InputError("truncation degree must be >= 1")
    if m == 1:
        return MonomialPresentation(Quiver(quiver.vertices, []), [],
                                    nilpotency_witness=1)
    forbidden = []
    level = [quiver.lazy(v) for v in quiver.vertices]
    for _ in range(m):
        nxt = []
        for p in level:
            for ai in range(len(quiver.arrows)):
                if quiver.arrow_source(ai) == p.target:
                    nxt.append(Path(quiver, p.arrows + (ai,), p.source))
        level = nxt
    forbidden = level
    return MonomialPresentation(quiver, forbidden, nilpotency_witness=m)


def cyclic_quiver(n):
    vertices = [str(i + 1) for i in range(n)]
    arrows = [(f"x{i + 1}", str(i + 1), str((i + 1) % n + 1)) for i in range(n)]
    return Quiver(vertices, arrows)


def nakayama_cyclic(n, m):
    """Self-injective Nakayama presentation: cyclic n-quiver truncated at m."""
    if n < 1 or m < 1:
        raise InputError("need n, m >= 1")
    return truncated(cyclic_quiver(n), m)


def staircase_quiver(quiver, s):
    """The staircase quiver with vertices v{i}_{l} for l = 1..s.

    Arrows: b{i}_{l}: v{i}_{l+1} -> v{i}_{l} for each vertex i and l < s, and
    {a}_{l}: v{head(a)}_{l-1} -> v{tail(a)}_{l} for each arrow a and 2 <= l <= s.
    """
    vertices = [f"v{i}_{l}" for i in quiver.vertices for l in range(1, s + 1)]
    arrows = []
    for i in quiver.vertices:
        for l in range(1, s):
            arrows.append((f"b{i}_{l}", f"v{i}_{l + 1}", f"v{i}_{l}"))
    for name, src, tgt in quiver.arrows:
        tail = quiver.vertices[src]
        head = quiver.vertices[tgt]
        for l in range(2, s + 1):
            arrows.append((f"{name}_{l}", f"v{head}_{l - 1}", f"v{tail}_{l}"))
    return Quiver(vertices, arrows)

def staircase_nilpotent(quiver, s):
    """Nilpotent quiver algebra presentation on the staircase quiver.

    Relations, for each original arrow a with tail i and head j:
      b{i}_{l} * a_{l+1} = a_{l} * b{j}_{l-1}   for 2 <= l <= s-1,
      b{i}_{1} * a_{2} = 0.
    """
    if s < 1:
        raise InputError("need s >= 1")
    sq = staircase_quiver(quiver, s)
    relations = []
    for name, src, tgt in quiver.arrows:
        tail = quiver.vertices[src]
        head = quiver.vertices[tgt]
        for l in range(2, s):
            lhs = word_path(sq, [f"b{tail}_{l}", f"{name}_{l + 1}"])
            rhs = word_path(sq, [f"{name}_{l}", f"b{head}_{l - 1}"])
            relations.append([(1, lhs), (-1, rhs)])
        if s >= 2:
            relations.append([(1, word_path(sq, [f"b{tail}_1", f"{name}_2"]))])
    return LinearPresentation(sq, relations)


def adr_family(alg):
    """The radical quotients Ae/rad^i Ae, deduplicated up to isomorphism.

    Returns (module, vertex label, i) triples covering every primitive
    idempotent e and 1 <= i <= Loewy length of Ae.
    """
    from . import modules
    out = []
    for label in alg.labels:
        proj = modules.projective_module(alg, label)
        series = modules.radical_series(proj)
        # series[k] = rad^k P; Loewy length = first k with rad^k P = 0
        ll = len(series) - 1
        for i in range(1, ll + 1):
            quot, _ = modules.quotient_module(proj, series[i])
            if not any(modules.is_isomorphic(quot, m) for m, _, _ in out):
                out.append((quot, label, i))
    return out
