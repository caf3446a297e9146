"""Line-oriented input language for quivers with relations.

    algebra NAME
    vertex ID ...
    arrow ID : SRC -> TGT
    zero PATHEXPR
    relation LINCOMB = LINCOMB

A path expression multiplies right-to-left ("a*b" is b followed by a), "a^3"
repeats a factor, and a bare vertex is its lazy path.  Terms of a LINCOMB
carry optional rational coefficients ("3*x*y", "1/2*z"); "0" denotes the
empty combination.  "#" starts a comment.
"""

import re
from fractions import Fraction

from .errors import InputError
from .quiver import (LinearPresentation, MonomialPresentation, Path, Quiver,
                     compose)

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$|^[0-9]+$")
_NUMBER = re.compile(r"^-?[0-9]+(/[0-9]+)?$")


class AlgebraSpecFile:
    """Parsed form of an algebra description file."""

    def __init__(self, name, vertices, arrows, zero_words, relation_lines):
        self.name = name
        self.vertices = vertices
        self.arrows = arrows  # (name, src, tgt)
        self.zero_words = zero_words  # list of path expr strings
        self.relation_lines = relation_lines  # list of (lhs str, rhs str)
        self.quiver = Quiver(vertices, arrows)

    @property
    def is_monomial(self):
        return not self.relation_lines

    def _path(self, text, lineno):
        factors = [t.strip() for t in text.split("*")]
        expanded = []
        for f in factors:
            if not f:
                raise InputError(f"line {lineno}: empty path factor")
            if "^" in f:
                base, _, exp = f.partition("^")
                base = base.strip()
                try:
                    k = int(exp)
                except ValueError:
                    raise InputError(f"line {lineno}: bad exponent in {f!r}")
                if k < 0:
                    raise InputError(f"line {lineno}: negative exponent")
                expanded.extend([base] * k)
            else:
                expanded.append(f)
        q = self.quiver
        path = None
        for name in reversed(expanded):  # right factor applies first
            if name in q.vindex:
                step = q.lazy(name)
            elif name in q.aindex:
                step = q.arrow_path(name)
            else:
                raise InputError(f"line {lineno}: unknown identifier {name!r}")
            path = step if path is None else compose(step, path)
            if path is None:
                raise InputError(
                    f"line {lineno}: path factors do not compose in {text!r}")
        if path is None:
            raise InputError(f"line {lineno}: empty path expression")
        return path

    def _lincomb(self, text, lineno):
        text = text.strip()
        if text == "0":
            return []
        chunks = re.split(r"(?=[+-])", text)
        terms = []
        for chunk in chunks:
            chunk = chunk.strip()
            if not chunk:
                continue
            sign = Fraction(1)
            if chunk[0] == "+":
                chunk = chunk[1:].strip()
            elif chunk[0] == "-":
                sign = Fraction(-1)
                chunk = chunk[1:].strip()
            factors = [t.strip() for t in chunk.split("*")]
            coeff = sign
            if factors and _NUMBER.match(factors[0]) and \
                    factors[0] not in self.quiver.vindex and \
                    factors[0] not in self.quiver.aindex:
                coeff *= Fraction(factors[0])
                factors = factors[1:]
            if not factors:
                raise InputError(f"line {lineno}: coefficient without a path")
            terms.append((coeff, self._path("*".join(factors), lineno)))
        return terms

    def monomial_presentation(self):
        if not self.is_monomial:
            raise InputError("algebra has non-monomial relations")
        forbidden = [self._path(w, ln) for w, ln in self.zero_words]
        return MonomialPresentation(self.quiver, forbidden)

    def linear_presentation(self):
        relations = []
        for w, ln in self.zero_words:
            relations.append([(Fraction(1), self._path(w, ln))])
        for (lhs, rhs), ln in self.relation_lines:
            terms = self._lincomb(lhs, ln)
            for c, p in self._lincomb(rhs, ln):
                terms.append((-c, p))
            merged = {}
            for c, p in terms:
                merged[p] = merged.get(p, Fraction(0)) + c
            rel = [(c, p) for p, c in merged.items() if c]
            if rel:
                relations.append(rel)
        return LinearPresentation(self.quiver, relations)

    def build(self, max_degree=32, check=True):
        from .algebra import build_monomial_algebra, build_presented_algebra
        if self.is_monomial:
            return build_monomial_algebra(self.monomial_presentation(),
                                          check=check)
        return build_presented_algebra(self.linear_presentation(),
                                       max_degree=max_degree, check=check)


def parse_dsl(text):
    name = None
    vertices = []
    arrows = []
    zero_words = []
    relation_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "algebra":
            if not rest or len(rest.split()) != 1:
                raise InputError(f"line {lineno}: algebra needs one name")
            name = rest
        elif head == "vertex":
            ids = rest.split()
            if not ids:
                raise InputError(f"line {lineno}: vertex needs identifiers")
            for v in ids:
                if not _IDENT.match(v):
                    raise InputError(f"line {lineno}: bad identifier {v!r}")
                if v in vertices:
                    raise InputError(f"line {lineno}: duplicate vertex {v!r}")
                vertices.append(v)
        elif head == "arrow":
            m = re.match(r"^(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$", rest)
            if not m:
                raise InputError(
                    f"line {lineno}: expected 'arrow ID : SRC -> TGT'")
            aname, src, tgt = m.groups()
            if not _IDENT.match(aname):
                raise InputError(f"line {lineno}: bad identifier {aname!r}")
            arrows.append((aname, src, tgt))
        elif head == "zero":
            if not rest:
                raise InputError(f"line {lineno}: zero needs a path")
            zero_words.append((rest, lineno))
        elif head == "relation":
            if "=" not in rest:
                raise InputError(f"line {lineno}: relation needs '='")
            lhs, _, rhs = rest.partition("=")
            relation_lines.append(((lhs.strip(), rhs.strip()), lineno))
        else:
            raise InputError(f"line {lineno}: unknown directive {head!r}")
    if name is None:
        raise InputError("missing 'algebra NAME' line")
    if not vertices:
        raise InputError("no vertices declared")
    spec = AlgebraSpecFile(name, vertices, arrows, zero_words, relation_lines)
    # force early validation of every path expression
    if spec.is_monomial:
        spec.monomial_presentation()
    else:
        spec.linear_presentation()
    return spec


def _term_str(coeff, path):
    if coeff == 1:
        return str(path)
    if coeff == -1:
        return f"-{path}"
    return f"{coeff}*{path}"


def emit_dsl(name, presentation):
    """DSL text for a presentation; parse(emit(parse(x))) is a fixpoint."""
    q = presentation.quiver
    lines = [f"algebra {name}"]
    if q.vertices:
        lines.append("vertex " + " ".join(q.vertices))
    for aname, s, t in q.arrows:
        lines.append(f"arrow {aname} : {q.vertices[s]} -> {q.vertices[t]}")
    if isinstance(presentation, MonomialPresentation):
        for p in presentation.forbidden:
            lines.append(f"zero {p}")
    else:
        for rel in presentation.relations:
            pos = [(c, p) for c, p in rel if c > 0]
            neg = [(-c, p) for c, p in rel if c < 0]
            if len(rel) == 1 and rel[0][0] == 1:
                lines.append(f"zero {rel[0][1]}")
                continue
            lhs = " + ".join(_term_str(c, p) for c, p in pos) or "0"
            rhs = " + ".join(_term_str(c, p) for c, p in neg) or "0"
            lines.append(f"relation {lhs} = {rhs}")
    return "\n".join(lines) + "\n"
