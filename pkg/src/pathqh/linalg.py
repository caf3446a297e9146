"""Exact linear algebra over the rationals.

Everything downstream (Hom spaces, filtrations, duality certificates) asserts
exact equalities, so scalars are `fractions.Fraction` throughout and no float
ever appears.  Two representations coexist:

* `RationalMatrix` -- a small dense matrix type with `rref`, `kernel_basis`
  and `solve_linear`;
* sparse vectors (`dict[int, Fraction]`, zero entries absent) plus the
  incremental `RowSpace`, which the algebra/module layers use internally.

Canonical representative of a subspace = its reduced row echelon basis with
pivots chosen at the smallest coordinate; this makes every derived basis
(Hom spaces, kernels, ideals) reproducible across runs.
"""

from fractions import Fraction

from .errors import InputError

Fr = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# sparse vectors


def svec(items=()):
    return {k: Fr(v) for k, v in dict(items).items() if v != 0}


def svec_add(a, b, coeff=ONE):
    """a + coeff*b, returning a new sparse vector."""
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, ZERO) + coeff * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def svec_scale(a, coeff):
    if coeff == 0:
        return {}
    return {k: v * coeff for k, v in a.items()}


class RowSpace:
    """Incremental reduced-row-echelon span of sparse vectors.

    Rows are kept fully reduced against each other with pivot entry 1, pivot
    at the minimal nonzero coordinate.  The resulting basis is the canonical
    representative of the subspace.
    """

    def __init__(self):
        self.rows = {}  # pivot column -> normalized sparse row

    def reduce(self, vec):
        """Residue of vec modulo the span (supported off the pivots)."""
        out = dict(vec)
        hits = [p for p in out if p in self.rows]
        while hits:
            for p in hits:
                c = out.get(p)
                if c:
                    row = self.rows[p]
                    for k, v in row.items():
                        w = out.get(k, ZERO) - c * v
                        if w:
                            out[k] = w
                        else:
                            out.pop(k, None)
            hits = [p for p in out if p in self.rows]
        return out

    def add(self, vec):
        """Insert vec; returns True if it enlarged the span."""
        res = self.reduce(vec)
        if not res:
            return False
        p = min(res)
        inv = ONE / res[p]
        row = {k: v * inv for k, v in res.items()}
        for q, old in self.rows.items():
            c = old.get(p)
            if c:
                self.rows[q] = svec_add(old, row, -c)
        self.rows[p] = row
        return True

    def extend(self, vecs):
        for v in vecs:
            self.add(v)
        return self

    def contains(self, vec):
        return not self.reduce(vec)

    @property
    def dim(self):
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def basis(self):
        return [self.rows[p] for p in sorted(self.rows)]

    def coords_of(self, vec):
        """Coefficients of vec in the canonical basis, or None if outside."""
        if self.reduce(vec):
            return None
        return [vec.get(p, ZERO) for p in sorted(self.rows)]

    def copy(self):
        rs = RowSpace()
        rs.rows = {p: dict(r) for p, r in self.rows.items()}
        return rs


class SpanSolver:
    """Span of a vector sequence with coordinate tracking.

    `coords_of` writes a vector as a combination of the *originally added*
    vectors (first solution in insertion order), unlike RowSpace.coords_of
    which uses the canonical basis.
    """

    def __init__(self):
        self._rows = []  # (pivot, reduced vec, combo over insertion indices)
        self.count = 0

    def _reduce(self, vec, combo):
        vec = dict(vec)
        combo = dict(combo)
        again = True
        while again:
            again = False
            for p, row, rcombo in self._rows:
                c = vec.get(p)
                if c:
                    vec = svec_add(vec, row, -c)
                    combo = svec_add(combo, rcombo, -c)
                    again = True
        return vec, combo

    def add(self, vec):
        """Returns True if vec enlarged the span; always consumes an index."""
        idx = self.count
        self.count += 1
        red, combo = self._reduce(vec, {})
        if not red:
            return False
        p = min(red)
        inv = ONE / red[p]
        # red = vec + sum(combo * originals), so red/red[p] has combination
        # (combo + unit_idx) / red[p]
        rcombo = svec_add(svec_scale(combo, inv), {idx: inv})
        self._rows.append((p, {k: v * inv for k, v in red.items()}, rcombo))
        return True

    def coords_of(self, vec):
        red, combo = self._reduce(vec, {})
        if red:
            return None
        return {k: -v for k, v in combo.items()}

    @property
    def dim(self):
        return len(self._rows)


def kernel_of_rows(rows, ncols):
    """Canonical basis of {x : row . x = 0 for all rows}, x over ncols coords."""
    rs = RowSpace()
    for r in rows:
        rs.add(r)
    piv = rs.rows
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for c in free:
        v = {c: ONE}
        for p, row in piv.items():
            a = row.get(c)
            if a:
                v[p] = -a
        basis.append(v)
    return basis


def solve_rows(rows, rhs, ncols):
    """One solution of row_i . x = rhs_i, or None.  rhs is a list."""
    rs = RowSpace()
    aug = ncols  # extra coordinate carrying the right-hand side
    for r, b in zip(rows, rhs):
        v = dict(r)
        b = Fr(b)
        if b:
            v[aug] = -b
        rs.add(v)
    if aug in rs.rows:
        return None  # row (0 ... 0 | 1): inconsistent
    sol = {}
    for p, row in rs.rows.items():
        c = row.get(aug, ZERO)
        if c:
            sol[p] = c
    return sol


# ---------------------------------------------------------------------------
# dense public interface


class RationalMatrix:
    """Dense matrix of Fractions; treated as immutable."""

    def __init__(self, entries):
        self.entries = [[Fr(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise InputError("ragged matrix")

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r, c):
        return cls([[ZERO] * c for _ in range(r)])

    def transpose(self):
        return RationalMatrix([[self.entries[i][j] for i in range(self.rows)]
                               for j in range(self.cols)])

    def mul(self, other):
        if self.cols != other.rows:
            raise InputError("dimension mismatch in matrix product")
        out = [[sum((self.entries[i][k] * other.entries[k][j]
                     for k in range(self.cols)), ZERO)
                for j in range(other.cols)] for i in range(self.rows)]
        return RationalMatrix(out)

    def mul_vector(self, vec):
        if self.cols != len(vec):
            raise InputError("dimension mismatch in matrix-vector product")
        return [sum((self.entries[i][k] * Fr(vec[k]) for k in range(self.cols)),
                    ZERO) for i in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix)
                and self.entries == other.entries)

    def __repr__(self):
        return f"RationalMatrix({self.entries!r})"

    def rank(self):
        return len(rref(self)[1])


def _rows_to_svecs(m):
    return [svec(enumerate(row)) for row in m.entries]


def rref(m):
    """Reduced row echelon form; returns (RationalMatrix, pivot column list)."""
    rs = RowSpace()
    for r in _rows_to_svecs(m):
        rs.add(r)
    piv = rs.pivots()
    out = [[rs.rows[p].get(j, ZERO) for j in range(m.cols)] for p in piv]
    while len(out) < m.rows:
        out.append([ZERO] * m.cols)
    return RationalMatrix(out), piv


def kernel_basis(m):
    """Canonical basis of the right kernel, as column vectors (lists)."""
    ker = kernel_of_rows(_rows_to_svecs(m), m.cols)
    return [[v.get(i, ZERO) for i in range(m.cols)] for v in ker]


def solve_linear(a, b):
    """Particular solution x of a.x = b (b a list), or None if inconsistent."""
    if len(b) != a.rows:
        raise InputError("dimension mismatch in solve_linear")
    sol = solve_rows(_rows_to_svecs(a), [Fr(x) for x in b], a.cols)
    if sol is None:
        return None
    return [sol.get(i, ZERO) for i in range(a.cols)]
