"""Finite dimensional left modules over a FiniteDimAlgebra.

A module stores one sparse action matrix per algebra basis element plus a
Peirce block label for every coordinate (the idempotents act as coordinate
projections).  All submodule/quotient constructions keep coordinates block
pure, which lets Hom-space systems split by blocks and stay small.
"""

import random
from collections import namedtuple
from fractions import Fraction

from .errors import InputError, TheoremViolationError
from .linalg import (ONE, ZERO, RowSpace, SpanSolver, kernel_of_rows,
                     svec_add, svec_scale)

ACTION_CHECK_BUDGET = 10 ** 6
ACTION_CHECK_SAMPLES = 40


class AlgebraModule:
    """Left module: sparse action of every algebra basis element."""

    def __init__(self, algebra, blocks, act, provenance=None, check=True,
                 seed=0):
        self.algebra = algebra
        self.blocks = tuple(blocks)  # label index per coordinate
        self.act = act  # basis index -> {src coord -> sparse image vector}
        self.dim = len(self.blocks)
        self.provenance = provenance
        self._block_coords = None
        if check:
            self._check(seed)

    def block_coords(self, label_idx):
        if self._block_coords is None:
            self._block_coords = {}
            for c, b in enumerate(self.blocks):
                self._block_coords.setdefault(b, []).append(c)
        return self._block_coords.get(label_idx, [])

    def act_basis(self, bidx, vec):
        mat = self.act[bidx]
        out = {}
        for j, c in vec.items():
            col = mat.get(j)
            if col:
                out = svec_add(out, col, c)
        return out

    def act_element(self, elem, vec):
        out = {}
        for b, c in elem.items():
            img = self.act_basis(b, vec)
            if img:
                out = svec_add(out, img, c)
        return out

    def full_space(self):
        rs = RowSpace()
        for i in range(self.dim):
            rs.add({i: ONE})
        return rs

    def _check(self, seed):
        A = self.algebra
        for li, e in enumerate(A.idem_vecs):
            for c in range(self.dim):
                img = self.act_element(e, {c: ONE})
                want = {c: ONE} if self.blocks[c] == li else {}
                if img != want:
                    raise TheoremViolationError(
                        "idempotent does not act as its block projection")
        n = A.dim
        if n * n * max(self.dim, 1) ** 2 <= ACTION_CHECK_BUDGET:
            pairs = ((i, j) for i in range(n) for j in range(n))
        else:
            rng = random.Random(seed)
            pairs = ((rng.randrange(n), rng.randrange(n))
                     for _ in range(ACTION_CHECK_SAMPLES))
        for i, j in pairs:
            prod = A.mul_basis(i, j)
            for c in range(self.dim):
                left = self.act_element(prod, {c: ONE})
                right = self.act_basis(i, self.act_basis(j, {c: ONE}))
                if left != right:
                    raise TheoremViolationError(
                        f"action is not multiplicative on "
                        f"({A.basis[i].name}, {A.basis[j].name})")

    def __repr__(self):
        return f"AlgebraModule(dim={self.dim} over {self.algebra!r})"


class ModuleMap:
    """Linear map between modules, stored as sparse columns."""

    def __init__(self, source, target, cols, check=False):
        self.source = source
        self.target = target
        self.cols = {j: dict(v) for j, v in cols.items() if v}
        if check:
            self.verify()

    def apply(self, vec):
        out = {}
        for j, c in vec.items():
            col = self.cols.get(j)
            if col:
                out = svec_add(out, col, c)
        return out

    def compose(self, other):
        """self after other."""
        if other.target is not self.source:
            raise InputError("maps do not compose")
        cols = {}
        for j, v in other.cols.items():
            img = self.apply(v)
            if img:
                cols[j] = img
        return ModuleMap(other.source, self.target, cols)

    def add(self, other, coeff=ONE):
        cols = dict(self.cols)
        for j, v in other.cols.items():
            cols[j] = svec_add(cols.get(j, {}), v, coeff)
        return ModuleMap(self.source, self.target, cols)

    def scale(self, coeff):
        return ModuleMap(self.source, self.target,
                         {j: svec_scale(v, coeff) for j, v in self.cols.items()})

    def image_space(self):
        rs = RowSpace()
        for v in self.cols.values():
            rs.add(v)
        return rs

    def rank(self):
        return self.image_space().dim

    def is_injective(self):
        return self.rank() == self.source.dim

    def is_surjective(self):
        return self.rank() == self.target.dim

    def is_invertible(self):
        return (self.source.dim == self.target.dim
                and self.rank() == self.source.dim)

    def flatten(self):
        """Sparse vector over (source coord, target coord) pairs."""
        n = self.target.dim
        return {j * n + i: c for j, v in self.cols.items()
                for i, c in v.items()}

    def verify(self):
        for s, t, g in self.source.algebra.generators():
            for j in range(self.source.dim):
                left = self.apply(self.source.act_element(g, {j: ONE}))
                right = self.target.act_element(g, self.apply({j: ONE}))
                if left != right:
                    raise InputError("map does not intertwine the actions")
        return True

    @classmethod
    def identity(cls, module):
        return cls(module, module, {j: {j: ONE} for j in range(module.dim)})

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {})

    def __repr__(self):
        return (f"ModuleMap({self.source.dim} -> {self.target.dim}, "
                f"rank {self.rank()})")


# ---------------------------------------------------------------------------
# basic constructions


def zero_module(algebra):
    return AlgebraModule(algebra, (), [dict() for _ in range(algebra.dim)],
                         check=False)


def regular_module(algebra):
    blocks = [b.tgt for b in algebra.basis]
    act = [dict() for _ in range(algebra.dim)]
    for (i, j), v in algebra.table.items():
        act[i][j] = dict(v)
    return AlgebraModule(algebra, blocks, act, provenance="regular",
                         check=False)


def projective_module(algebra, label):
    """The left module A.e for the idempotent of the given label."""
    li = algebra.label_index(str(label))
    coords = [i for i, b in enumerate(algebra.basis) if b.src == li]
    pos = {i: k for k, i in enumerate(coords)}
    blocks = [algebra.basis[i].tgt for i in coords]
    act = [dict() for _ in range(algebra.dim)]
    for (i, j), v in algebra.table.items():
        if j in pos:
            act[i][pos[j]] = {pos[k]: c for k, c in v.items()}
    m = AlgebraModule(algebra, blocks, act, provenance=("projective", label),
                      check=False)
    m.coordinate_basis_indices = coords
    return m


def simple_module(algebra, label):
    p = projective_module(algebra, str(label))
    sub = radical_series(p)[1]
    return quotient_module(p, sub)[0]


def direct_sum(mods):
    """Returns (sum module, inclusion maps, projection maps)."""
    if not mods:
        raise InputError("empty direct sum; use zero_module")
    algebra = mods[0].algebra
    blocks = []
    offsets = []
    for m in mods:
        if m.algebra is not algebra:
            raise InputError("direct sum over mixed algebras")
        offsets.append(len(blocks))
        blocks.extend(m.blocks)
    act = [dict() for _ in range(algebra.dim)]
    for mi, m in enumerate(mods):
        off = offsets[mi]
        for b in range(algebra.dim):
            for j, v in m.act[b].items():
                act[b][off + j] = {off + i: c for i, c in v.items()}
    total = AlgebraModule(algebra, blocks, act, check=False)
    incs = []
    projs = []
    for mi, m in enumerate(mods):
        off = offsets[mi]
        incs.append(ModuleMap(m, total,
                              {j: {off + j: ONE} for j in range(m.dim)}))
        projs.append(ModuleMap(total, m,
                               {off + j: {j: ONE} for j in range(m.dim)}))
    return total, incs, projs


def _module_from_rowspace(ambient, rs, name=None):
    """Submodule on the canonical basis of an A-stable row space."""
    rows = rs.basis()
    blocks = []
    for r in rows:
        bs = {ambient.blocks[i] for i in r}
        if len(bs) != 1:
            raise TheoremViolationError("submodule basis vector mixes blocks")
        blocks.append(bs.pop())
    act = [dict() for _ in range(ambient.algebra.dim)]
    for b in range(ambient.algebra.dim):
        for k, r in enumerate(rows):
            img = ambient.act_basis(b, r)
            if not img:
                continue
            coords = rs.coords_of(img)
            if coords is None:
                raise TheoremViolationError("row space is not A-stable")
            col = {i: c for i, c in enumerate(coords) if c}
            if col:
                act[b][k] = col
    sub = AlgebraModule(ambient.algebra, blocks, act,
                        provenance=("submodule", name), check=False)
    inc = ModuleMap(sub, ambient, {k: dict(r) for k, r in enumerate(rows)})
    return sub, inc


def submodule_generated(ambient, vectors):
    """Closure of the given vectors under the algebra action.

    Returns (submodule, inclusion).  Closing under the cached generator set
    plus the idempotent projections suffices, since those generate the
    algebra.
    """
    A = ambient.algebra
    rs = RowSpace()
    queue = []
    for v in vectors:
        for li in range(len(A.labels)):
            comp = ambient.act_element(A.idem_vecs[li], dict(v))
            if comp and rs.add(comp):
                queue.append(comp)
    gens = A.generators()
    while queue:
        nxt = []
        for r in queue:
            for _, _, g in gens:
                img = ambient.act_element(g, r)
                if img and rs.add(img):
                    nxt.append(img)
        queue = nxt
    return _module_from_rowspace(ambient, rs)


def quotient_module(module, sub):
    """M / U for a stable subspace U (RowSpace or row list).

    Returns (quotient, projection map).
    """
    rs = sub if isinstance(sub, RowSpace) else RowSpace().extend(sub)
    piv = set(rs.pivots())
    keep = [c for c in range(module.dim) if c not in piv]
    pos = {c: k for k, c in enumerate(keep)}
    blocks = [module.blocks[c] for c in keep]

    def project(vec):
        red = rs.reduce(vec)
        return {pos[i]: c for i, c in red.items()}

    act = [dict() for _ in range(module.algebra.dim)]
    for b in range(module.algebra.dim):
        for k, c in enumerate(keep):
            img = module.act_basis(b, {c: ONE})
            col = project(img)
            if col:
                act[b][k] = col
    quot = AlgebraModule(module.algebra, blocks, act,
                         provenance=("quotient", module.provenance),
                         check=False)
    proj = ModuleMap(module, quot,
                     {j: project({j: ONE}) for j in range(module.dim)})
    return quot, proj


def dualize(module):
    """Vector space dual over the opposite algebra (transposed actions)."""
    from .algebra import opposite
    op = opposite(module.algebra)
    act = []
    for b in range(module.algebra.dim):
        mat = module.act[b]
        t = {}
        for j, v in mat.items():
            for i, c in v.items():
                t.setdefault(i, {})[j] = c
        act.append(t)
    return AlgebraModule(op, module.blocks, act,
                         provenance=("dual", module.provenance), check=False)


# ---------------------------------------------------------------------------
# Hom spaces


def hom_space(m, n):
    """Canonical basis of the intertwiner space Hom_A(m, n).

    The unknown matrix is block diagonal (maps commute with the idempotent
    projections); one linear condition per algebra generator.
    """
    if m.algebra is not n.algebra:
        raise InputError("Hom between modules over different algebras")
    if m.dim == 0 or n.dim == 0:
        return []
    unknowns = []  # (m coord, n coord)
    uidx = {}
    for li in range(len(m.algebra.labels)):
        for j in m.block_coords(li):
            for i in n.block_coords(li):
                uidx[(j, i)] = len(unknowns)
                unknowns.append((j, i))
    rows = []
    for s, t, g in m.algebra.generators():
        gm = [m.act_element(g, {j: ONE}) for j in range(m.dim)]
        gn = [n.act_element(g, {j: ONE}) for j in range(n.dim)]
        for j in m.block_coords(s):
            # f(g . e_j) = g . f(e_j): one equation per coordinate of n
            row_for = {}
            for mj, c in gm[j].items():
                for i in n.block_coords(t):
                    row = row_for.setdefault(i, {})
                    u = uidx[(mj, i)]
                    row[u] = row.get(u, ZERO) + c
            for i2 in n.block_coords(s):
                u = uidx[(j, i2)]
                for i, c in gn[i2].items():
                    row = row_for.setdefault(i, {})
                    row[u] = row.get(u, ZERO) - c
            for row in row_for.values():
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    sols = kernel_of_rows(rows, len(unknowns))
    maps = []
    for sol in sols:
        cols = {}
        for u, c in sol.items():
            j, i = unknowns[u]
            cols.setdefault(j, {})[i] = c
        maps.append(ModuleMap(m, n, cols))
    return maps


def hom_from_projective(p, n):
    """Basis of Hom(P, N) for P a projective cover sum, solve-free.

    Requires p.summand_labels (set by projective_cover/direct sums of
    projectives): Hom(Ae, N) = e.N via phi -> phi(e).
    """
    labels = p.summand_labels  # list of (label, coord offset, proj coords)
    maps = []
    for label, off, coords in labels:
        li = p.algebra.label_index(label)
        for ncoord in n.block_coords(li):
            cols = {}
            for k, bidx in enumerate(coords):
                img = n.act_basis(bidx, {ncoord: ONE})
                if img:
                    cols[off + k] = img
            maps.append(ModuleMap(p, n, cols))
    return maps


# ---------------------------------------------------------------------------
# kernels, images, covers, Ext


MapCalc = namedtuple("MapCalc", "kernel kernel_inclusion image "
                                "image_inclusion cokernel cokernel_projection")


def map_calculus(f):
    rows = []
    by_target = {}
    for j, v in f.cols.items():
        for i, c in v.items():
            by_target.setdefault(i, {})[j] = c
    rows = list(by_target.values())
    ker_rows = kernel_of_rows(rows, f.source.dim)
    krs = RowSpace().extend(ker_rows)
    kernel, kinc = _module_from_rowspace(f.source, krs)
    irs = f.image_space()
    image, iinc = _module_from_rowspace(f.target, irs)
    coker, cproj = quotient_module(f.target, irs)
    return MapCalc(kernel, kinc, image, iinc, coker, cproj)


def radical_series(module):
    """[M, rad M, rad^2 M, ..., 0] as row spaces."""
    A = module.algebra
    rad_rows = A.radical().basis()
    series = [module.full_space()]
    cur = series[0]
    while cur.dim:
        nxt = RowSpace()
        for r in rad_rows:
            for v in cur.basis():
                img = module.act_element(r, v)
                if img:
                    nxt.add(img)
        series.append(nxt)
        if nxt.dim == cur.dim:
            raise TheoremViolationError("radical series does not terminate")
        cur = nxt
    return series


def socle_series(module):
    """[0, soc M, soc^2 M, ..., M] as row spaces."""
    A = module.algebra
    rad_rows = A.radical().basis()
    series = [RowSpace()]
    cur = series[0]
    while cur.dim < module.dim:
        # next = {v : rad . v inside cur}
        rows = []
        by_target = {}
        for r in rad_rows:
            for j in range(module.dim):
                img = module.act_element(r, {j: ONE})
                red = cur.reduce(img)
                for i, c in red.items():
                    by_target.setdefault((id(r), i), {})[j] = c
        rows = list(by_target.values())
        nxt = RowSpace().extend(kernel_of_rows(rows, module.dim))
        if nxt.dim == cur.dim:
            raise TheoremViolationError("socle series does not terminate")
        series.append(nxt)
        cur = nxt
    return series


def _layer_counts(module, big, small):
    """Composition factor counts of big/small, per label."""
    counts = {}
    for li in range(len(module.algebra.labels)):
        name = module.algebra.labels[li]
        coords = set(module.block_coords(li))
        d = (sum(1 for p in big.pivots() if p in coords)
             - sum(1 for p in small.pivots() if p in coords))
        if d:
            counts[name] = d
    return counts


LoewyData = namedtuple("LoewyData",
                       "radical_layers socle_layers top factors")


def loewy_data(module):
    """Radical layers (top first), socle layers, top, and factor counts.

    Counting per label is valid because each subspace in both series is
    block pure, so block dimensions of subquotients are composition factor
    multiplicities.
    """
    rad = radical_series(module)
    soc = socle_series(module)
    rad_layers = [_layer_counts(module, rad[k], rad[k + 1])
                  for k in range(len(rad) - 1)]
    soc_layers = [_layer_counts(module, soc[k + 1], soc[k])
                  for k in range(len(soc) - 1)]
    factors = {}
    for layer in rad_layers:
        for k, v in layer.items():
            factors[k] = factors.get(k, 0) + v
    top = rad_layers[0] if rad_layers else {}
    return LoewyData(rad_layers, soc_layers, top, factors)


def is_rigid(module):
    """True iff the radical and socle series coincide as subspace flags."""
    rad = radical_series(module)
    soc = socle_series(module)
    if len(rad) != len(soc):
        return False
    n = len(rad) - 1
    for k in range(n + 1):
        a = rad[k]
        b = soc[n - k]
        if a.dim != b.dim or any(not b.contains(r) for r in a.basis()):
            return False
    return True


def projective_cover(module):
    """Surjection from a sum of indecomposable projectives onto top(M)."""
    if module.dim == 0:
        raise InputError("projective cover of the zero module")
    A = module.algebra
    rad = radical_series(module)[1]
    keep = [c for c in range(module.dim) if c not in set(rad.pivots())]
    cols = {}
    blocks = []
    act = [dict() for _ in range(A.dim)]
    offset = 0
    summand_labels = []
    for c in keep:
        # one copy of A.e_label per top coordinate; the cover sends the
        # generator of the copy to that coordinate's unit vector
        li = module.blocks[c]
        label = A.labels[li]
        coords = [i for i, b in enumerate(A.basis) if b.src == li]
        pos = {i: k + offset for k, i in enumerate(coords)}
        blocks.extend(A.basis[i].tgt for i in coords)
        for (i, j), v in A.table.items():
            if j in pos:
                act[i][pos[j]] = {pos[k]: cc for k, cc in v.items()}
        summand_labels.append((label, offset, coords))
        for i in coords:
            img = module.act_basis(i, {c: ONE})
            if img:
                cols[pos[i]] = img
        offset += len(coords)
    cover = AlgebraModule(A, blocks, act, provenance="projective-cover",
                          check=False)
    cover.summand_labels = summand_labels
    f = ModuleMap(cover, module, cols)
    if not f.is_surjective():
        raise TheoremViolationError("projective cover is not surjective")
    return f


def ext1(m, n):
    """dim Ext^1(M, N) and cocycle representatives.

    Uses the cover P -> M with kernel W: Ext^1 = Hom(W, N) / restrictions
    of Hom(P, N).
    """
    if m.dim == 0 or n.dim == 0:
        return 0, []
    cover = projective_cover(m)
    calc = map_calculus(cover)
    omega, inc = calc.kernel, calc.kernel_inclusion
    if omega.dim == 0:
        return 0, []
    hom_w = hom_space(omega, n)
    if not hom_w:
        return 0, []
    restr = RowSpace()
    for g in hom_from_projective(cover.source, n):
        restr.add(g.compose(inc).flatten())
    dim = len(hom_w) - restr.dim
    reps = []
    acc = restr.copy()
    for f in hom_w:
        if acc.add(f.flatten()):
            reps.append(f)
    return dim, reps


def global_dimension(algebra, bound):
    """Max projective dimension of the simples, truncated at bound."""
    if bound < 1:
        raise InputError("bound must be >= 1")
    worst = 0
    for label in algebra.labels:
        cur = simple_module(algebra, label)
        steps = 0
        while True:
            cover = projective_cover(cur)
            omega = map_calculus(cover).kernel
            if omega.dim == 0:
                break
            cur = omega
            steps += 1
            if steps > bound:
                return f">{bound}"
        worst = max(worst, steps)
    return worst


# ---------------------------------------------------------------------------
# endomorphism rings, decomposition, isomorphism


def _endo_data(module):
    """(basis maps, product coord table, radical row space) of End(M)."""
    maps = hom_space(module, module)
    span = SpanSolver()
    for f in maps:
        span.add(f.flatten())
    k = len(maps)
    table = {}
    for i, f in enumerate(maps):
        for j, g in enumerate(maps):
            coords = span.coords_of(f.compose(g).flatten())
            if coords is None:
                raise TheoremViolationError("End(M) is not closed")
            table[(i, j)] = coords
    trace_of = [ZERO] * k
    for m in range(k):
        trace_of[m] = sum((table[(m, j)].get(j, ZERO) for j in range(k)), ZERO)
    rows = []
    for j in range(k):
        row = {}
        for i in range(k):
            t = sum((c * trace_of[mm] for mm, c in table[(i, j)].items()), ZERO)
            if t:
                row[i] = t
        rows.append(row)
    rad = RowSpace().extend(kernel_of_rows(rows, k))
    return maps, table, rad


def is_indecomposable(module):
    """End(M)/rad End(M) one dimensional (split simple top)."""
    if module.dim == 0:
        raise InputError("the zero module is not indecomposable")
    maps, _, rad = _endo_data(module)
    return len(maps) - rad.dim == 1


def _poly_mul(a, b):
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [ZERO] * max(len(a) - db, 1)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lb
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


def _poly_gcd_ext(a, b):
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [ONE], [ZERO]
    t0, t1 = [ZERO], [ONE]

    def trim(p):
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        return p

    while any(c != 0 for c in r1):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, trim(r)
        s0, s1 = s1, trim(svec_poly_sub(s0, _poly_mul(q, s1)))
        t0, t1 = t1, trim(svec_poly_sub(t0, _poly_mul(q, t1)))
    lead = r0[-1]
    return ([c / lead for c in r0], [c / lead for c in s0],
            [c / lead for c in t0])


def svec_poly_sub(a, b):
    out = [ZERO] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return out


def _matrix_minpoly(module, f):
    """Monic minimal polynomial of the endomorphism f, low degree first."""
    span = SpanSolver()
    powers = [ModuleMap.identity(module)]
    span.add(powers[0].flatten())
    while True:
        nxt = f.compose(powers[-1])
        coords = span.coords_of(nxt.flatten())
        if coords is not None:
            deg = len(powers)
            poly = [ZERO] * (deg + 1)
            poly[deg] = ONE
            for i, c in coords.items():
                poly[i] -= c
            return poly
        span.add(nxt.flatten())
        powers.append(nxt)


def _poly_eval_map(module, f, poly):
    out = ModuleMap.zero(module, module)
    power = ModuleMap.identity(module)
    for c in poly:
        if c:
            out = out.add(power, c)
        power = f.compose(power)
    return out


def _coprime_split(poly):
    """A coprime monic factorization (u, v) of poly, or None if primary."""
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
               for i, c in enumerate(poly))
    _, factors = sympy.Poly(expr, x).factor_list()
    if len(factors) < 2:
        return None
    base, mult = factors[0]
    u = sympy.Poly(base ** mult, x)
    v = sympy.Poly(1, x)
    for b, m2 in factors[1:]:
        v = v * sympy.Poly(b ** m2, x)

    def to_list(p):
        cs = p.all_coeffs()[::-1]
        out = [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in cs]
        lead = out[-1]
        return [c / lead for c in out]

    return to_list(u), to_list(sympy.Poly(v, x))


def decompose(module, _depth=0):
    """Indecomposable summands via primary decomposition of endomorphisms.

    For a candidate f in End(M) whose minimal polynomial splits into coprime
    factors u*v, M = ker u(f) + ker v(f) is a direct module decomposition.
    A module whose End/rad is one dimensional is certainly indecomposable;
    otherwise candidates are drawn from the End basis, pairwise sums, and a
    seeded random sweep.
    """
    if module.dim == 0:
        return []
    maps, table, rad = _endo_data(module)
    if len(maps) - rad.dim == 1:
        return [module]

    def try_split(f):
        poly = _matrix_minpoly(module, f)
        split = _coprime_split(poly)
        if split is None:
            return None
        u, v = split
        left = map_calculus(_poly_eval_map(module, f, u)).kernel
        if left.dim == 0 or left.dim == module.dim:
            return None
        right = map_calculus(_poly_eval_map(module, f, v)).kernel
        return left, right

    candidates = list(maps)
    for i in range(len(maps)):
        for j in range(i + 1, len(maps)):
            candidates.append(maps[i].add(maps[j]))
    rng = random.Random(20240 + _depth)
    for _ in range(300):
        f = ModuleMap.zero(module, module)
        for g in maps:
            f = f.add(g, Fraction(rng.randint(-4, 4)))
        candidates.append(f)
    for f in candidates:
        got = try_split(f)
        if got is not None:
            left, right = got
            if left.dim + right.dim != module.dim:
                continue
            return (decompose(left, _depth + 1)
                    + decompose(right, _depth + 1))
    # No splitting found: End/rad behaves like a division algebra.
    return [module]


def is_isomorphic(m, n):
    """Exact isomorphism test.

    Equal dimensions plus a split pair (g . f invertible) certifies an
    isomorphism; for indecomposables the converse holds because all products
    landing in rad End would keep the identity out of reach.
    """
    if m.algebra is not n.algebra:
        return False
    if m.dim != n.dim:
        return False
    for li in range(len(m.algebra.labels)):
        if len(m.block_coords(li)) != len(n.block_coords(li)):
            return False
    if m.dim == 0:
        return True
    h1 = hom_space(m, n)
    h2 = hom_space(n, m)
    for f in h1:
        for g in h2:
            if g.compose(f).is_invertible():
                return True
    if is_indecomposable(m) and is_indecomposable(n):
        return False
    left = decompose(m)
    right = list(decompose(n))
    if len(left) != len(right):
        return False
    for a in left:
        hit = next((k for k, b in enumerate(right) if is_isomorphic(a, b)),
                   None)
        if hit is None:
            return False
        right.pop(hit)
    return True
