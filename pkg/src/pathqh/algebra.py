"""Finite dimensional algebras given by a basis with structure constants.

One representation serves every algebra in the pipeline: monomial path
algebra quotients, linearly presented quotients, corners, opposites, and
endomorphism algebras.  A basis element carries a (source idempotent, target
idempotent) pair -- the Peirce block it lives in -- and an optional path
grade.  The multiplication table is sparse: absent entries are zero.

Monomial algebras additionally carry their basis paths; products of basis
elements are then single basis elements or zero (`multiplicative` flag),
which the monomial-ideal layer exploits.
"""

import random
from fractions import Fraction

from .errors import BuildError, InputError
from .linalg import ONE, ZERO, RowSpace, svec_add, svec_scale
from .quiver import Path, compose, contains_subpath

ASSOC_EXHAUSTIVE_LIMIT = 40
ASSOC_SAMPLES = 1000


class BasisElement:
    __slots__ = ("name", "src", "tgt", "grade")

    def __init__(self, name, src, tgt, grade=None):
        self.name = name
        self.src = src  # label index of the source idempotent
        self.tgt = tgt  # label index of the target idempotent
        self.grade = grade

    def __repr__(self):
        return f"<{self.name}>"


class FiniteDimAlgebra:
    """Basis + structure constants, with labelled orthogonal idempotents."""

    def __init__(self, labels, basis, table, idem_vecs, provenance="general",
                 graded=False, degree_one_generated=False, paths=None,
                 quiver=None, forbidden=None, check=True, seed=0):
        self.labels = tuple(labels)
        self.basis = list(basis)
        self.table = table  # (i, j) -> sparse product vector of b_i * b_j
        self.idem_vecs = list(idem_vecs)  # per label, sparse vector
        self.provenance = provenance
        self.graded = graded
        self.degree_one_generated = degree_one_generated
        self.paths = paths  # aligned with basis when path-derived
        self.quiver = quiver
        self.forbidden = forbidden
        self._blocks = None
        self._rad = None
        self._rad_powers = None
        self._generators = None
        self.multiplicative = all(
            len(v) == 1 and next(iter(v.values())) == 1
            for v in table.values())
        if check:
            self._check(seed)

    # -- bookkeeping --------------------------------------------------------

    @property
    def dim(self):
        return len(self.basis)

    def label_index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown idempotent label {label!r}")

    def block_indices(self, src, tgt):
        if self._blocks is None:
            self._blocks = {}
            for i, b in enumerate(self.basis):
                self._blocks.setdefault((b.src, b.tgt), []).append(i)
        return self._blocks.get((src, tgt), [])

    def unit(self):
        out = {}
        for v in self.idem_vecs:
            out = svec_add(out, v)
        return out

    def mul_basis(self, i, j):
        return self.table.get((i, j), {})

    def mul(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self.table.get((i, j))
                if prod:
                    out = svec_add(out, prod, a * b)
        return out

    def names(self):
        return [b.name for b in self.basis]

    def __repr__(self):
        return (f"FiniteDimAlgebra(dim={self.dim}, labels={self.labels}, "
                f"provenance={self.provenance!r})")

    # -- build-time invariants ----------------------------------------------

    def _check(self, seed):
        for (i, j), v in self.table.items():
            if self.basis[i].src != self.basis[j].tgt:
                raise BuildError("nonzero product across mismatched blocks")
            for k in v:
                if (self.basis[k].src != self.basis[j].src
                        or self.basis[k].tgt != self.basis[i].tgt):
                    raise BuildError("product leaves its Peirce block")
        one = self.unit()
        for li, e in enumerate(self.idem_vecs):
            if self.mul(e, e) != e:
                raise BuildError(f"idempotent {self.labels[li]} is not idempotent")
            for lj, f in enumerate(self.idem_vecs):
                if li != lj and self.mul(e, f):
                    raise BuildError("idempotents are not orthogonal")
        for i in range(self.dim):
            b = {i: ONE}
            if self.mul(one, b) != b or self.mul(b, one) != b:
                raise BuildError("idempotents do not sum to the identity")
        self._check_associativity(seed)

    def _check_associativity(self, seed):
        n = self.dim
        if n <= ASSOC_EXHAUSTIVE_LIMIT:
            triples = ((i, j, k) for i in range(n) for j in range(n)
                       for k in range(n))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(ASSOC_SAMPLES))
        for i, j, k in triples:
            left = self.mul(self.mul_basis(i, j), {k: ONE})
            right = self.mul({i: ONE}, self.mul_basis(j, k))
            if left != right:
                raise BuildError(
                    f"associativity fails on ({self.basis[i].name}, "
                    f"{self.basis[j].name}, {self.basis[k].name})")

    # -- radical ------------------------------------------------------------

    def radical(self):
        """Canonical row space of rad(A).

        Graded algebras: the span of positive-grade basis elements (their
        degree-zero part is the semisimple span of the idempotents).
        Otherwise: the trace-form kernel, valid in characteristic zero.
        """
        if self._rad is not None:
            return self._rad
        rs = RowSpace()
        if self.graded:
            for i, b in enumerate(self.basis):
                if b.grade:
                    rs.add({i: ONE})
        else:
            trace_of = [ZERO] * self.dim
            for m in range(self.dim):
                t = ZERO
                for k in range(self.dim):
                    t += self.table.get((m, k), {}).get(k, ZERO)
                trace_of[m] = t
            rows = []
            for j in range(self.dim):
                row = {}
                for i in range(self.dim):
                    t = ZERO
                    for m, c in self.table.get((i, j), {}).items():
                        t += c * trace_of[m]
                    if t:
                        row[i] = t
                rows.append(row)
            # rad = {x : tr(L_{x b_j}) = 0 for all j}
            from .linalg import kernel_of_rows
            for v in kernel_of_rows(rows, self.dim):
                rs.add(v)
        self._rad = rs
        return rs

    def radical_power(self, k):
        """Canonical row space of rad(A)^k (rad^0 = A)."""
        if k == 0:
            rs = RowSpace()
            for i in range(self.dim):
                rs.add({i: ONE})
            return rs
        if self.graded and self.degree_one_generated:
            rs = RowSpace()
            for i, b in enumerate(self.basis):
                if b.grade is not None and b.grade >= k:
                    rs.add({i: ONE})
            return rs
        if self._rad_powers is None:
            self._rad_powers = [self.radical()]
        while len(self._rad_powers) < k:
            prev = self._rad_powers[-1]
            rad = self._rad_powers[0]
            rs = RowSpace()
            for x in prev.basis():
                for y in rad.basis():
                    p = self.mul(x, y)
                    if p:
                        rs.add(p)
            self._rad_powers.append(rs)
        return self._rad_powers[k - 1]

    def loewy_length(self):
        k = 1
        while self.radical_power(k).dim:
            k += 1
        return k

    def generators(self):
        """Idempotent labels plus block-pure algebra generators of rad.

        Sufficient generating set for the whole algebra: together with the
        idempotents, lifts of a basis of rad/rad^2 generate (the algebra is
        basic and rad is nilpotent).  Used to cut down Hom-space systems.
        """
        if self._generators is not None:
            return self._generators
        gens = []
        if self.graded and self.degree_one_generated:
            for i, b in enumerate(self.basis):
                if b.grade == 1:
                    gens.append((b.src, b.tgt, {i: ONE}))
        else:
            rad2 = self.radical_power(2)
            w = rad2.copy()
            for row in self.radical().basis():
                # split into Peirce components so each generator is block-pure
                comps = {}
                for i, c in row.items():
                    key = (self.basis[i].src, self.basis[i].tgt)
                    comps.setdefault(key, {})[i] = c
                for (s, t), comp in sorted(comps.items()):
                    if w.add(comp):
                        gens.append((s, t, comp))
        self._generators = gens
        return gens


# ---------------------------------------------------------------------------
# monomial path algebras


def _forbidden_suffix(arrows, forbidden):
    for f in forbidden:
        fa = f.arrows
        if len(fa) <= len(arrows) and arrows[-len(fa):] == fa:
            return True
    return False


def _live_state_graph(pres):
    """Reachable (vertex, active-prefixes) automaton of live path extensions.

    A state records, for the path read so far, every proper prefix of a
    forbidden word that is currently a suffix.  The presented algebra is
    finite dimensional iff this graph is acyclic.
    """
    prefixes = set()
    for f in pres.forbidden:
        for k in range(1, len(f.arrows)):
            prefixes.add(f.arrows[:k])
    full = {f.arrows for f in pres.forbidden}

    def step(state, a):
        vertex, active = state
        if pres.quiver.arrow_source(a) != vertex:
            return None
        new_active = []
        for p in active:
            q = p + (a,)
            if q in full:
                return None  # extension dies
            if q in prefixes:
                new_active.append(q)
        if (a,) in full:
            return None
        if (a,) in prefixes:
            new_active.append((a,))
        return (pres.quiver.arrow_target(a), frozenset(new_active))

    states = {}
    order = []
    stack = [(v, frozenset()) for v in range(len(pres.quiver.vertices))]
    for s in stack:
        states[s] = []
        order.append(s)
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        for a in range(len(pres.quiver.arrows)):
            t = step(s, a)
            if t is None:
                continue
            states[s].append((a, t))
            if t not in states:
                states[t] = []
                order.append(t)
                if len(states) > 200000:
                    raise BuildError("state explosion while checking finiteness")
    return states


def _find_cycle(states):
    color = {s: 0 for s in states}
    parent = {}

    for root in states:
        if color[root]:
            continue
        stack = [(root, iter(states[root]))]
        color[root] = 1
        while stack:
            s, it = stack[-1]
            advanced = False
            for a, t in it:
                if color[t] == 0:
                    color[t] = 1
                    parent[t] = (s, a)
                    stack.append((t, iter(states[t])))
                    advanced = True
                    break
                if color[t] == 1:
                    # unwind the cycle t -> ... -> s -> t
                    cyc = [a]
                    cur = s
                    while cur != t:
                        cur, arr = parent[cur]
                        cyc.append(arr)
                    cyc.reverse()
                    return cyc
            if not advanced:
                color[s] = 2
                stack.pop()
    return None


def build_monomial_algebra(pres, check=True):
    """All paths avoiding forbidden subpaths, with concatenation product.

    Raises BuildError with a surviving cycle if the quotient is infinite
    dimensional.
    """
    states = _live_state_graph(pres)
    cyc = _find_cycle(states)
    if cyc is not None:
        q = pres.quiver
        word = "*".join(q.arrow_name(a) for a in reversed(cyc))
        raise BuildError(
            f"presentation is not finite dimensional: cycle {word} survives")

    q = pres.quiver
    paths = [q.lazy(v) for v in q.vertices]
    level = list(paths)
    while level:
        nxt = []
        for p in level:
            for a in range(len(q.arrows)):
                if q.arrow_source(a) != p.target:
                    continue
                arrows = p.arrows + (a,)
                if _forbidden_suffix(arrows, pres.forbidden):
                    continue
                nxt.append(Path(q, arrows, p.source))
        paths.extend(nxt)
        level = nxt
    paths.sort(key=lambda p: p.key())
    index = {p: i for i, p in enumerate(paths)}

    basis = [BasisElement(str(p), p.source, p.target, len(p)) for p in paths]
    table = {}
    for i, p in enumerate(paths):
        for j, r in enumerate(paths):
            c = compose(p, r)
            if c is None or pres.is_dead(c):
                continue
            table[(i, j)] = {index[c]: ONE}
    idem = [{index[q.lazy(v)]: ONE} for v in q.vertices]
    return FiniteDimAlgebra(q.vertices, basis, table, idem,
                            provenance="monomial", graded=True,
                            degree_one_generated=True, paths=paths,
                            quiver=q, forbidden=pres.forbidden, check=check)


# ---------------------------------------------------------------------------
# linearly presented path algebras


def build_presented_algebra(pres, max_degree=32, check=True):
    """Quotient of the path algebra by the two-sided ideal of the relations.

    Works degree by degree: the relations are length-homogeneous, so the
    ideal is graded.  At each degree the ideal piece is the span of the
    relations of that degree together with the arrow multiples (left and
    right) of the previous piece; the quotient basis is the canonical
    complement of surviving paths.  Stops once every path of the current
    degree lies in the ideal.
    """
    q = pres.quiver
    narrows = len(q.arrows)

    rel_by_deg = {}
    for rel in pres.relations:
        d = len(rel[0][1])
        rel_by_deg.setdefault(d, []).append(rel)

    # paths_by_deg[d][block] = ordered list of paths, block = (src, tgt)
    paths_by_deg = [dict()]
    for vi, v in enumerate(q.vertices):
        paths_by_deg[0][(vi, vi)] = [q.lazy(v)]
    path_pos = {}
    for ps in paths_by_deg[0].values():
        for i, p in enumerate(ps):
            path_pos[p] = i

    ideal = [dict()]  # ideal[d][block] = RowSpace over that block's coords
    top_degree = None
    d = 0
    while True:
        d += 1
        if d > max_degree:
            raise BuildError(
                f"presented algebra did not terminate by degree {max_degree}")
        blocks = {}
        for block, ps in paths_by_deg[d - 1].items():
            s, t = block
            for p in ps:
                for a in range(narrows):
                    if q.arrow_source(a) != t:
                        continue
                    newp = Path(q, p.arrows + (a,), p.source)
                    blocks.setdefault((s, q.arrow_target(a)), []).append(newp)
        for ps in blocks.values():
            ps.sort(key=lambda p: p.key())
        npaths = sum(len(ps) for ps in blocks.values())
        if npaths > 20000:
            raise BuildError("path explosion in presented-algebra build")
        paths_by_deg.append(blocks)
        pos = {p: i for ps in blocks.values() for i, p in enumerate(ps)}
        path_pos.update(pos)

        rs_of = {}

        def vec_of(terms):
            return {pos[p]: c for c, p in terms if c}

        for rel in rel_by_deg.get(d, []):
            block = (rel[0][1].source, rel[0][1].target)
            rs_of.setdefault(block, RowSpace()).add(vec_of(
                [(c, p) for c, p in rel]))
        for block, rs in ideal[d - 1].items():
            s, t = block
            plist = paths_by_deg[d - 1][block]
            for row in rs.basis():
                for a in range(narrows):
                    # left multiply by the arrow: a . w
                    if q.arrow_source(a) == t:
                        nb = (s, q.arrow_target(a))
                        vec = {}
                        for idx, c in row.items():
                            p = plist[idx]
                            vec[pos[Path(q, p.arrows + (a,), p.source)]] = c
                        rs_of.setdefault(nb, RowSpace()).add(vec)
                    # right multiply: w . a
                    if q.arrow_target(a) == s:
                        nb = (q.arrow_source(a), t)
                        vec = {}
                        for idx, c in row.items():
                            p = plist[idx]
                            vec[pos[Path(q, (a,) + p.arrows,
                                         q.arrow_source(a))]] = c
                        rs_of.setdefault(nb, RowSpace()).add(vec)
        ideal.append(rs_of)
        survivors = npaths - sum(rs.dim for rs in rs_of.values())
        if npaths == 0 or survivors == 0:
            top_degree = d
            break

    # canonical basis: lazy paths plus non-pivot paths of each lower degree
    basis_paths = []
    for dd in range(top_degree):
        for block in sorted(paths_by_deg[dd]):
            ps = paths_by_deg[dd][block]
            rs = ideal[dd].get(block) if dd < len(ideal) else None
            dead = set(rs.pivots()) if rs is not None else set()
            for i, p in enumerate(ps):
                if i not in dead:
                    basis_paths.append(p)
    basis_paths.sort(key=lambda p: p.key())
    bindex = {p: i for i, p in enumerate(basis_paths)}

    def normal_form(p):
        """Class of a free path as a vector over the surviving basis."""
        dd = len(p)
        if dd >= top_degree:
            return {}
        block = (p.source, p.target)
        rs = ideal[dd].get(block)
        vec = {path_pos[p]: ONE}
        if rs is not None:
            vec = rs.reduce(vec)
        plist = paths_by_deg[dd][block]
        return {bindex[plist[i]]: c for i, c in vec.items()}

    table = {}
    for i, p in enumerate(basis_paths):
        for j, r in enumerate(basis_paths):
            c = compose(p, r)
            if c is None:
                continue
            nf = normal_form(c)
            if nf:
                table[(i, j)] = nf
    basis = [BasisElement(str(p), p.source, p.target, len(p))
             for p in basis_paths]
    idem = [{bindex[q.lazy(v)]: ONE} for v in q.vertices]
    return FiniteDimAlgebra(q.vertices, basis, table, idem,
                            provenance="presented", graded=True,
                            degree_one_generated=True, paths=basis_paths,
                            quiver=q, check=check)


# ---------------------------------------------------------------------------
# opposite, corner, quotient


def opposite(alg):
    """Same basis with reversed multiplication and swapped blocks.

    Cached: modules over the opposite built at different times share one
    algebra instance, so Hom spaces between them stay well defined.
    """
    cached = getattr(alg, "_op_cache", None)
    if cached is not None:
        return cached
    basis = [BasisElement(b.name, b.tgt, b.src, b.grade) for b in alg.basis]
    table = {(j, i): dict(v) for (i, j), v in alg.table.items()}
    paths = None
    quiver = None
    forbidden = None
    if alg.paths is not None and alg.quiver is not None:
        quiver = alg.quiver.reverse()
        paths = [p.reverse(quiver) for p in alg.paths]
        if alg.forbidden is not None:
            forbidden = tuple(f.reverse(quiver) for f in alg.forbidden)
    op = FiniteDimAlgebra(alg.labels, basis, table,
                          [dict(v) for v in alg.idem_vecs],
                          provenance=alg.provenance, graded=alg.graded,
                          degree_one_generated=alg.degree_one_generated,
                          paths=paths, quiver=quiver, forbidden=forbidden,
                          check=False)
    alg._op_cache = op
    op._op_cache = alg
    return op


def corner(alg, labels):
    """eAe for e the sum of the chosen idempotents."""
    chosen = [str(x) for x in labels]
    if not chosen:
        raise InputError("corner requires a nonempty vertex subset")
    for c in chosen:
        alg.label_index(c)
    keep_labels = [l for l in alg.labels if l in chosen]
    lmap = {alg.labels.index(l): k for k, l in enumerate(keep_labels)}
    keep = [i for i, b in enumerate(alg.basis)
            if b.src in lmap and b.tgt in lmap]
    imap = {i: k for k, i in enumerate(keep)}
    basis = [BasisElement(alg.basis[i].name, lmap[alg.basis[i].src],
                          lmap[alg.basis[i].tgt], alg.basis[i].grade)
             for i in keep]
    table = {}
    for (i, j), v in alg.table.items():
        if i in imap and j in imap:
            table[(imap[i], imap[j])] = {imap[k]: c for k, c in v.items()}
    idem = []
    for l in keep_labels:
        old = alg.idem_vecs[alg.labels.index(l)]
        idem.append({imap[k]: c for k, c in old.items()})
    paths = [alg.paths[i] for i in keep] if alg.paths is not None else None
    return FiniteDimAlgebra(keep_labels, basis, table, idem,
                            provenance=alg.provenance, graded=alg.graded,
                            degree_one_generated=False, paths=paths,
                            quiver=alg.quiver, check=False)


def quotient_algebra(alg, ideal_rows, rad_rows=None):
    """A / I for a two-sided ideal I given by spanning sparse vectors.

    Returns (quotient algebra, surviving label list, reduce function).
    A label survives when the class of its idempotent is nonzero.
    """
    rs = RowSpace()
    for r in ideal_rows:
        rs.add(r)
    piv = set(rs.pivots())
    for p, row in rs.rows.items():
        blocks = {(alg.basis[i].src, alg.basis[i].tgt) for i in row}
        if len(blocks) > 1:
            raise BuildError("ideal is not Peirce-block pure")
    keep = [i for i in range(alg.dim) if i not in piv]
    imap = {i: k for k, i in enumerate(keep)}

    def reduce_vec(v):
        red = rs.reduce(v)
        return {imap[i]: c for i, c in red.items()}

    surviving = []
    idem = []
    for li, l in enumerate(alg.labels):
        e = reduce_vec(alg.idem_vecs[li])
        if e:
            surviving.append(l)
            idem.append(e)
    lmap = {}
    for li, l in enumerate(alg.labels):
        if l in surviving:
            lmap[li] = surviving.index(l)
    basis = []
    for i in keep:
        b = alg.basis[i]
        if b.src not in lmap or b.tgt not in lmap:
            raise BuildError("ideal kills an idempotent but not its block")
        basis.append(BasisElement(b.name, lmap[b.src], lmap[b.tgt], None))
    table = {}
    for ki, i in enumerate(keep):
        for kj, j in enumerate(keep):
            prod = alg.table.get((i, j))
            if not prod:
                continue
            red = reduce_vec(prod)
            if red:
                table[(ki, kj)] = red
    quot = FiniteDimAlgebra(surviving, basis, table, idem,
                            provenance="general", graded=False,
                            degree_one_generated=False, check=False)
    if rad_rows is not None:
        rr = RowSpace()
        for r in rad_rows:
            v = reduce_vec(r)
            if v:
                rr.add(v)
        quot._rad = rr
    return quot, surviving, reduce_vec


def is_self_injective(alg):
    """True iff every indecomposable injective left module is projective."""
    from . import modules
    op = opposite(alg)
    for label in alg.labels:
        inj = modules.dualize(modules.projective_module(op, label))
        if not any(modules.is_isomorphic(inj,
                                         modules.projective_module(alg, l))
                   for l in alg.labels):
            return False
    return True
