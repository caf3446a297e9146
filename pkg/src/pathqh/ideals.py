"""Principal/monomial left ideals of a monomial algebra.

Everything here is combinatorial: for a multiplicative basis (products of
basis elements are single basis elements or zero) the ideal R.m has basis
{q.m != 0}, its annihilator is a set of basis elements, surjections are
annihilator containments, and Hom spaces between ideals have bases indexed
by single target elements.  Exact linear algebra enters only through the
module layer when cokernels or cross-checks are requested.
"""

from collections import namedtuple

from .errors import InputError, TheoremViolationError, UnsupportedInputError
from .linalg import ONE
from . import modules
from .modules import AlgebraModule, ModuleMap


def _require_monomial(alg):
    if alg.provenance != "monomial" or not alg.multiplicative:
        raise UnsupportedInputError(
            "operation requires a monomial algebra")


def _basis_key(alg, i):
    if alg.paths is not None:
        return alg.paths[i].key()
    b = alg.basis[i]
    return (b.grade if b.grade is not None else 0, b.name)


class MonomialIdeal:
    """The left ideal R.m for a basis monomial m."""

    def __init__(self, algebra, gen):
        _require_monomial(algebra)
        self.algebra = algebra
        self.gen = gen
        self.head = algebra.basis[gen].tgt
        elements = []
        cofactor = {}
        for q in range(algebra.dim):
            if algebra.basis[q].src != self.head:
                continue
            prod = algebra.mul_basis(q, gen)
            if prod:
                k = next(iter(prod))
                elements.append(k)
                cofactor[k] = q
        self.elements = tuple(sorted(elements,
                                     key=lambda k: _basis_key(algebra, k)))
        self.cofactor = cofactor
        self.ann = frozenset(q for q in range(algebra.dim)
                             if algebra.basis[q].src == self.head
                             and not algebra.mul_basis(q, gen))

    @property
    def dim(self):
        return len(self.elements)

    @property
    def layer(self):
        return self.algebra.dim - self.dim

    @property
    def name(self):
        return self.algebra.basis[self.gen].name

    @property
    def head_label(self):
        return self.algebra.labels[self.head]

    def module(self):
        if getattr(self, "_module", None) is None:
            alg = self.algebra
            pos = {k: i for i, k in enumerate(self.elements)}
            blocks = [alg.basis[k].tgt for k in self.elements]
            act = [dict() for _ in range(alg.dim)]
            for b in range(alg.dim):
                for k in self.elements:
                    prod = alg.mul_basis(b, k)
                    if prod:
                        img = next(iter(prod))
                        act[b][pos[k]] = {pos[img]: ONE}
            m = AlgebraModule(alg, blocks, act, provenance=("ideal", self.name),
                              check=False)
            m.element_positions = pos
            self._module = m
        return self._module

    def __repr__(self):
        return f"MonomialIdeal({self.name}, dim={self.dim})"


def layer(ideal):
    return ideal.layer


def surjection_exists(m, n):
    """True iff the canonical map gen(m) -> gen(n) is a well defined epi."""
    if m.algebra is not n.algebra:
        raise InputError("ideals over different algebras")
    return m.head == n.head and m.ann <= n.ann


def hom_targets(m, n):
    """Element indices v of n with Hom(Rm, Rn) = span{gen(m) -> v}."""
    alg = m.algebra
    out = []
    for v in n.elements:
        if alg.basis[v].tgt != m.head:
            continue
        if all(not alg.mul_basis(q, v) for q in m.ann):
            out.append(v)
    return out


def element_map(m, n, v, coeff=ONE):
    """The module map Rm -> Rn with gen(m) -> coeff * v."""
    alg = m.algebra
    mm, nm = m.module(), n.module()
    cols = {}
    for k in m.elements:
        p = m.cofactor[k]
        prod = alg.mul_basis(p, v)
        if prod:
            cols[mm.element_positions[k]] = {
                nm.element_positions[next(iter(prod))]: coeff}
    return ModuleMap(mm, nm, cols)


def iso_classes(alg):
    """One canonical representative per isomorphism class of monomial ideals.

    Rm = Rn iff the heads agree and the annihilators are equal; the
    representative has the minimal generator in (length, lexicographic)
    order, so the projectives (lazy generators) represent their classes.
    """
    _require_monomial(alg)
    cache = getattr(alg, "_ideal_classes", None)
    if cache is not None:
        return cache
    groups = {}
    for g in sorted(range(alg.dim), key=lambda i: _basis_key(alg, i)):
        ideal = MonomialIdeal(alg, g)
        key = (ideal.head, ideal.ann)
        if key not in groups:
            groups[key] = ideal
            ideal.members = [g]
        else:
            groups[key].members.append(g)
    reps = sorted(groups.values(),
                  key=lambda c: (c.layer, c.head, _basis_key(alg, c.gen)))
    alg._ideal_classes = reps
    return reps


IdeallyOrdered = namedtuple("IdeallyOrdered", "holds witness")


def is_ideally_ordered(alg):
    """Checks every same-head pair of basis monomials for a surjection."""
    _require_monomial(alg)
    cache = getattr(alg, "_ideally_ordered", None)
    if cache is not None:
        return cache
    ideals = [MonomialIdeal(alg, g) for g in range(alg.dim)]
    by_head = {}
    for i in ideals:
        by_head.setdefault(i.head, []).append(i)
    result = IdeallyOrdered(True, None)
    for head, group in sorted(by_head.items()):
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                m, n = group[a], group[b]
                if not (m.ann <= n.ann or n.ann <= m.ann):
                    result = IdeallyOrdered(False, (m.name, n.name))
                    break
            if not result.holds:
                break
        if not result.holds:
            break
    alg._ideally_ordered = result
    return result


# ---------------------------------------------------------------------------
# minimal approximations


LeftApproximation = namedtuple(
    "LeftApproximation",
    "ideal targets surjective kernel_dim cokernel map")
# targets: list of (class representative, target element index)


def _reachable(alg, pairs, cls):
    """Hom(Gamma, cls) elements hit by maps factoring through the pairs."""
    out = set()
    for rep, v in pairs:
        pv = rep.cofactor[v]  # v = pv . gen(rep)
        for w in hom_targets(rep, cls):
            prod = alg.mul_basis(pv, w)
            if prod:
                out.add(next(iter(prod)))
    return out


def _is_approximation(alg, ideal, pairs, candidates):
    for cls in candidates:
        want = set(hom_targets(ideal, cls))
        if not want <= _reachable(alg, pairs, cls):
            return False
    return True


def _kernel_dim(alg, ideal, pairs):
    k = 0
    for el in ideal.elements:
        p = ideal.cofactor[el]
        if all(not alg.mul_basis(p, v) for _, v in pairs):
            k += 1
    return k


def minimal_left_approximation(ideal, classes=None):
    """Minimal left approximation of the ideal into the higher layers.

    Ideally ordered algebras: the target is the largest proper quotient
    class at the same head (or zero) and the map sends generator to
    generator.  In general the multiplicity approximation is minimized by
    greedy summand removal, re-testing the approximation property after
    each drop.
    """
    alg = ideal.algebra
    if classes is None:
        classes = iso_classes(alg)
    gamma = ideal.layer
    candidates = [c for c in classes if c.layer > gamma]

    if is_ideally_ordered(alg).holds:
        quots = [c for c in candidates
                 if c.head == ideal.head and ideal.ann <= c.ann]
        pairs = []
        if quots:
            best = max(quots, key=lambda c: c.dim)
            pairs = [(best, best.gen)]
    else:
        pairs = [(c, v) for c in candidates for v in hom_targets(ideal, c)]
        changed = True
        while changed:
            changed = False
            for k in range(len(pairs)):
                trial = pairs[:k] + pairs[k + 1:]
                if _is_approximation(alg, ideal, trial, candidates):
                    pairs = trial
                    changed = True
                    break
        if not _is_approximation(alg, ideal, pairs, candidates):
            raise TheoremViolationError("approximation property lost")

    kdim = _kernel_dim(alg, ideal, pairs)
    image_dim = ideal.dim - kdim
    target_dim = sum(rep.dim for rep, _ in pairs)
    surjective = image_dim == target_dim

    if pairs:
        mods = [rep.module() for rep, _ in pairs]
        total, incs, _ = modules.direct_sum(mods)
        amap = ModuleMap(ideal.module(), total, {})
        for k, (rep, v) in enumerate(pairs):
            amap = amap.add(incs[k].compose(element_map(ideal, rep, v)))
        coker = modules.map_calculus(amap).cokernel
    else:
        total = modules.zero_module(alg)
        amap = ModuleMap(ideal.module(), total, {})
        coker = total
    return LeftApproximation(ideal, pairs, surjective, kdim, coker, amap)


RightApproximation = namedtuple(
    "RightApproximation", "ideal sources map kernel_dim")


def minimal_right_approximation(ideal):
    """rad(Gamma) -> Gamma: the arrow multiples of the generator include.

    The radical of R.m decomposes as the direct sum of the ideals R.(a.m)
    over arrows a (disjoint basis supports), and the inclusion is the
    minimal right approximation with zero kernel.
    """
    alg = ideal.algebra
    if not (alg.graded and alg.degree_one_generated):
        raise UnsupportedInputError(
            "right approximations need an arrow-generated monomial algebra")
    sources = []
    seen = set()
    for a in range(alg.dim):
        if alg.basis[a].grade != 1 or alg.basis[a].src != alg.basis[ideal.gen].tgt:
            continue
        prod = alg.mul_basis(a, ideal.gen)
        if prod:
            k = next(iter(prod))
            if k not in seen:
                seen.add(k)
                sources.append(MonomialIdeal(alg, k))
    support = set()
    for s in sources:
        if support & set(s.elements):
            raise TheoremViolationError("radical summands overlap")
        support |= set(s.elements)
    if sources:
        mods = [s.module() for s in sources]
        total, _, projs = modules.direct_sum(mods)
        imod = ideal.module()
        amap = ModuleMap(total, imod, {})
        for k, s in enumerate(sources):
            part = ModuleMap(mods[k], imod,
                             {mods[k].element_positions[el]:
                              {imod.element_positions[el]: ONE}
                              for el in s.elements})
            amap = amap.add(part.compose(projs[k]))
    else:
        total = modules.zero_module(alg)
        amap = ModuleMap(total, ideal.module(), {})
    kernel_dim = total.dim - amap.rank()
    return RightApproximation(ideal, sources, amap, kernel_dim)


def good_left_approximations(alg, classes=None, approximations=None):
    """Hom(coker of every minimal left approximation, PI(R)) = 0."""
    if classes is None:
        classes = iso_classes(alg)
    if approximations is None:
        approximations = [minimal_left_approximation(c, classes)
                          for c in classes]
    for appr in approximations:
        coker = appr.cokernel
        if coker.dim == 0:
            continue
        for cls in classes:
            if modules.hom_space(coker, cls.module()):
                return False
    return True


# ---------------------------------------------------------------------------
# reductions and factorizations


def reduce_principal_to_monomial(alg, combination):
    """Rewrites R.p for p a combination of same-head monomials as R.m.

    Follows the unit-absorption argument: order the constituent monomials by
    the surjection chain, absorb multiples of the largest one into a unit of
    the corner algebra, and return the ideal of that largest monomial.  The
    result is certified by an independent Hom-space isomorphism check.
    """
    _require_monomial(alg)
    io = is_ideally_ordered(alg)
    if not io.holds:
        raise UnsupportedInputError(
            "principal-ideal reduction requires an ideally ordered algebra")
    terms = [(c, g) for c, g in combination if c != 0]
    if not terms:
        raise InputError("zero element generates the zero ideal")
    heads = {alg.basis[g].tgt for _, g in terms}
    if len(heads) > 1:
        raise InputError("combination is not contained in a single e.R")
    ideals = {g: MonomialIdeal(alg, g) for _, g in terms}
    order = sorted(terms, key=lambda t: (-ideals[t[1]].dim,
                                         _basis_key(alg, t[1])))
    for k in range(len(order) - 1):
        if not ideals[order[k][1]].ann <= ideals[order[k + 1][1]].ann:
            raise TheoremViolationError("surjection chain failed to sort")
    lead_c, lead = order[0]
    head = alg.basis[lead].tgt
    e = alg.idem_vecs[head]

    # s = lead coefficient * e + sum of r_i over terms that are r_i . lead
    s = {k: lead_c * v for k, v in e.items()}
    for c, g in order[1:]:
        r = next((q for q in range(alg.dim)
                  if alg.basis[q].src == head
                  and alg.mul_basis(q, lead) == {g: ONE}), None)
        if r is not None:
            s[r] = s.get(r, 0) + c
    # invert s = lead_c (e + n), n nilpotent inside e.A.e: geometric series
    n = {k: v / lead_c for k, v in s.items()}
    for k, v in e.items():
        n[k] = n.get(k, 0) - v
    n = {k: v for k, v in n.items() if v}
    t = dict(e)
    term = dict(e)
    guard = 0
    while n and term:
        term = alg.mul({k: -v for k, v in n.items()}, term)
        if not term:
            break
        t = {k: t.get(k, 0) + v for k, v in term.items()}
        t = {k: v for k, v in t.items() if v}
        guard += 1
        if guard > alg.dim + 2:
            raise TheoremViolationError("unit inversion did not terminate")
    t = {k: v / lead_c for k, v in t.items() if v}
    if alg.mul(t, s) != e:
        raise TheoremViolationError("unit inversion is wrong")
    # t.p = lead + terms none of which is a monomial multiple of lead
    tp = alg.mul(t, {g: c for c, g in terms})
    if tp.get(lead) != 1:
        raise TheoremViolationError("normalized element does not lead with 1")
    for g in tp:
        if g != lead and any(alg.mul_basis(q, lead) == {g: ONE}
                             for q in range(alg.dim)):
            raise TheoremViolationError(
                "normalized element still has a multiple of the lead")

    result = next(c for c in iso_classes(alg)
                  if c.head == head and c.ann == ideals[lead].ann)

    # independent check: R.p inside the regular module vs the class module
    reg = modules.regular_module(alg)
    vec = {g: c for c, g in terms}
    sub, _ = modules.submodule_generated(reg, [vec])
    if not modules.is_isomorphic(sub, result.module()):
        raise TheoremViolationError(
            "principal ideal reduction failed the isomorphism check")
    return result


def factorization_check(m, n, f):
    """Does the surjection f: Rm -> Rn factor through gen(m) -> gen(n)?

    A map out of the cyclic module Rm is determined by the image of its
    generator, so f factors iff f(gen m) is a value some endomorphism of Rn
    takes on gen(n).
    """
    if not surjection_exists(m, n):
        raise InputError("no canonical surjection between these ideals")
    if not f.is_surjective():
        raise InputError("factorization check requires a surjection")
    value = f.apply({m.module().element_positions[m.gen]: ONE})
    nmod = n.module()
    allowed = {nmod.element_positions[v] for v in hom_targets(n, n)}
    return set(value) <= allowed
