"""Endomorphism algebras of module collections, with labelled idempotents.

The basis is the union of the canonical Hom-space bases over all ordered
pairs of summands; structure constants express composites in those bases by
exact coordinate extraction.  Cartan matrix and Gabriel quiver read the
Peirce blocks of the result.
"""

from .errors import InputError, TheoremViolationError
from .linalg import ONE, SpanSolver
from .algebra import BasisElement, FiniteDimAlgebra
from .quiver import Quiver
from . import ideals as ideals_mod
from . import modules


class LabeledEndoAlgebra:
    """End(M_1 + ... + M_n) with one idempotent label per summand."""

    def __init__(self, algebra, labels, mods, hom_bases, spans,
                 e0_labels=None, source_algebra=None, classes=None):
        self.algebra = algebra
        self.summand_labels = tuple(labels)
        self.modules = list(mods)
        self.hom_bases = hom_bases  # (i, j) -> list of ModuleMap M_i -> M_j
        self.spans = spans  # (i, j) -> SpanSolver over flattened maps
        self.e0_labels = tuple(e0_labels) if e0_labels is not None else None
        self.source_algebra = source_algebra
        self.classes = classes

    @property
    def dim(self):
        return self.algebra.dim

    def label_index(self, label):
        return self.summand_labels.index(label)

    def basis_offset(self, i, j):
        return self._offsets[(i, j)]

    def map_coords(self, i, j, mmap):
        """Coordinates of a map M_i -> M_j as a sparse algebra vector."""
        coords = self.spans[(i, j)].coords_of(mmap.flatten())
        if coords is None:
            raise TheoremViolationError("map outside its Hom space")
        off = self._offsets[(i, j)]
        return {off + k: c for k, c in coords.items()}

    def basis_map(self, idx):
        return self._basis_maps[idx]

    def rho(self, basis_index):
        """Image of an element of the source algebra in e_0 E e_0.

        Sends a basis monomial p to right-multiplication by p between the
        projective summands; this realizes the opposite of the source
        algebra on the corner at the projective classes.
        """
        if self.source_algebra is None or self.classes is None:
            raise InputError("no source algebra attached")
        R = self.source_algebra
        b = R.basis[basis_index]
        src_cls = self._projective_class_of.get(b.tgt)
        tgt_cls = self._projective_class_of.get(b.src)
        if src_cls is None or tgt_cls is None:
            raise InputError("source element does not join projective classes")
        m = self.modules[src_cls]
        n = self.modules[tgt_cls]
        cols = {}
        for k in self.classes[src_cls].elements:
            prod = R.mul_basis(k, basis_index)
            if prod:
                img = next(iter(prod))
                cols[m.element_positions[k]] = {n.element_positions[img]: ONE}
        from .modules import ModuleMap
        return self.map_coords(src_cls, tgt_cls, ModuleMap(m, n, cols))

    def __repr__(self):
        return (f"LabeledEndoAlgebra(dim={self.dim}, "
                f"summands={list(self.summand_labels)})")


def endomorphism_algebra(mods, labels=None, e0_labels=None,
                         source_algebra=None, classes=None):
    """Builds End of a list of pairwise non-isomorphic indecomposables.

    The input condition is certified after the fact: the semisimple quotient
    of the result must have one dimension per summand; on failure the
    offending pair or summand is named.
    """
    if not mods:
        raise InputError("empty module collection")
    if labels is None:
        labels = [f"M{i}" for i in range(len(mods))]
    labels = [str(l) for l in labels]
    if len(set(labels)) != len(labels):
        raise InputError("duplicate summand labels")
    algebra0 = mods[0].algebra
    for m in mods:
        if m.algebra is not algebra0:
            raise InputError("summands over different algebras")
        if m.dim == 0:
            raise InputError("zero module in the collection")

    n = len(mods)
    hom_bases = {}
    spans = {}
    basis = []
    offsets = {}
    basis_maps = []
    for i in range(n):
        for j in range(n):
            maps = modules.hom_space(mods[i], mods[j])
            hom_bases[(i, j)] = maps
            span = SpanSolver()
            for f in maps:
                span.add(f.flatten())
            spans[(i, j)] = span
            offsets[(i, j)] = len(basis)
            for k, f in enumerate(maps):
                basis.append(BasisElement(f"h{i}:{j}:{k}", i, j, None))
                basis_maps.append(f)

    table = {}
    for (i, j), maps_ij in hom_bases.items():
        for (j2, k), maps_jk in hom_bases.items():
            if j2 != j:
                continue
            span = spans[(i, k)]
            off = offsets[(i, k)]
            for a, f in enumerate(maps_jk):
                for b, g in enumerate(maps_ij):
                    comp = f.compose(g)
                    if not comp.cols:
                        continue
                    coords = span.coords_of(comp.flatten())
                    if coords is None:
                        raise TheoremViolationError(
                            "composition leaves its Hom space")
                    row = offsets[(j, k)] + a
                    col = offsets[(i, j)] + b
                    table[(row, col)] = {off + m: c
                                         for m, c in coords.items() if c}

    idem = []
    for i in range(n):
        from .modules import ModuleMap
        coords = spans[(i, i)].coords_of(
            ModuleMap.identity(mods[i]).flatten())
        if coords is None:
            raise TheoremViolationError("identity outside End")
        off = offsets[(i, i)]
        idem.append({off + k: c for k, c in coords.items() if c})

    alg = FiniteDimAlgebra(labels, basis, table, idem,
                           provenance="endomorphism", graded=False,
                           degree_one_generated=False)
    # one simple per summand certifies indecomposable + pairwise non-iso
    if alg.dim - alg.radical().dim != n:
        for i in range(n):
            if not modules.is_indecomposable(mods[i]):
                raise InputError(f"summand {labels[i]} is decomposable")
        for i in range(n):
            for j in range(i + 1, n):
                if modules.is_isomorphic(mods[i], mods[j]):
                    raise InputError(
                        f"summands {labels[i]} and {labels[j]} are isomorphic")
        raise TheoremViolationError("semisimple quotient has wrong size")

    er = LabeledEndoAlgebra(alg, labels, mods, hom_bases, spans,
                            e0_labels=e0_labels,
                            source_algebra=source_algebra, classes=classes)
    er._offsets = offsets
    er._basis_maps = basis_maps
    if classes is not None and source_algebra is not None:
        er._projective_class_of = {
            classes[i].head: i for i in range(len(classes))
            if source_algebra.basis[classes[i].gen].grade == 0}
    return er


def build_ER(r, warn_not_ideally_ordered=True):
    """End of one representative per monomial ideal class of r.

    Defined for every monomial algebra; when r is not ideally ordered the
    collection covers the monomial classes only (principal ideals with
    non-monomial generators are not searched) and downstream theorems need
    not apply.
    """
    classes = ideals_mod.iso_classes(r)
    mods = [c.module() for c in classes]
    labels = [c.name for c in classes]
    e0 = [classes[i].name for i in range(len(classes))
          if r.basis[classes[i].gen].grade == 0]
    er = endomorphism_algebra(mods, labels, e0_labels=e0,
                              source_algebra=r, classes=classes)
    er.ideally_ordered = ideals_mod.is_ideally_ordered(r).holds
    return er


def build_ADR(r):
    """End of the radical quotients Ae/rad^i Ae (one per iso class)."""
    from .generators import adr_family
    fam = adr_family(r)
    mods = [m for m, _, _ in fam]
    labels = [f"{v}:{i}" for _, v, i in fam]
    er = endomorphism_algebra(mods, labels)
    er.adr_indices = [(v, i) for _, v, i in fam]
    return er


def cartan_matrix(er):
    """cartan[i][j] = [P_j : S_i] = dim e_i E e_j."""
    alg = er.algebra
    n = len(er.summand_labels)
    return [[len(alg.block_indices(j, i)) for j in range(n)]
            for i in range(n)]


def gabriel_quiver(er):
    """(Quiver, multiplicity dict): arrows i -> j span e_j (rad/rad^2) e_i."""
    alg = er.algebra
    rad = alg.radical()
    rad2 = alg.radical_power(2)
    n = len(er.summand_labels)

    def block_dim(rs, i, j):
        cnt = 0
        for p, row in rs.rows.items():
            b = alg.basis[p]
            if b.src == i and b.tgt == j:
                cnt += 1
        return cnt

    counts = {}
    arrows = []
    for i in range(n):
        for j in range(n):
            c = block_dim(rad, i, j) - block_dim(rad2, i, j)
            if c:
                counts[(er.summand_labels[i], er.summand_labels[j])] = c
                for k in range(c):
                    arrows.append((f"q{i}_{j}_{k}", er.summand_labels[i],
                                   er.summand_labels[j]))
    return Quiver(er.summand_labels, arrows), counts
