"""First group cohomology and Tate-Shafarevich restriction kernels.

H^1(G, M) is computed as Z^1/B^1 from materialized coboundary matrices over
Z/m, fed to the Smith-form engine.  The Sha kernels are computed from a
finite model: all cyclic subgroups of G stand in for the (infinitely many)
unramified places, since every cyclic subgroup is a Frobenius of infinitely
many of them and conjugate decomposition groups give canonically isomorphic
H^1; ramified places enter through explicit PlaceRecords.
"""

from __future__ import annotations

from dataclasses import dataclass

from .finite_groups import Group, Subgroup, cyclic_subgroups, full_subgroup
from .g_modules import GModule, augmentation_ideal, group_ring, restrict
from .zmod_linalg import (
    AbGroupStructure,
    IntMatrix,
    QuotientPresentation,
    kernel_mod,
)

__all__ = [
    "H1Result", "PlaceRecord", "ShaResult", "LemmaReport", "ShiftReport",
    "h1", "tate_h0", "res_h1", "sha_cyc", "sha_sigma",
    "verify_augmentation_lemma", "dimension_shift_check",
    "coboundary0_matrix", "coboundary1_matrix", "is_cocycle",
]


def coboundary0_matrix(group, module):
    """d0: M -> C^1, (d0 a)(g) = g.a - a, as an (nr x r) integer matrix."""
    n, r = group.order, module.rank
    rows = []
    for g in range(n):
        act = module.act_matrix(g)
        for i in range(r):
            rows.append([act[i][j] - (1 if i == j else 0) for j in range(r)])
    return IntMatrix.from_rows(rows)


def coboundary1_matrix(group, module):
    """d1: C^1 -> C^2, (d1 z)(g,h) = g.z(h) - z(gh) + z(g), as (n^2 r x nr).

    Cochains are flattened element-major: coordinate c of z(g) sits at
    g*r + c.  The pair (g,h) indexes block row g*n + h.
    """
    n, r = group.order, module.rank
    dim = n * r
    rows = []
    for g in range(n):
        act = module.act_matrix(g)
        for h in range(n):
            gh = group.table[g][h]
            for i in range(r):
                row = [0] * dim
                base_h = h * r
                for j in range(r):
                    row[base_h + j] += act[i][j]
                row[gh * r + i] -= 1
                row[g * r + i] += 1
                rows.append(row)
    return IntMatrix.from_rows(rows)


def is_cocycle(group, module, rep):
    """Check z(gh) = z(g) + g.z(h) mod m for a representative given per element."""
    m = module.modulus
    n = group.order
    for g in range(n):
        for h in range(n):
            gh = group.table[g][h]
            lhs = rep[gh]
            gz = module.act(g, rep[h])
            if any((a - b - c) % m for a, b, c in zip(lhs, rep[g], gz)):
                return False
    return True


def _flatten(rep):
    return [x for vec in rep for x in vec]


def _unflatten(flat, n, r, m):
    return tuple(tuple(x % m for x in flat[g * r : (g + 1) * r]) for g in range(n))


@dataclass(frozen=True)
class H1Result:
    """H^1(G, M) with explicit cocycle representatives.

    `cocycle_reps[i]` (a tuple of module vectors, one per group element)
    generates the invariant factor `structure.invariant_factors[i]`; the
    `basis_correspondence` tuple repeats those orders for convenience.
    """

    group: Group
    module: GModule
    structure: AbGroupStructure
    cocycle_reps: tuple
    basis_correspondence: tuple
    presentation: QuotientPresentation

    @property
    def order(self):
        return self.structure.order

    def class_coordinates(self, rep):
        """Coordinates of a cocycle's class, one residue per invariant factor."""
        flat = _flatten(rep) if rep and isinstance(rep[0], tuple) else list(rep)
        return self.presentation.coordinates(flat)


def h1(group, module):
    """H^1(G, M) = Z^1/B^1 with representatives lifting the invariant factors.

    Cached on the (immutable) module, so the Sha kernels can revisit the
    same H^1 without recomputing the cochain kernel.
    """
    if module.group != group:
        raise ValueError("module is over a different group")
    if module._h1_cache is not None:
        return module._h1_cache
    m = module.modulus
    n, r = group.order, module.rank
    d1 = coboundary1_matrix(group, module)
    d0 = coboundary0_matrix(group, module)
    zgens = kernel_mod(d1, m)
    pres = QuotientPresentation(d0, zgens, m)
    reps = []
    for col in pres.generator_columns:
        rep = _unflatten(list(col), n, r, m)
        if rep[group.identity] != (0,) * r or not is_cocycle(group, module, rep):
            raise AssertionError("internal error: lifted representative is not a normalized cocycle")
        reps.append(rep)
    result = H1Result(
        group=group,
        module=module,
        structure=pres.structure,
        cocycle_reps=tuple(reps),
        basis_correspondence=pres.structure.invariant_factors,
        presentation=pres,
    )
    module._h1_cache = result
    return result


def tate_h0(group, module):
    """Tate H^0: fixed points M^G modulo the image of the norm N_G."""
    if module.group != group:
        raise ValueError("module is over a different group")
    m = module.modulus
    n, r = group.order, module.rank
    if r == 0:
        return AbGroupStructure()
    stacked = []
    for g in range(n):
        act = module.act_matrix(g)
        for i in range(r):
            stacked.append([act[i][j] - (1 if i == j else 0) for j in range(r)])
    fixed = kernel_mod(IntMatrix.from_rows(stacked), m)
    norm = [[0] * r for _ in range(r)]
    for g in range(n):
        act = module.act_matrix(g)
        for i in range(r):
            for j in range(r):
                norm[i][j] += act[i][j]
    norm_image = IntMatrix.from_rows(norm)
    return QuotientPresentation(norm_image, fixed, m).structure


def _restrict_rep(rep, sub):
    """A G-cocycle as an H-cochain, flattened in the subgroup's local order."""
    return [x for parent_idx in sub.elements for x in rep[parent_idx]]


def res_h1(group, sub, module, *, h1_g=None, h1_h=None):
    """Matrix of H^1(G,M) -> H^1(H, M|_H) on invariant-factor coordinates.

    Row i / column j: coordinate i of the restriction of the j-th generator;
    entries are reduced modulo the target factor of their row.
    """
    if not isinstance(sub, Subgroup) or sub.parent != group:
        raise ValueError("sub must be a Subgroup of the given group")
    if h1_g is None:
        h1_g = h1(group, module)
    if h1_h is None:
        h1_h = h1(sub.as_group(), restrict(module, sub))
    target_factors = h1_h.structure.invariant_factors
    cols = []
    for rep in h1_g.cocycle_reps:
        coords = h1_h.presentation.coordinates(_restrict_rep(rep, sub))
        cols.append(list(coords))
    rows = [
        [cols[j][i] % target_factors[i] for j in range(len(cols))]
        for i in range(len(target_factors))
    ]
    return IntMatrix(len(target_factors), len(cols), [x for row in rows for x in row])


@dataclass(frozen=True)
class ShaResult:
    """A restriction kernel inside H^1(G, M), with generating cocycles."""

    structure: AbGroupStructure
    generators: tuple  # cocycle representatives, one per invariant factor
    h1_structure: AbGroupStructure


def _restriction_kernel(group, module, subgroups):
    """Joint kernel in H^1(G,M) of restriction to each listed subgroup."""
    h1_g = h1(group, module)
    factors = h1_g.structure.invariant_factors
    k = len(factors)
    m = module.modulus
    if k == 0:
        return ShaResult(AbGroupStructure(), (), h1_g.structure)

    dedup = {}
    for sub in subgroups:
        if sub.parent != group:
            raise ValueError("subgroup belongs to a different group")
        dedup.setdefault(sub.elements, sub)
    ordered = sorted(dedup.values(), key=lambda s: (s.order, s.elements))

    constraint_rows = []
    for sub in ordered:
        if sub.order == 1:
            continue  # H^1 of the trivial group vanishes
        h1_h = h1(sub.as_group(), restrict(module, sub))
        target = h1_h.structure.invariant_factors
        if not target:
            continue
        res = res_h1(group, sub, module, h1_g=h1_g, h1_h=h1_h)
        for i, delta in enumerate(target):
            if m % delta:
                raise AssertionError("invariant factor does not divide the modulus")
            scale = m // delta
            constraint_rows.append([scale * res[i, j] for j in range(k)])

    if constraint_rows:
        kernel = kernel_mod(IntMatrix.from_rows(constraint_rows), m)
    else:
        kernel = IntMatrix.identity(k)
    relations = IntMatrix.diagonal(list(factors))
    pres = QuotientPresentation(relations, kernel, m)

    gens = []
    n, r = group.order, module.rank
    for col in pres.generator_columns:
        flat = [0] * (n * r)
        for j, coeff in enumerate(col):
            rep = h1_g.cocycle_reps[j]
            for g in range(n):
                base = g * r
                vec = rep[g]
                for c in range(r):
                    flat[base + c] += coeff * vec[c]
        gens.append(_unflatten(flat, n, r, m))
    return ShaResult(pres.structure, tuple(gens), h1_g.structure)


def sha_cyc(group, module):
    """Kernel of H^1(G,M) -> prod over cyclic subgroups <g>."""
    if module.group != group:
        raise ValueError("module is over a different group")
    return _restriction_kernel(group, module, cyclic_subgroups(group)).structure


@dataclass(frozen=True)
class PlaceRecord:
    """A labeled place with its decomposition subgroup in the ambient group.

    The label is a rational prime, the token "inf", or a free-form string for
    places of number fields other than Q.
    """

    label: object
    subgroup: Subgroup
    ramified: bool = False

    @property
    def key(self):
        return str(self.label)


def _is_place_token(key):
    if key == "inf":
        return True
    try:
        value = int(key)
    except ValueError:
        return False
    from .arithmetic import is_prime

    return value >= 2 and is_prime(value)


def sha_sigma(group, module, places, excluded=()):
    """Sha^1_Sigma for the finite model: cyclic subgroups + ramified records.

    Computes the joint restriction kernel over every cyclic subgroup of G and
    over the decomposition subgroup of each place record whose label is not
    excluded.  With nothing excluded this is Sha^1(L/k, M); excluding every
    non-cyclic record gives Sha^1_cyc.  The `places` list must contain every
    ramified place of the extension being modeled.
    """
    if module.group != group:
        raise ValueError("module is over a different group")
    known = {rec.key for rec in places}
    excluded_keys = set()
    for label in excluded:
        key = str(label)
        if key not in known and not _is_place_token(key):
            raise ValueError(f"unknown excluded place label {label!r}")
        excluded_keys.add(key)
    conditions = list(cyclic_subgroups(group))
    for rec in places:
        if rec.subgroup.parent != group:
            raise ValueError(f"place {rec.label!r}: decomposition subgroup of a different group")
        if rec.key not in excluded_keys:
            conditions.append(rec.subgroup)
    return _restriction_kernel(group, module, conditions)


@dataclass(frozen=True)
class LemmaReport:
    """sha_cyc(G, I) against the predicted Z/(n/e) for I over Z/nZ."""

    order: int
    exponent: int
    expected: AbGroupStructure
    computed: AbGroupStructure

    @property
    def passed(self):
        return self.expected == self.computed


def verify_augmentation_lemma(group):
    """Check Sha^1_cyc(G, I) == Z/(n/e) with I the augmentation ideal over Z/n."""
    n = group.order
    e = group.exponent()
    f = n // e
    ideal, _, _ = augmentation_ideal(group, n)
    computed = sha_cyc(group, ideal)
    expected = AbGroupStructure([f] if f > 1 else [])
    return LemmaReport(order=n, exponent=e, expected=expected, computed=computed)


@dataclass(frozen=True)
class ShiftReport:
    """Dimension shift at one subgroup H: H^1(H, I|_H) and H^1(H, ring|_H)."""

    subgroup: Subgroup
    ideal_h1: AbGroupStructure
    ideal_expected: AbGroupStructure
    ring_h1: AbGroupStructure

    @property
    def passed(self):
        return self.ideal_h1 == self.ideal_expected and self.ring_h1.is_trivial


def dimension_shift_check(group, subgroups=None):
    """H^1(H, I|_H) = Z/|H| and H^1(H, (Z/n)[G]|_H) = 0, per subgroup.

    Defaults to the cyclic subgroups plus the full group; pass an explicit
    list (e.g. all_subgroups(G)) to widen the battery.
    """
    n = group.order
    ideal, _, _ = augmentation_ideal(group, n)
    ring = group_ring(group, n)
    if subgroups is None:
        subgroups = list(cyclic_subgroups(group))
        if not any(s.order == n for s in subgroups):
            subgroups.append(full_subgroup(group))
    reports = []
    for sub in sorted(subgroups, key=lambda s: (s.order, s.elements)):
        k = sub.as_group()
        ideal_h1 = h1(k, restrict(ideal, sub)).structure
        ring_h1 = h1(k, restrict(ring, sub)).structure
        expected = AbGroupStructure([sub.order] if sub.order > 1 else [])
        reports.append(ShiftReport(sub, ideal_h1, expected, ring_h1))
    return reports
