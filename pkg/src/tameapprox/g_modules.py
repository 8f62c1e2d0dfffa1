"""Finite G-modules over Z/mZ with explicit action matrices.

The central objects are the group ring (Z/m)[G], its augmentation ideal I
with basis {g - 1 : g != e}, restrictions to subgroups, and the unit-twisted
dual.  A module is always free as a Z/m-module, (Z/m)^r; only the G-action
varies.
"""

from __future__ import annotations

import weakref
from math import gcd

from .finite_groups import Subgroup
from .zmod_linalg import IntMatrix, kernel_mod, quotient_structure

_FULL_SCAN_LIMIT = 64


def _mat_mul_mod(a, b, m):
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % m for col in bt)
        for row in a
    )


def _identity_rows(r):
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


class GModule:
    """(Z/m)^r with a G-action given per group element by an r x r matrix.

    Construction verifies that the action is a genuine homomorphism
    G -> GL_r(Z/m): the identity acts trivially and action(g)action(h) =
    action(gh), checked on all pairs for |G| <= 64 and on (generator, element)
    pairs above that (which implies the full property since the generators
    generate).  Invertibility follows: action(g) action(g^{-1}) = 1.
    """

    __slots__ = ("group", "modulus", "rank", "action", "label",
                 "_h1_cache", "_restrict_cache")

    def __init__(self, group, modulus, rank, action, label=None):
        m = int(modulus)
        if m < 2:
            raise ValueError("modulus must be >= 2")
        r = int(rank)
        if r < 0:
            raise ValueError("rank must be >= 0")
        n = group.order
        if len(action) != n:
            raise ValueError(f"{len(action)} action matrices for a group of order {n}")
        mats = []
        for g, mat in enumerate(action):
            rows = tuple(tuple(int(x) % m for x in row) for row in mat)
            if len(rows) != r or any(len(row) != r for row in rows):
                raise ValueError(f"action matrix for element {g} is not {r}x{r}")
            mats.append(rows)
        mats = tuple(mats)

        ident = _identity_rows(r)
        if mats[group.identity] != ident:
            raise ValueError("identity element must act as the identity matrix")
        if n <= _FULL_SCAN_LIMIT:
            pairs = ((g, h) for g in range(n) for h in range(n))
        else:
            pairs = ((s, h) for s in group.generating_set() for h in range(n))
        for g, h in pairs:
            if _mat_mul_mod(mats[g], mats[h], m) != mats[group.table[g][h]]:
                raise ValueError(
                    f"action is not a homomorphism: action({g})*action({h}) != action({g}*{h})"
                )

        self.group = group
        self.modulus = m
        self.rank = r
        self.action = mats
        self.label = label or f"module of rank {r} over Z/{m}"
        self._h1_cache = None
        self._restrict_cache = {}

    def act_matrix(self, g):
        return self.action[g]

    def act(self, g, vec):
        m = self.modulus
        return tuple(sum(a * v for a, v in zip(row, vec)) % m for row in self.action[g])

    @property
    def size(self):
        return self.modulus ** self.rank

    @property
    def exponent(self):
        """Additive exponent of the underlying group (Z/m)^r."""
        return self.modulus if self.rank else 1

    def zero(self):
        return (0,) * self.rank

    def vectors(self):
        """All m^r vectors, in lexicographic order.  Only for small modules."""
        m, r = self.modulus, self.rank
        vec = [0] * r
        while True:
            yield tuple(vec)
            i = r - 1
            while i >= 0:
                vec[i] += 1
                if vec[i] < m:
                    break
                vec[i] = 0
                i -= 1
            if i < 0:
                return

    def __repr__(self):
        return f"GModule({self.label}, |G|={self.group.order})"


class ModuleMap:
    """A G-equivariant linear map between modules over the same Z/m."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix):
        if source.modulus != target.modulus:
            raise ValueError("source and target moduli differ")
        if source.group != target.group:
            raise ValueError("source and target groups differ")
        if matrix.rows != target.rank or matrix.cols != source.rank:
            raise ValueError(
                f"matrix is {matrix.rows}x{matrix.cols}, expected {target.rank}x{source.rank}"
            )
        m = source.modulus
        mat = matrix.mod(m)
        for g in range(source.group.order):
            left = _mat_mul_mod(target.act_matrix(g), mat._data, m)
            right = _mat_mul_mod(mat._data, source.act_matrix(g), m)
            if left != right:
                raise ValueError(f"map does not commute with the action of element {g}")
        self.source = source
        self.target = target
        self.matrix = mat

    def apply(self, vec):
        m = self.target.modulus
        return tuple(x % m for x in self.matrix.mul_vector(vec))


_RING_CACHE = weakref.WeakKeyDictionary()
_IDEAL_CACHE = weakref.WeakKeyDictionary()


def trivial_module(group, modulus, rank=1):
    ident = _identity_rows(rank)
    return GModule(group, modulus, rank,
                   [ident] * group.order,
                   label=f"trivial Z/{modulus}" + (f"^{rank}" if rank != 1 else ""))


def group_ring(group, modulus):
    """(Z/m)[G]: basis indexed by group elements, g acting by left translation.

    Cached per (group, modulus): modules are immutable, and reuse lets the
    cohomology layer share H^1 results across verification passes.
    """
    cache = _RING_CACHE.setdefault(group, {})
    if modulus in cache:
        return cache[modulus]
    n = group.order
    mats = []
    for g in range(n):
        mat = [[0] * n for _ in range(n)]
        for h in range(n):
            mat[group.table[g][h]][h] = 1  # g sends basis vector h to g*h
        mats.append(mat)
    ring = GModule(group, modulus, n, mats, label=f"(Z/{modulus})[G]")
    cache[modulus] = ring
    return ring


def augmentation_ideal(group, modulus):
    """The augmentation ideal I of (Z/m)[G] with basis {g - 1 : g != e}.

    Returns (I, incl, aug) where incl: I -> (Z/m)[G] is the basis inclusion
    and aug: (Z/m)[G] -> Z/m is the all-ones augmentation; aug o incl = 0 and
    incl is injective mod m, so the three-term sequence is exact.  Cached per
    (group, modulus) like the group ring.
    """
    cache = _IDEAL_CACHE.setdefault(group, {})
    if modulus in cache:
        return cache[modulus]
    n = group.order
    e = group.identity
    basis = [g for g in range(n) if g != e]  # basis vector i is (basis[i] - 1)
    pos = {g: i for i, g in enumerate(basis)}
    r = n - 1

    mats = []
    for g in range(n):
        mat = [[0] * r for _ in range(r)]
        for i, h in enumerate(basis):
            gh = group.table[g][h]
            # g*(h-1) = (gh-1) - (g-1)
            if gh != e:
                mat[pos[gh]][i] += 1
            if g != e:
                mat[pos[g]][i] -= 1
        mats.append(mat)
    ideal = GModule(group, modulus, r, mats, label=f"augmentation ideal of (Z/{modulus})[G]")

    ring = group_ring(group, modulus)
    incl_rows = [[0] * r for _ in range(n)]
    for i, h in enumerate(basis):
        incl_rows[h][i] += 1
        incl_rows[e][i] -= 1
    incl = ModuleMap(ideal, ring, IntMatrix.from_rows(incl_rows))
    aug = ModuleMap(ring, trivial_module(group, modulus),
                    IntMatrix.from_rows([[1] * n]))

    if n <= _FULL_SCAN_LIMIT:
        _check_augmentation_exactness(incl, aug)
    cache[modulus] = (ideal, incl, aug)
    return ideal, incl, aug


def _check_augmentation_exactness(incl, aug):
    m = incl.source.modulus
    if kernel_mod(incl.matrix, m).cols != 0:
        raise AssertionError("augmentation ideal inclusion is not injective mod m")
    comp = aug.matrix @ incl.matrix
    if any(x % m for x in comp.entries):
        raise AssertionError("aug o incl is nonzero")
    ker = kernel_mod(aug.matrix, m)
    if not quotient_structure(incl.matrix, ker, m).is_trivial:
        raise AssertionError("ker(aug) != im(incl)")


def restrict(module, sub):
    """The same (Z/m)^r viewed over a subgroup, re-indexed as a standalone group.

    Cached per element set, so the restriction (and its cached H^1) is shared
    between the kernel computations that revisit the same subgroup.
    """
    if not isinstance(sub, Subgroup):
        raise TypeError("restrict expects a Subgroup")
    if sub.parent != module.group:
        raise ValueError("subgroup belongs to a different group")
    cached = module._restrict_cache.get(sub.elements)
    if cached is not None:
        return cached
    k = sub.as_group()
    action = [module.action[x] for x in sub.elements]
    res = GModule(k, module.modulus, module.rank, action,
                  label=f"{module.label} restricted to order-{sub.order} subgroup")
    module._restrict_cache[sub.elements] = res
    return res


def dual_module(module, twist=None):
    """Unit-twisted dual: action(g) = twist(g) * action(g^{-1})^T over Z/e.

    The dual modulus is the additive exponent e of the module (equal to m for
    positive rank).  `twist` maps element indices to units mod e and must be
    multiplicative; omitted it is identically 1, giving the plain dual whose
    double dual has the original action tables mod e.
    """
    g = module.group
    e = module.exponent
    n = g.order
    if twist is None:
        tw = [1] * n
    elif callable(twist):
        tw = [int(twist(x)) % e for x in range(n)]
    else:
        tw = [int(twist[x]) % e for x in range(n)]
    for x in range(n):
        if gcd(tw[x], e) != 1:
            raise ValueError(f"twist({x}) = {tw[x]} is not a unit mod {e}")
    if tw[g.identity] % e != 1 % e:
        raise ValueError("twist must send the identity to 1")
    for a in range(n):
        for b in range(n):
            if (tw[a] * tw[b]) % e != tw[g.table[a][b]] % e:
                raise ValueError(f"twist is not multiplicative at ({a}, {b})")

    mats = []
    for x in range(n):
        inv = g.inverse(x)
        src = module.action[inv]
        r = module.rank
        mats.append(tuple(
            tuple((tw[x] * src[j][i]) % e for j in range(r)) for i in range(r)
        ))
    return GModule(g, e, module.rank, mats, label=f"dual of {module.label}")


def module_from_json(group, obj):
    """Load a module from {"modulus": m, "rank": r, "action": {index: matrix}}."""
    if not isinstance(obj, dict):
        raise ValueError("module JSON must be an object")
    try:
        m = int(obj["modulus"])
        r = int(obj["rank"])
        action_obj = obj["action"]
    except KeyError as missing:
        raise ValueError(f"module JSON is missing key {missing}") from None
    action = []
    for g in range(group.order):
        key = str(g)
        if key in action_obj:
            action.append(action_obj[key])
        elif g in action_obj:
            action.append(action_obj[g])
        else:
            raise ValueError(f"module JSON has no action matrix for element {g}")
    return GModule(group, m, r, action, label="module from JSON")
