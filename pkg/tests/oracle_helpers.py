"""Independent brute-force oracles for the test suite.

Nothing here goes through the Smith-form or cohomology code paths: oracles
read only the raw data of their inputs (Cayley tables, action matrices,
matrix entries) and enumerate.  They are deliberately slow and only run at
the small sizes the properties quantify over.
"""

from itertools import product


def all_vectors(m, r):
    return [tuple(v) for v in product(range(m), repeat=r)]


def mat_vec(mat, vec, m):
    return tuple(sum(a * v for a, v in zip(row, vec)) % m for row in mat)


def vec_add(u, v, m):
    return tuple((a + b) % m for a, b in zip(u, v))


def vec_sub(u, v, m):
    return tuple((a - b) % m for a, b in zip(u, v))


def brute_kernel_set(rows, m, cols):
    """{ x in (Z/m)^cols : rows @ x == 0 mod m } by full enumeration."""
    out = set()
    for x in product(range(m), repeat=cols):
        if all(sum(a * v for a, v in zip(row, x)) % m == 0 for row in rows):
            out.add(x)
    return out


def span_mod(columns, m, dim):
    """Subgroup of (Z/m)^dim generated by the given columns, by closure."""
    zero = (0,) * dim
    elems = {zero}
    frontier = [zero]
    gens = [tuple(int(x) % m for x in col) for col in columns]
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = vec_add(v, g, m)
                if w not in elems:
                    elems.add(w)
                    new.append(w)
        frontier = new
    return elems


def coset_order_counts(amb_elems, sub_elems, m, dim):
    """For each k, the number of cosets x with k*x in the subgroup.

    The counting function k -> ##{x : kx in S} determines a finite abelian
    group: it equals prod_i gcd(d_i, k) over the invariant factors.
    """
    sub = set(sub_elems)
    quotient_order = len(amb_elems) // len(sub)
    counts = {}
    for k in range(1, m + 1):
        c = 0
        for x in amb_elems:
            if tuple((k * xi) % m for xi in x) in sub:
                c += 1
        assert c % len(sub) == 0
        counts[k] = c // len(sub)
    assert counts[m] == quotient_order
    return counts


def predicted_order_counts(invariant_factors, m):
    from math import gcd

    out = {}
    for k in range(1, m + 1):
        c = 1
        for d in invariant_factors:
            c *= gcd(d, k)
        out[k] = c
    return out


def spanning_tree(group, gens):
    """Edges (x, s, x*s) discovering every element from the identity, or None."""
    e = group.identity
    known = {e}
    edges = []
    frontier = [e]
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                xs = group.table[x][s]
                if xs not in known:
                    known.add(xs)
                    edges.append((x, s, xs))
                    new.append(xs)
        frontier = new
    if len(known) != group.order:
        return None
    return edges


def brute_cocycles(group, module, count_only=False):
    """All 1-cocycles z: G -> M, by enumerating values on a generating set.

    Each candidate assignment is extended along a spanning tree via
    z(x*s) = z(x) + x.z(s) and then the cocycle identity is verified on
    every pair, so a wrong generating set cannot create false positives.
    """
    n, r, m = group.order, module.rank, module.modulus
    gens = list(group.generating_set())
    tree = spanning_tree(group, gens)
    if tree is None:
        gens = [x for x in range(n) if x != group.identity]
        tree = spanning_tree(group, gens)
    vectors = all_vectors(m, r)
    action = module.action
    table = group.table
    e = group.identity
    found = [] if not count_only else None
    count = 0
    gen_pos = {s: i for i, s in enumerate(gens)}
    for assignment in product(vectors, repeat=len(gens)):
        z = [None] * n
        z[e] = (0,) * r
        for x, s, xs in tree:
            z[xs] = vec_add(z[x], mat_vec(action[x], assignment[gen_pos[s]], m), m)
        ok = True
        for g in range(n):
            zg = z[g]
            actg = action[g]
            for h in range(n):
                if z[table[g][h]] != vec_add(zg, mat_vec(actg, z[h], m), m):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
            if found is not None:
                found.append(tuple(z))
    return count if count_only else found


def brute_coboundaries(group, module):
    """{ g -> g.a - a : a in M } as a set of flattened tuples."""
    n, r, m = group.order, module.rank, module.modulus
    out = set()
    for a in all_vectors(m, r):
        cob = tuple(vec_sub(mat_vec(module.action[g], a, m), a, m) for g in range(n))
        out.add(cob)
    return out


def is_brute_coboundary(group, module, rep):
    n, r, m = group.order, module.rank, module.modulus
    for a in all_vectors(m, r):
        if all(
            tuple(rep[g]) == vec_sub(mat_vec(module.action[g], a, m), a, m)
            for g in range(n)
        ):
            return True
    return False


def brute_h1_order(group, module):
    z = brute_cocycles(group, module, count_only=True)
    b = len(brute_coboundaries(group, module))
    assert z % b == 0
    return z // b


def brute_cyclic_subgroup_sets(group):
    e = group.identity
    out = set()
    for g in range(group.order):
        elems = {e}
        acc = g
        while acc != e:
            elems.add(acc)
            acc = group.table[acc][g]
        out.add(tuple(sorted(elems)))
    return out


def trial_division_factor(n):
    """Trial-division factorization; the primality oracle for small tests."""
    n = int(n)
    assert n > 0
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def brute_is_square_mod_odd_prime(d, p):
    """d (possibly negative) a nonzero-mod-p unit square mod odd prime p?"""
    dp = d % p
    if dp == 0:
        return False
    return dp in {(x * x) % p for x in range(1, p)}


def brute_is_square_in_q2(d, depth=12):
    """Squareness of squarefree d in Q_2 by exhaustive lift mod 2^depth.

    For odd d this decides correctly at depth >= 3; squarefree even d has
    valuation 1 and is never a square.
    """
    if d % 2 == 0:
        return False
    mod = 1 << depth
    target = d % mod
    return any((x * x) % mod == target for x in range(1, mod, 2))
