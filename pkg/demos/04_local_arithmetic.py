"""The number-theoretic layer: prime searches, local squares, and
decomposition subgroups of biquadratic fields.

For squarefree a, b the Galois group of Q(sqrt a, sqrt b)/Q is the Klein
group, and the decomposition subgroup at a place v is cut out by which of
a, b, ab are squares in Q_v.  Sigma_0 collects the places where that
subgroup is the full (non-cyclic) group; only ramified places qualify.
"""

from tameapprox import (
    KummerPair,
    decomposition_subgroup,
    find_p,
    find_q,
    is_prime,
    legendre,
    local_square,
    sigma0_biquadratic,
)

# ----------------------------------------------------------------------
# Deterministic primality and the (p, q) parameter search
# ----------------------------------------------------------------------
print("is_prime(2^61 - 1) =", is_prime(2 ** 61 - 1))
print("first prime == 1 (mod 9):", find_p(3, 2, 2))

p = 3
q = find_q(2, p)
print(f"companion for p = {p}: q = {q}  (q == 1 mod 8, (q/p) = {legendre(q, p)})")
print()

# ----------------------------------------------------------------------
# Local squares
# ----------------------------------------------------------------------
for d, place in ((17, 2), (3, 5), (-7, 2), (3, "inf")):
    cls = local_square(d, place)
    print(f"{d:>3} is {'a square' if cls.is_square else 'not a square'} in Q_{place}")
print()

# ----------------------------------------------------------------------
# Decomposition subgroups and Sigma_0
# ----------------------------------------------------------------------
pair = KummerPair(p, q)
for v in (2, p, q, "inf"):
    sub = decomposition_subgroup(pair, v)
    kind = "full Klein group" if sub.order == 4 else f"cyclic of order {sub.order}"
    print(f"decomposition at {v!s:>4}: {kind}")

print("Sigma_0(Q, I) =", sigma0_biquadratic(pair))

# A pair of mutual residues leaves every decomposition group cyclic:
print("Sigma_0 for (13, 17):", sigma0_biquadratic(KummerPair(13, 17)), "(empty)")
