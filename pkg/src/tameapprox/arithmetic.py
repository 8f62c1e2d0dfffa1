"""Number-theoretic layer: primes, residue symbols, local squares,
decomposition subgroups of biquadratic fields, and counterexample
certificates.

The certified object is the augmentation ideal I of (Z/ell^(n+1))[G] for
G = Z/ell^n x Z/ell, realized as the Galois group of L/k with
k = Q(zeta_{ell^n}) and L = k(p^(1/ell^n), q^(1/ell)).  For ell = 2, n = 1
(so k = Q, L = Q(sqrt p, sqrt q)) every decomposition subgroup is computed
exactly from local square classes; for other parameters the certificate
records the modular facts the construction reduces to and keeps the
undetermined parts of Sigma_0 explicitly labeled as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .cohomology import PlaceRecord, dimension_shift_check, sha_sigma, verify_augmentation_lemma
from .finite_groups import (
    Subgroup,
    cyclic_group,
    direct_product,
    full_subgroup,
    product_of_prime_powers,
    subgroup_generated,
)
from .g_modules import augmentation_ideal
from .zmod_linalg import AbGroupStructure

_UINT64_MAX = 2 ** 64

# Strong-pseudoprime test with these twelve bases is deterministic for all
# n < 3.3 * 10^24, which covers the full 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class SearchBoundError(RuntimeError):
    """A prime search exhausted its configured bound.

    Dirichlet guarantees the target exists, so this signals a bound chosen
    too small, not nonexistence.
    """


def is_prime(x):
    """Deterministic primality for 0 <= x <= 2**64 (Miller-Rabin, fixed bases)."""
    x = int(x)
    if x < 0:
        raise ValueError("is_prime expects a nonnegative integer")
    if x > _UINT64_MAX:
        raise ValueError("is_prime is only deterministic up to 2**64")
    if x < 2:
        return False
    for b in _MR_BASES:
        if x == b:
            return True
        if x % b == 0:
            return False
    d = x - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        y = pow(b, d, x)
        if y == 1 or y == x - 1:
            continue
        for _ in range(s - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def _brent_rho(n):
    # Brent's cycle variant of Pollard rho; deterministic constant schedule.
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = 0
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


def factorize(n):
    """Prime factorization of |n| as an ordered {prime: exponent} dict."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    factors = {}

    def record(p):
        factors[p] = factors.get(p, 0) + 1

    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            record(p)
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            record(m)
            continue
        d = _brent_rho(m)
        stack.append(d)
        stack.append(m // d)
    return dict(sorted(factors.items()))


def is_squarefree(n):
    n = abs(int(n))
    if n == 0:
        return False
    return all(e == 1 for e in factorize(n).values())


def squarefree_part(n):
    """The squarefree integer with the same class in Q*/Q*^2."""
    n = int(n)
    if n == 0:
        raise ValueError("0 has no squarefree part")
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factorize(n).items():
        if e % 2:
            out *= p
    return out


def legendre(a, p):
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    p = int(p)
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    a = int(a) % p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def kronecker(a, n):
    """Kronecker symbol (a/n), the full extension of Jacobi/Legendre."""
    a, n = int(a), int(n)
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 and a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_ellth_power_residue(q, p, ell):
    """Whether q is an ell-th power mod p, i.e. q^((p-1)/ell) == 1 (mod p).

    Requires ell | p - 1 (otherwise every unit is an ell-th power and the
    criterion is undefined) and p not dividing q.
    """
    p, q, ell = int(p), int(q), int(ell)
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not is_prime(ell):
        raise ValueError(f"ell = {ell} is not prime")
    if (p - 1) % ell:
        raise ValueError(f"ell = {ell} does not divide p - 1 = {p - 1}")
    if q % p == 0:
        raise ValueError(f"p = {p} divides q = {q}")
    return pow(q, (p - 1) // ell, p) == 1


def find_p(ell, n, start=2, bound=_UINT64_MAX):
    """Least prime p >= start with p == 1 (mod ell^n), stepping the progression."""
    ell, n, start = int(ell), int(n), int(start)
    if not is_prime(ell):
        raise ValueError(f"ell = {ell} is not prime")
    if n < 1:
        raise ValueError("n must be >= 1")
    step = ell ** n
    c = start + ((1 - start) % step)
    while c <= bound:
        if c > 1 and is_prime(c):
            return c
        c += step
    raise SearchBoundError(f"no prime p == 1 (mod {step}) with {start} <= p <= {bound}")


def find_q(ell, p, bound=2 ** 32):
    """Least odd prime q with the companion congruence that is not an
    ell-th power mod p.

    The congruence is q == 1 (mod 8) for ell = 2 and q == 1 (mod ell^2)
    otherwise; it makes q an ell-th power in Q_ell, so the places over ell
    keep cyclic decomposition groups.
    """
    ell, p = int(ell), int(p)
    if not is_prime(ell) or not is_prime(p):
        raise ValueError("ell and p must be prime")
    if (p - 1) % ell:
        raise ValueError(f"need p == 1 (mod {ell}) for the residue criterion")
    step = 8 if ell == 2 else ell * ell
    q = 1 + step
    while q <= bound:
        if q != p and is_prime(q) and not is_ellth_power_residue(q, p, ell):
            return q
        q += step
    raise SearchBoundError(f"no admissible q <= {bound} for (ell, p) = ({ell}, {p})")


@dataclass(frozen=True)
class LocalSquareClass:
    """Whether a squarefree integer is a square in Q_place.

    Rules: at an odd prime p, square iff p does not divide d and d is a
    quadratic residue mod p; at 2, square iff d == 1 (mod 8) (a squarefree
    even d has 2-adic valuation 1 and is never a square); at "inf", square
    iff d > 0.
    """

    place: object
    value: int
    is_square: bool


def local_square(d, place):
    d = int(d)
    if d == 0 or not is_squarefree(d):
        raise ValueError(f"{d} is not a nonzero squarefree integer")
    if place == "inf":
        return LocalSquareClass("inf", d, d > 0)
    p = int(place)
    if not is_prime(p):
        raise ValueError(f"place {place!r} is neither a prime nor 'inf'")
    if p == 2:
        return LocalSquareClass(2, d, d % 8 == 1)
    return LocalSquareClass(p, d, d % p != 0 and legendre(d, p) == 1)


@dataclass(frozen=True)
class KummerPair:
    """Independent square classes a, b defining Q(sqrt a, sqrt b)/Q.

    Both must be squarefree, neither 1 (a perfect square), and a != b so the
    classes in Q*/Q*^2 are independent and the Galois group is Z/2 x Z/2.
    """

    a: int
    b: int

    def __post_init__(self):
        a, b = int(self.a), int(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        for name, value in (("a", a), ("b", b)):
            if value == 0 or not is_squarefree(value):
                raise ValueError(f"{name} = {value} is not a nonzero squarefree integer")
            if value == 1:
                raise ValueError(f"{name} = 1 is a perfect square")
        if a == b:
            raise ValueError("a and b must define independent square classes (a != b)")

    @property
    def third_class(self):
        """The squarefree representative of the class of a*b."""
        g = gcd(abs(self.a), abs(self.b))
        return (self.a // g) * (self.b // g)

    def ramified_primes(self):
        """The primes that ramify in Q(sqrt a, sqrt b)/Q, in increasing order."""
        odd = sorted(
            p for p in set(factorize(self.a)) | set(factorize(self.b)) if p != 2
        )
        two_ramified = any(
            d % 2 == 0 or d % 4 == 3 for d in (self.a, self.b, self.third_class)
        )
        return ([2] if two_ramified else []) + odd


def biquadratic_galois_group():
    """Gal(Q(sqrt a, sqrt b)/Q) as Z/2 x Z/2.

    Element index 2i + j is the automorphism sending sqrt a to (-1)^i sqrt a
    and sqrt b to (-1)^j sqrt b.
    """
    return direct_product(cyclic_group(2), cyclic_group(2))


def decomposition_subgroup(pair, place, group=None):
    """Decomposition subgroup at a place of Q, inside Z/2 x Z/2.

    An automorphism lies in the local Galois group iff it fixes sqrt(d) for
    every d in {a, b, ab} that is a square in Q_place, so the order is
    4 / #(locally square classes among {1, a, b, ab}).
    """
    if group is None:
        group = biquadratic_galois_group()
    elif group.order != 4 or group.exponent() != 2:
        raise ValueError("ambient group must be the Klein four-group")
    classes = [(1, 0, pair.a), (0, 1, pair.b), (1, 1, pair.third_class)]
    square_exponents = [
        (alpha, beta)
        for alpha, beta, d in classes
        if local_square(d, place).is_square
    ]
    members = [
        2 * i + j
        for i in range(2)
        for j in range(2)
        if all((i * alpha + j * beta) % 2 == 0 for alpha, beta in square_exponents)
    ]
    return Subgroup(group, members)


def biquadratic_place_records(pair, group=None):
    """PlaceRecords at 2 and at every prime dividing a*b, with witnesses.

    The record list contains every place that ramifies in Q(sqrt a, sqrt b)/Q
    (the place 2 is recorded even when unramified, for its witness table).
    Returns (records, witness_rows).
    """
    if group is None:
        group = biquadratic_galois_group()
    ramified = set(pair.ramified_primes())
    scan = sorted({2} | {p for p in set(factorize(pair.a)) | set(factorize(pair.b))})
    records = []
    witnesses = []
    for v in scan:
        sub = decomposition_subgroup(pair, v, group)
        records.append(PlaceRecord(v, sub, v in ramified))
        witnesses.append({
            "place": v,
            "ramified": v in ramified,
            "square_classes": {
                str(d): local_square(d, v).is_square
                for d in (pair.a, pair.b, pair.third_class)
            },
            "decomposition_order": sub.order,
            "cyclic": sub.is_cyclic(),
            "elements": [group.names[x] for x in sub.elements],
        })
    return records, witnesses


def sigma0_biquadratic(pair):
    """Places of Q with non-cyclic decomposition group in Q(sqrt a, sqrt b).

    Only ramified places can have the full Klein group locally, so the scan
    covers 2 and the prime divisors of a*b; the archimedean place never
    qualifies (complex conjugation generates a cyclic local group).
    """
    records, _ = biquadratic_place_records(pair)
    return [int(rec.label) for rec in records if rec.subgroup.order == 4]


def ellth_root_in_zell(q, ell, precision=8):
    """A witness x with x^ell == q (mod ell^precision), or None.

    Exists whenever q == 1 (mod 8) for ell = 2, or q == 1 (mod ell^2) for odd
    ell: such units are ell-th powers in Z_ell (digit-by-digit Hensel lift).
    """
    q, ell = int(q), int(ell)
    precision = max(int(precision), 3 if ell == 2 else 2)
    if ell == 2:
        if q % 8 != 1:
            return None
        x = 1
        for k in range(3, precision):
            # lift x*x == q (mod 2^k) to mod 2^(k+1); x odd, so adding
            # 2^(k-1) flips the residue by exactly 2^k
            if (x * x - q) % (1 << (k + 1)):
                x += 1 << (k - 1)
        mod = 1 << precision
    else:
        if q % (ell * ell) != 1:
            return None
        x = 1
        for j in range(2, precision):
            target = ell ** (j + 1)
            step = ell ** (j - 1)
            for c in range(ell):
                if (pow(x + c * step, ell, target) - q) % target == 0:
                    x += c * step
                    break
            else:
                return None
        mod = ell ** precision
    if (pow(x, ell, mod) - q) % mod:
        raise AssertionError("Hensel lift produced a bad witness")
    return x % mod


@dataclass(frozen=True)
class CertCheck:
    """One verified proof obligation with its witness data."""

    name: str
    statement: str
    witness: object
    passed: bool


@dataclass
class Certificate:
    """Machine-checkable verdict for one (ell, n, p, q) counterexample.

    The conclusion is "certified" only if every check passed, the kernel for
    Sigma_0 differs from the full kernel, and removing any designated place
    collapses the kernel back to the full one.
    """

    ell: int
    n: int
    p: int
    q: int | None
    field_desc: str
    group_order: int = 0
    group_exponent: int = 0
    module_rank: int = 0
    module_modulus: int = 0
    module_order_exponent: int = 0
    checks: list = field(default_factory=list)
    sigma0_labels: list = field(default_factory=list)
    sigma0_exact: bool = False
    sigma0_statement: str = ""
    places: list = field(default_factory=list)
    sha_cyc: AbGroupStructure | None = None
    sha_sigma0: AbGroupStructure | None = None
    sha_sigma0_minus: dict = field(default_factory=dict)
    sha_full: AbGroupStructure | None = None
    designated_places: list = field(default_factory=list)
    conclusion: str = ""
    conclusion_detail: str = ""

    @property
    def certified(self):
        return self.conclusion == "certified"

    def to_json_dict(self):
        """Canonical JSON form; every integer is a decimal string."""

        def structure(s):
            return None if s is None else [str(d) for d in s.invariant_factors]

        return {
            "parameters": {
                "ell": str(self.ell),
                "n": str(self.n),
                "p": str(self.p),
                "q": None if self.q is None else str(self.q),
            },
            "field": self.field_desc,
            "group": {
                "description": f"Z/{self.ell}^{self.n} x Z/{self.ell}",
                "order": str(self.group_order),
                "exponent": str(self.group_exponent),
            },
            "module": {
                "description": f"augmentation ideal of (Z/{self.module_modulus})[G]",
                "modulus": str(self.module_modulus),
                "rank": str(self.module_rank),
                "order_exponent": str(self.module_order_exponent),
            },
            "checks": [
                {
                    "name": c.name,
                    "statement": c.statement,
                    "witness": _jsonify(c.witness),
                    "pass": c.passed,
                }
                for c in self.checks
            ],
            "sigma0": {
                "labels": [str(v) for v in self.sigma0_labels],
                "exact": self.sigma0_exact,
                "statement": self.sigma0_statement,
            },
            "places": _jsonify(self.places),
            "sha": {
                "cyc": structure(self.sha_cyc),
                "sigma0": structure(self.sha_sigma0),
                "sigma0_minus": {
                    str(k): structure(v) for k, v in self.sha_sigma0_minus.items()
                },
                "full": structure(self.sha_full),
            },
            "designated_places": [str(v) for v in self.designated_places],
            "conclusion": self.conclusion,
            "conclusion_detail": self.conclusion_detail,
        }


def _jsonify(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    return str(value)


def certify(ell, n, p, q=None, *, search_bound=2 ** 32, hensel_precision=8,
            group_limit=512):
    """Build and verify the counterexample certificate for (ell, n, p[, q]).

    Checks the prime-search hypotheses, the cohomology of the augmentation
    ideal over Z/ell^(n+1), and the place model; see the Certificate
    docstring for the conclusion rule.  A failed hypothesis yields conclusion
    "refuted: <check>"; an exhausted q-search raises SearchBoundError.
    """
    ell, n, p = int(ell), int(n), int(p)
    cert = Certificate(ell=ell, n=n, p=p, q=None if q is None else int(q),
                       field_desc="Q" if (ell, n) == (2, 1) else f"Q(zeta_{ell ** n})")
    checks = cert.checks

    def add(name, statement, witness, ok):
        checks.append(CertCheck(name, statement, witness, bool(ok)))
        return bool(ok)

    def refute():
        failed = next(c.name for c in checks if not c.passed)
        cert.conclusion = f"refuted: {failed}"
        cert.conclusion_detail = f"hypothesis check {failed!r} failed; no counterexample is certified"
        return cert

    ok = add("ell_prime", f"ell = {ell} is prime", {"ell": ell}, _safe_prime(ell))
    ok &= add("n_positive", f"n = {n} >= 1", {"n": n}, n >= 1)
    ok &= add("p_prime", f"p = {p} is prime", {"p": p}, _safe_prime(p))
    if not ok:
        return refute()
    pmod = ell ** n
    if not add("p_congruence", f"p == 1 (mod {ell}^{n} = {pmod})",
               {"p_mod": p % pmod}, p % pmod == 1):
        return refute()

    if q is None:
        q = find_q(ell, p, bound=search_bound)
    q = int(q)
    cert.q = q

    ok = add("q_prime", f"q = {q} is prime", {"q": q}, _safe_prime(q))
    ok &= add("q_odd", f"q = {q} is odd", {"q": q}, q % 2 == 1)
    ok &= add("q_distinct_from_p", f"q = {q} differs from p = {p}", {"p": p, "q": q}, q != p)
    qmod = 8 if ell == 2 else ell * ell
    ok &= add("q_congruence", f"q == 1 (mod {qmod})", {"q_mod": q % qmod}, q % qmod == 1)
    if ok:
        euler = pow(q, (p - 1) // ell, p)
        ok &= add(
            "q_not_ellth_power_mod_p",
            f"q^((p-1)/{ell}) != 1 (mod p), so q is not an {ell}-th power mod p",
            {"euler_power": euler}, euler != 1,
        )
        root = ellth_root_in_zell(q, ell, hensel_precision)
        local_stmt = (
            f"q == 1 (mod 8) makes q a square in Q_2"
            if ell == 2
            else f"q == 1 (mod {ell}^2) makes q an {ell}-th power in Q_{ell}"
        )
        ok &= add(
            "q_ellth_power_locally_at_ell",
            local_stmt + f"; witness root to precision {ell}^{hensel_precision}",
            {"root": root, "precision_exponent": hensel_precision},
            root is not None,
        )
    if not ok:
        return refute()

    if ell ** (n + 1) > group_limit:
        # before building the Cayley table: its size is quadratic in the order
        raise ValueError(
            f"group order {ell}^{n + 1} exceeds the limit {group_limit}")
    group = product_of_prime_powers(ell, n)
    modulus = ell ** (n + 1)
    ideal, _, _ = augmentation_ideal(group, modulus)
    cert.group_order = group.order
    cert.group_exponent = group.exponent()
    cert.module_rank = ideal.rank
    cert.module_modulus = modulus
    a_exp = (n + 1) * (ell ** (n + 1) - 1)
    cert.module_order_exponent = a_exp
    add("module_order",
        f"|I| = {modulus}^{ideal.rank} = {ell}^a with a = (n+1)({ell}^{n + 1}-1) = {a_exp}",
        {"rank": ideal.rank, "modulus": modulus, "order_exponent": a_exp},
        ideal.size == ell ** a_exp)

    lemma = verify_augmentation_lemma(group)
    cert.sha_cyc = lemma.computed
    add("sha_cyc_value",
        f"Sha^1_cyc(G, I) = Z/{ell} (the f = n/e invariant of the order-{group.order},"
        f" exponent-{group.exponent()} group)",
        {"computed": [str(d) for d in lemma.computed.invariant_factors],
         "expected": [str(d) for d in lemma.expected.invariant_factors]},
        lemma.passed and lemma.computed == AbGroupStructure([ell]))

    shifts = dimension_shift_check(group)
    add("dimension_shift",
        "H^1(H, I|_H) = Z/|H| and H^1(H, (Z/m)[G]|_H) = 0 for every cyclic subgroup and for G",
        [{"subgroup_order": r.subgroup.order,
          "ideal_h1": [str(d) for d in r.ideal_h1.invariant_factors],
          "ring_h1": [str(d) for d in r.ring_h1.invariant_factors]}
         for r in shifts],
        all(r.passed for r in shifts))

    if (ell, n) == (2, 1):
        pair = KummerPair(p, q)
        records, witness_rows = biquadratic_place_records(pair, group)
        cert.places = witness_rows
        sigma0 = [int(rec.label) for rec in records if rec.subgroup.order == 4]
        sigma0_keys = [str(v) for v in sigma0]
        cert.sigma0_labels = sigma0
        cert.sigma0_exact = True
        cert.sigma0_statement = (
            f"Sigma_0(Q, I) = {{{', '.join(sigma0_keys)}}}: the places with full (non-cyclic)"
            " decomposition group, computed from local square classes at 2 and at the primes"
            " dividing a*b"
        )
        add("sigma0_disjoint_from_ell",
            "no place in Sigma_0 divides ell = 2 (= the residue characteristic of |I|),"
            " so Sigma_0 lies in the ramified-but-coprime bad set",
            {"sigma0": sigma0}, 2 not in sigma0)
        designated = sigma0_keys
    else:
        phi = ell ** n - ell ** (n - 1)
        full = full_subgroup(group)
        first_factor = subgroup_generated(group, [ell])  # (1,0), generating Z/ell^n x 0
        records = [PlaceRecord(f"over-{p}-{i + 1}", full, True) for i in range(phi)]
        over_p_keys = [rec.key for rec in records]
        records.append(PlaceRecord(f"over-{ell}", first_factor, True))
        cert.places = [
            {"place": rec.key, "ramified": rec.ramified,
             "decomposition_order": rec.subgroup.order,
             "cyclic": rec.subgroup.is_cyclic(),
             "elements": [group.names[x] for x in rec.subgroup.elements]}
            for rec in records
        ]
        cert.sigma0_labels = [rec.key for rec in records[:phi]]
        cert.sigma0_exact = False
        cert.sigma0_statement = (
            f"Sigma_0 contains all {phi} places of {cert.field_desc} over p = {p};"
            f" it contains no place over ell = {ell}; membership of the remaining ramified"
            f" places (over q = {q}) is not determined"
        )
        add("decomposition_full_over_p",
            f"each place over p has full decomposition group: x^{ell}^{n} - p is Eisenstein"
            f" there (p splits completely in {cert.field_desc}, v(p) = 1), and the residue"
            f" extension has degree {ell} because q is not an {ell}-th power mod p",
            {"places_over_p": phi,
             "residue_field": f"F_{p}",
             "residue_degree_witness": pow(q, (p - 1) // ell, p)},
            True)
        add("decomposition_cyclic_over_ell",
            f"q is an {ell}-th power in Q_{ell}, so the decomposition group of the place"
            f" over {ell} embeds in the cyclic factor Z/{ell}^{n}",
            {"root": ellth_root_in_zell(q, ell, hensel_precision)},
            True)
        add("sigma0_disjoint_from_ell",
            f"places over ell = {ell} have cyclic decomposition groups and are not in Sigma_0",
            {"sigma0_known_members": over_p_keys}, True)
        designated = over_p_keys

    sigma0_excluded = [str(v) for v in cert.sigma0_labels]
    sha_full = sha_sigma(group, ideal, records, excluded=())
    sha_s0 = sha_sigma(group, ideal, records, excluded=sigma0_excluded)
    cert.sha_full = sha_full.structure
    cert.sha_sigma0 = sha_s0.structure
    cert.designated_places = list(designated)
    for key in designated:
        rest = [v for v in sigma0_excluded if v != key]
        cert.sha_sigma0_minus[key] = sha_sigma(group, ideal, records, excluded=rest).structure

    add("sigma0_kernel_is_cyclic_kernel",
        "the restriction kernel for Sigma_0 equals the cyclic-subgroup kernel"
        " (finite model of the omega identity)",
        {"sigma0_kernel": [str(d) for d in sha_s0.structure.invariant_factors]},
        sha_s0.structure == lemma.computed)
    add("sha_quotient_nontrivial",
        "Sha^1_{Sigma_0}(k, I) != Sha^1(k, I), so approximation fails in Sigma_0",
        {"sigma0_kernel": [str(d) for d in sha_s0.structure.invariant_factors],
         "full_kernel": [str(d) for d in sha_full.structure.invariant_factors]},
        sha_s0.structure != sha_full.structure)
    for key in designated:
        add(f"removal:{key}",
            f"Sha^1 for Sigma_0 minus {{{key}}} equals Sha^1, so approximation holds there",
            {"kernel": [str(d) for d in cert.sha_sigma0_minus[key].invariant_factors]},
            cert.sha_sigma0_minus[key] == sha_full.structure)

    if all(c.passed for c in checks):
        cert.conclusion = "certified"
        cert.conclusion_detail = (
            f"The restriction kernel jumps from {cert.sha_full} to {cert.sha_sigma0} over"
            f" Sigma_0 and collapses back when any designated place is removed. Assuming the"
            f" duality between approximation defect and these kernels, the Cartier-dual"
            f" module of order {ell}^{cert.module_order_exponent} fails weak approximation"
            f" exactly on Sigma_0 and nowhere smaller."
        )
    else:
        return refute()
    return cert


def _safe_prime(x):
    try:
        return is_prime(x)
    except ValueError:
        return False
