"""Number-theoretic certificates: primitive prime divisors, r-parts,
orders of outer automorphism groups, minimal faithful degrees, and the
divisibility inequalities used to rule out solvable factors.

Everything here is exact integer arithmetic; no floats anywhere.
"""

from __future__ import annotations

from . import gfmat


# ---------------------------------------------------------------------------
# primes and valuations

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n):
    """Prime factorization by trial division; meant for small inputs
    (outer automorphism orders, exponents, subgroup indexes)."""
    if n <= 0:
        raise ValueError("factorize needs a positive integer")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n, r):
    if n == 0 or r < 2:
        raise ValueError("valuation needs n != 0 and r >= 2")
    v = 0
    while n % r == 0:
        n //= r
        v += 1
    return v


def rpart(n, r):
    """The r-part of n: the largest power of r dividing n."""
    return r ** valuation(n, r)


def r_coprime_part(n, r):
    """n with all factors of r removed."""
    while n % r == 0:
        n //= r
    return n


def r_zero(r):
    """r if r is odd, else 4; the threshold modulus in the r-part lemmas."""
    return 4 if r == 2 else r


def prime_power(q):
    """(p, f) with q = p^f; raises if q is not a prime power."""
    if q < 2:
        raise ValueError("%d is not a prime power" % q)
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError("%d is not a prime power" % q)
    ((p, f),) = fac.items()
    return p, f


def prime_powers_upto(limit):
    """All prime powers q <= limit as (q, p, f), ascending in q."""
    out = []
    for q in range(2, limit + 1):
        try:
            p, f = prime_power(q)
        except ValueError:
            continue
        out.append((q, p, f))
    return out


def multiplicative_order(a, m):
    if m < 2:
        raise ValueError("modulus must be >= 2")
    a %= m
    if _gcd(a, m) != 1:
        raise ValueError("%d is not invertible mod %d" % (a, m))
    n = 1
    x = a
    while x != 1:
        x = x * a % m
        n += 1
    return n


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# primitive prime divisors

def is_ppd_by_order(r, a, m):
    """r is a primitive prime divisor of a^m - 1 iff the multiplicative
    order of a mod r is exactly m."""
    if not is_prime(r) or a % r == 0:
        return False
    return multiplicative_order(a, r) == m


def is_ppd_by_divisibility(r, a, m):
    """The defining property, checked literally: r divides a^m - 1 and no
    a^k - 1 for 1 <= k < m."""
    if not is_prime(r):
        return False
    if pow(a, m, r) != 1:
        return False
    return all(pow(a, k, r) != 1 for k in range(1, m))


def zsigmondy_exceptional(a, m):
    """The parameter pairs with no primitive prime divisor of a^m - 1."""
    if a < 2 or m < 1:
        raise ValueError("need a >= 2 and m >= 1")
    if m == 1:
        return a == 2
    if m == 2:
        t = a + 1
        return t & (t - 1) == 0   # a+1 a power of 2
    return (a, m) == (2, 6)


PPD_TRIAL_BOUND = 10 ** 6


def _moebius(n):
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def cyclotomic_value(a, m):
    """Phi_m(a), by Moebius inversion over the divisors of m."""
    if a < 2 or m < 1:
        raise ValueError("need a >= 2 and m >= 1")
    num = den = 1
    for d in range(1, m + 1):
        if m % d:
            continue
        mu = _moebius(m // d)
        if mu == 1:
            num *= a ** d - 1
        elif mu == -1:
            den *= a ** d - 1
    return num // den


def _pollard_rho(n):
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = _gcd(abs(x - y), n)
        if d != n:
            return d
    raise RuntimeError("factorization stalled on %d" % n)


def _large_prime_factors(n, out=None):
    out = set() if out is None else out
    if n > 1:
        if is_prime(n):
            out.add(n)
        else:
            d = _pollard_rho(n)
            _large_prime_factors(d, out)
            _large_prime_factors(n // d, out)
    return out


def find_ppd(a, m):
    """Smallest primitive prime divisor of a^m - 1, or None when the pair
    is a known exception.

    The primitive primes are exactly the prime factors of Phi_m(a) apart
    from the one possible intrinsic prime dividing m, so factoring the
    cyclotomic value settles the search without touching a^m - 1 itself.
    """
    if zsigmondy_exceptional(a, m):
        return None
    if m == 1:
        return min(factorize(a - 1))
    c = cyclotomic_value(a, m)
    for s in factorize(m):
        while c % s == 0:
            c //= s
    if c == 1:
        raise RuntimeError("cyclotomic value collapsed for a non-exceptional "
                           "pair (%d, %d)" % (a, m))
    # ascending trial division yields the smallest factor outright
    d = 2
    while d * d <= c and d <= PPD_TRIAL_BOUND:
        if c % d == 0:
            return d
        d += 1 if d == 2 else 2
    if d * d > c:
        return c
    return min(_large_prime_factors(c))


# ---------------------------------------------------------------------------
# r-part identities (each returns True when the stated implication or
# equivalence holds for the given instance; they hold universally)

def rpart_lemma_biconditional(t, f, r):
    """r | t^f - 1  iff  r | t^(f') - 1, where f' is f with all r's removed."""
    if not is_prime(r) or t < 2 or f < 1:
        raise ValueError("need prime r, t >= 2, f >= 1")
    fr = r_coprime_part(f, r)
    lhs = (t ** f - 1) % r == 0
    rhs = (t ** fr - 1) % r == 0
    return lhs == rhs


def rpart_lemma_product(t, f, r):
    """If t = 1 mod r0 then (t^f - 1)_r = f_r * (t - 1)_r (vacuous otherwise)."""
    if not is_prime(r) or t < 2 or f < 1:
        raise ValueError("need prime r, t >= 2, f >= 1")
    if t % r_zero(r) != 1:
        return True
    return rpart(t ** f - 1, r) == rpart(f, r) * rpart(t - 1, r)


def rpart_lemma_lower_bound(t, f, r):
    """If r0 | t^f - 1 then (t^f - 1)_r >= r0 * f_r (vacuous otherwise)."""
    if not is_prime(r) or t < 2 or f < 1:
        raise ValueError("need prime r, t >= 2, f >= 1")
    r0 = r_zero(r)
    if (t ** f - 1) % r0 != 0:
        return True
    return rpart(t ** f - 1, r) >= r0 * rpart(f, r)


# ---------------------------------------------------------------------------
# solvable-order bounds

def dixon_bound_holds(order, n):
    """order <= 24^((n-1)/3), compared exactly by cubing."""
    if n < 1 or order < 1:
        raise ValueError("need n >= 1 and order >= 1")
    return order ** 3 <= 24 ** (n - 1)


def factorial_valuation(n, p):
    """v_p(n!) by Legendre's formula."""
    if n < 0 or not is_prime(p):
        raise ValueError("need n >= 0 and prime p")
    v = 0
    pk = p
    while pk <= n:
        v += n // pk
        pk *= p
    return v


def legendre_bound_holds(n, p):
    """(n!)_p < p^(n/(p-1)), i.e. v_p(n!) * (p-1) < n, for n >= 1."""
    if n < 1:
        raise ValueError("need n >= 1")
    return factorial_valuation(n, p) * (p - 1) < n


# ---------------------------------------------------------------------------
# classical simple groups: parameters, orders, outer automorphisms

FAMILIES = ("PSL", "PSU", "PSp", "Omega", "POmega+", "POmega-")


def valid_classical(family, n, q):
    """Parameter ranges in which the family name denotes a simple group."""
    try:
        prime_power(q)
    except ValueError:
        return False
    if family == "PSL":
        return n >= 2 and (n, q) not in ((2, 2), (2, 3))
    if family == "PSU":
        return n >= 3 and (n, q) != (3, 2)
    if family == "PSp":
        return n >= 4 and n % 2 == 0 and (n, q) != (4, 2)
    if family == "Omega":
        return n >= 7 and n % 2 == 1 and q % 2 == 1
    if family in ("POmega+", "POmega-"):
        return n >= 8 and n % 2 == 0
    return False


def simple_order(family, n, q):
    if not valid_classical(family, n, q):
        raise ValueError("invalid parameters (%s, %d, %d)" % (family, n, q))
    if family == "PSL":
        return gfmat.psl_order(n, q)
    if family == "PSU":
        return gfmat.psu_order(n, q)
    if family == "PSp":
        return gfmat.psp_order(n // 2, q)
    if family == "Omega":
        return gfmat.omega_order(n, q)
    if family == "POmega+":
        return gfmat.pomega_order(n, q, 1)
    return gfmat.pomega_order(n, q, -1)


def out_order(family, n, q):
    """|Out(T)| for the classical simple group with these parameters."""
    if not valid_classical(family, n, q):
        raise ValueError("invalid parameters (%s, %d, %d)" % (family, n, q))
    p, f = prime_power(q)
    if family == "PSL":
        if n == 2:
            return _gcd(2, q - 1) * f
        return 2 * _gcd(n, q - 1) * f
    if family == "PSU":
        return 2 * _gcd(n, q + 1) * f
    if family == "PSp":
        m = n // 2
        if m == 2 and q % 2 == 0:
            return 2 * f
        return _gcd(2, q - 1) * f
    if family == "Omega":
        return 2 * f
    m = n // 2
    d = _gcd(2, q - 1)
    if family == "POmega-":
        if q % 2 == 1 and pow(q, m, 4) == 3:
            return 8 * f
        return 2 * d * f
    # POmega+
    if m == 4:
        return _fact(2 + d) * f
    if q % 2 == 1 and pow(q, m, 4) == 1:
        return 8 * f
    return 2 * d * f


def out_structure(family, n, q):
    """Shape of Out(T) as a readable string."""
    if not valid_classical(family, n, q):
        raise ValueError("invalid parameters (%s, %d, %d)" % (family, n, q))
    p, f = prime_power(q)
    if family == "PSL":
        if n == 2:
            return "C%d x C%d" % (_gcd(2, q - 1), f)
        return "C%d : (C2 x C%d)" % (_gcd(n, q - 1), f)
    if family == "PSU":
        return "C%d : C%d" % (_gcd(n, q + 1), 2 * f)
    if family == "PSp":
        m = n // 2
        if m == 2 and q % 2 == 0:
            return "C%d" % (2 * f)
        return "C%d x C%d" % (_gcd(2, q - 1), f)
    if family == "Omega":
        return "C2 x C%d" % f
    m = n // 2
    d = _gcd(2, q - 1)
    if family == "POmega-":
        if q % 2 == 1 and pow(q, m, 4) == 3:
            return "D8 x C%d" % f
        return "C%d x C%d" % (d, 2 * f)
    if m == 4:
        return "S%d x C%d" % (2 + d, f)
    if q % 2 == 1 and pow(q, m, 4) == 1:
        return "D8 x C%d" % f
    return "C2 x C%d x C%d" % (d, f)


def _fact(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def classical_ids(max_dim, max_q):
    """All valid (family, n, q) triples within the given bounds."""
    qs = [q for q, _, _ in prime_powers_upto(max_q)]
    out = []
    for q in qs:
        for n in range(2, max_dim + 1):
            for fam in FAMILIES:
                if valid_classical(fam, n, q):
                    out.append((fam, n, q))
    return out


# ---------------------------------------------------------------------------
# minimal faithful permutation degrees

def minimal_faithful_degree(family, n, q):
    """Smallest index of a proper subgroup, by family and parameters."""
    if not valid_classical(family, n, q):
        raise ValueError("invalid parameters (%s, %d, %d)" % (family, n, q))
    if family == "PSL":
        special = {(2, 5): 5, (2, 7): 7, (2, 9): 6, (2, 11): 11, (4, 2): 8}
        if (n, q) in special:
            return special[(n, q)]
        return (q ** n - 1) // (q - 1)
    if family == "PSp":
        m = n // 2
        if q == 2:
            return 2 ** (m - 1) * (2 ** m - 1)
        if (m, q) == (2, 3):
            return 27
        return (q ** n - 1) // (q - 1)
    if family == "Omega":
        m = (n - 1) // 2
        if q == 3:
            return 3 ** m * (3 ** m - 1) // 2
        return (q ** (2 * m) - 1) // (q - 1)
    if family == "POmega+":
        m = n // 2
        if q == 2:
            return 2 ** (m - 1) * (2 ** m - 1)
        return (q ** m - 1) * (q ** (m - 1) + 1) // (q - 1)
    if family == "POmega-":
        m = n // 2
        return (q ** m + 1) * (q ** (m - 1) - 1) // (q - 1)
    # PSU
    if n == 3:
        return 50 if q == 5 else q ** 3 + 1
    if n == 4:
        return (q + 1) * (q ** 3 + 1)
    if q == 2 and n % 6 == 0:
        return 2 ** (n - 1) * (2 ** n - 1) // 3
    sign_n = (-1) ** n
    return ((q ** n - sign_n) * (q ** (n - 1) + sign_n)) // (q * q - 1)


def alternating_min_degree(n):
    if n < 5:
        raise ValueError("simple alternating groups start at degree 5")
    return n


SPORADIC_MIN_DEGREE = {
    "M11": 11, "M12": 12, "M22": 22, "M23": 23, "M24": 24, "HS": 100,
}

SPORADIC_ORDER = {
    "M11": 7920, "M12": 95040, "M22": 443520, "M23": 10200960,
    "M24": 244823040, "HS": 44352000,
}

SPORADIC_OUT = {
    "M11": 1, "M12": 2, "M22": 2, "M23": 1, "M24": 1, "HS": 2,
}


# ---------------------------------------------------------------------------
# the common-divisor inequality |T|_r >= r |Out(T)|_r

def common_divisor_report(family, n, q):
    """For each prime r dividing |Out(T)|: (r, |T|_r, |Out(T)|_r, equality)."""
    t = simple_order(family, n, q)
    o = out_order(family, n, q)
    rows = []
    for r in sorted(factorize(o)):
        if t % r != 0:
            continue
        tr = rpart(t, r)
        orr = rpart(o, r)
        rows.append((r, tr, orr, tr == r * orr))
    return rows


def common_divisor_holds(family, n, q):
    """True when |T|_r >= r |Out(T)|_r for every common prime divisor r."""
    return all(tr >= r * orr for r, tr, orr, _ in common_divisor_report(family, n, q))


# pairs of parameter triples naming the same abstract group
_CLASSICAL_TWINS = {
    ("PSL", 2, 4): ("PSL", 2, 5),
    ("PSL", 2, 5): ("PSL", 2, 4),
    ("PSL", 3, 2): ("PSL", 2, 7),
    ("PSL", 2, 7): ("PSL", 3, 2),
    ("PSU", 4, 2): ("PSp", 4, 3),
    ("PSp", 4, 3): ("PSU", 4, 2),
}


def classical_twin(family, n, q):
    """The other classical parameter triple naming the same group, if any."""
    return _CLASSICAL_TWINS.get((family, n, q))


def equality_case_predicted(family, n, q, r):
    """Whether the abstract group with these parameters is one of the
    classified equality cases.  The conditions refer to the group up to
    isomorphism, so both parameterizations of a coincidental pair count."""
    if _equality_case_raw(family, n, q, r):
        return True
    twin = classical_twin(family, n, q)
    if twin is not None:
        return _equality_case_raw(*twin, r)
    return False


def _equality_case_raw(family, n, q, r):
    p, f = prime_power(q)
    if r == 2:
        return family == "PSL" and n == 2 and p % 8 in (3, 5)
    if r == 3:
        if family == "PSL" and n == 2:
            return p % 9 in (2, 4, 5, 7) and f % 3 == 0
        if family == "PSL" and n == 3:
            return ((p % 9 in (2, 5) and f % 6 in (2, 3, 4))
                    or (p % 9 in (4, 7) and f % 3 != 0))
        if family == "PSU" and n == 3:
            return ((p % 9 in (2, 5) and f % 6 in (0, 1, 5))
                    or (p % 9 in (4, 7) and f % 3 == 0))
        return False
    return False
