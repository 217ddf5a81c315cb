"""Finite fields GF(p^f) and exact matrix groups over them.

Field elements are integer codes 0..q-1: the code of a polynomial
c_0 + c_1 x + ... + c_{f-1} x^{f-1} over GF(p) is sum c_i p^i (base-p,
little-endian).  The defining modulus is the first primitive monic
polynomial of degree f in increasing code order of its non-leading
coefficients, so the element x (code p) always generates the
multiplicative group.  Matrices are tuples of row tuples of codes and
act on row vectors from the right: v -> v*A.
"""

from __future__ import annotations

from functools import lru_cache

from .permcore import PermGroup, Permutation


def _factor(n):
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


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


class FieldSpec:
    """GF(p^f) with table-backed arithmetic on integer element codes."""

    def __init__(self, p, f):
        if not _is_prime(p):
            raise ValueError("%d is not prime" % p)
        if f < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.f = f
        self.q = p ** f
        if self.q > 65536:
            raise ValueError("field size %d too large for table arithmetic" % self.q)
        if f == 1:
            self.modulus_coeffs = None
            g = self._smallest_primitive_root()
            exp = [1]
            for _ in range(self.q - 2):
                exp.append(exp[-1] * g % p)
        else:
            self.modulus_coeffs, exp = self._find_primitive_modulus()
        self._exp = exp                      # exp[i] = code of g^i, len q-1
        self._log = {c: i for i, c in enumerate(exp)}
        self.generator = exp[1] if self.q > 2 else 1
        self._digits = [self._to_digits(c) for c in range(self.q)]
        if self.q <= 256:
            self._add = [[self._add_digitwise(a, b) for b in range(self.q)]
                         for a in range(self.q)]
        else:
            self._add = None

    # -- construction helpers

    def _smallest_primitive_root(self):
        p = self.p
        if p == 2:
            return 1
        primes = list(_factor(p - 1))
        for g in range(2, p):
            if all(pow(g, (p - 1) // r, p) != 1 for r in primes):
                return g
        raise RuntimeError("no primitive root mod %d" % p)

    def _to_digits(self, code):
        p = self.p
        return tuple((code // p ** i) % p for i in range(self.f))

    def _add_digitwise(self, a, b):
        p = self.p
        out = 0
        mult = 1
        for i in range(self.f):
            out += ((a // mult + b // mult) % p) * mult
            mult *= p
        return out

    def _find_primitive_modulus(self):
        p, f, q = self.p, self.f, self.q
        for code in range(1, q):
            if code % p == 0:
                continue  # constant term zero: x divides the candidate
            coeffs = [(code // p ** i) % p for i in range(f)]
            exp = self._order_of_x(coeffs)
            if exp is not None:
                return tuple(coeffs) + (1,), exp
        raise RuntimeError("no primitive polynomial found for GF(%d^%d)" % (p, f))

    def _order_of_x(self, coeffs):
        """Powers of x modulo x^f + sum coeffs_i x^i; returns the exp table
        when x has full order q-1, else None."""
        p, f, q = self.p, self.f, self.q
        neg_top = [(-c) % p for c in coeffs]          # x^f = neg_top as vector
        cur = [0] * f
        cur[0] = 1
        exp = []
        seen_one = 0
        for step in range(q - 1):
            code = 0
            mult = 1
            for c in cur:
                code += c * mult
                mult *= p
            if code == 1 and step > 0:
                return None  # order divides step < q-1
            if code == 0:
                return None  # x is a zero divisor (never for c0 != 0, but be safe)
            exp.append(code)
            # multiply by x
            carry = cur[f - 1]
            nxt = [0] + cur[: f - 1]
            if carry:
                for i in range(f):
                    nxt[i] = (nxt[i] + carry * neg_top[i]) % p
            cur = nxt
        # after q-1 steps cur should be back at 1
        code = 0
        mult = 1
        for c in cur:
            code += c * mult
            mult *= p
        return exp if code == 1 else None

    # -- arithmetic on codes

    def add(self, a, b):
        if self._add is not None:
            return self._add[a][b]
        return self._add_digitwise(a, b)

    def neg(self, a):
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.f):
            out += ((p - (a // mult) % p) % p) * mult
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.q)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise ZeroDivisionError
            return 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frobenius(self, a, k=1):
        return self.pow(a, self.p ** k)

    def conj(self, a):
        """x -> x^sqrt(q); the involutory automorphism, for even f."""
        if self.f % 2:
            raise ValueError("conjugation needs an even-degree extension")
        return self.pow(a, self.p ** (self.f // 2))

    def is_square(self, a):
        if a == 0:
            return True
        if self.p == 2:
            return True
        return self._log[a] % 2 == 0

    def elements(self):
        return range(self.q)

    def coeffs(self, a):
        return self._digits[a]

    def from_coeffs(self, cs):
        code = 0
        mult = 1
        for c in cs:
            code += (c % self.p) * mult
            mult *= self.p
        return code

    def trace_to_prime(self, a):
        """Absolute trace into GF(p), returned as an int 0..p-1."""
        t = 0
        x = a
        for _ in range(self.f):
            t = self.add(t, x)
            x = self.frobenius(x)
        return t  # lies in the prime subfield, whose codes are 0..p-1

    def __repr__(self):
        return "GF(%d^%d)" % (self.p, self.f) if self.f > 1 else "GF(%d)" % self.p


@lru_cache(maxsize=None)
def GF(p, f=1):
    return FieldSpec(p, f)


def primitive_polynomial_over(field: FieldSpec, degree):
    """Smallest (by code order of its non-leading coefficients) monic
    primitive polynomial of the given degree over `field`.

    Returned low-degree-first, length degree+1, leading coefficient 1.
    Its companion matrix has multiplicative order q^degree - 1.
    """
    q = field.q
    total = q ** degree
    target = total - 1
    prime_divs = list(_factor(target))
    for code in range(1, total):
        if code % q == 0:
            continue
        coeffs = tuple((code // q ** i) % q for i in range(degree))
        if _poly_x_order_is(field, coeffs, degree, target, prime_divs):
            return coeffs + (1,)
    raise RuntimeError("no primitive polynomial of degree %d over %r" % (degree, field))


def _poly_x_order_is(field, coeffs, degree, target, prime_divs):
    def polymulx(v):
        carry = v[-1]
        out = [0] + list(v[:-1])
        if carry:
            for i in range(degree):
                out[i] = field.sub(out[i], field.mul(carry, coeffs[i]))
        return out

    def polymul(u, v):
        acc = [0] * degree
        shifted = list(u)
        for i in range(degree):
            c = v[i]
            if c:
                for j in range(degree):
                    acc[j] = field.add(acc[j], field.mul(c, shifted[j]))
            if i < degree - 1:
                shifted = polymulx(shifted)
        return acc

    def polypow(base, n):
        result = [0] * degree
        result[0] = 1
        b = list(base)
        while n:
            if n & 1:
                result = polymul(result, b)
            b = polymul(b, b)
            n >>= 1
        return result

    one = [0] * degree
    one[0] = 1
    x = [0] * degree
    if degree == 1:
        x[0] = field.neg(coeffs[0])
    else:
        x[1] = 1
    if polypow(x, target) != one:
        return False
    return all(polypow(x, target // r) != one for r in prime_divs)


# ---------------------------------------------------------------------------
# matrices: tuples of row tuples of field codes

def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(field, A, B):
    n = len(A)
    m = len(B[0])
    k = len(B)
    add, mul = field.add, field.mul
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(m):
            s = 0
            for t in range(k):
                a = Ai[t]
                if a:
                    b = B[t][j]
                    if b:
                        s = add(s, mul(a, b))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def vec_mat(field, v, A):
    n = len(A[0])
    add, mul = field.add, field.mul
    out = []
    for j in range(n):
        s = 0
        for t, a in enumerate(v):
            if a:
                b = A[t][j]
                if b:
                    s = add(s, mul(a, b))
        out.append(s)
    return tuple(out)


def mat_transpose(A):
    return tuple(zip(*A))


def mat_scalar(field, c, A):
    return tuple(tuple(field.mul(c, x) for x in row) for row in A)


def mat_map(field, A, fn):
    return tuple(tuple(fn(x) for x in row) for row in A)


def mat_inverse(field, A):
    n = len(A)
    aug = [list(A[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col]:
                piv = r
                break
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = field.inv(aug[col][col])
        aug[col] = [field.mul(inv_p, x) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [field.sub(x, field.mul(c, y))
                          for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_det(field, A):
    n = len(A)
    m = [list(row) for row in A]
    det = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = field.neg(det)
        det = field.mul(det, m[col][col])
        inv_p = field.inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col]:
                c = field.mul(inv_p, m[r][col])
                m[r] = [field.sub(x, field.mul(c, y))
                        for x, y in zip(m[r], m[col])]
    return det


def mat_pow(field, A, n):
    if n < 0:
        return mat_pow(field, mat_inverse(field, A), -n)
    out = mat_identity(len(A))
    b = A
    while n:
        if n & 1:
            out = mat_mul(field, out, b)
        b = mat_mul(field, b, b)
        n >>= 1
    return out


def mat_order(field, A, cap=10 ** 9):
    ident = mat_identity(len(A))
    B = A
    n = 1
    while B != ident:
        B = mat_mul(field, B, A)
        n += 1
        if n > cap:
            raise RuntimeError("order exceeds cap")
    return n


def companion_matrix(field, poly):
    """Companion matrix of a monic polynomial (low-degree-first coefficients).

    Acts on row vectors on the right as multiplication by x in the power
    basis 1, x, ..., x^{m-1}: e_i -> e_{i+1}, e_{m-1} -> -(c_0, ..., c_{m-1}).
    """
    m = len(poly) - 1
    if poly[-1] != 1:
        raise ValueError("polynomial must be monic")
    rows = []
    for i in range(m - 1):
        rows.append(tuple(1 if j == i + 1 else 0 for j in range(m)))
    rows.append(tuple(field.neg(c) for c in poly[:m]))
    return tuple(rows)


# ---------------------------------------------------------------------------
# matrix group -> permutation group on the vectors of the row space

MAT_TO_PERM_DEGREE_BOUND = 100_000


def vector_code(field, v):
    q = field.q
    code = 0
    mult = 1
    for x in v:
        code += x * mult
        mult *= q
    return code


def vector_from_code(field, code, n):
    q = field.q
    return tuple((code // q ** i) % q for i in range(n))


def mat_to_perm(field, mats, dim=None):
    """Faithful permutation image of the matrix group on all q^dim row
    vectors; returns (PermGroup, encode, decode) where encode maps a vector
    tuple to its point and decode inverts it."""
    if dim is None:
        if not mats:
            raise ValueError("dim required when no matrices are given")
        dim = len(mats[0])
    degree = field.q ** dim
    if degree > MAT_TO_PERM_DEGREE_BOUND:
        raise ValueError("vector count %d exceeds bound %d"
                         % (degree, MAT_TO_PERM_DEGREE_BOUND))
    vectors = [vector_from_code(field, c, dim) for c in range(degree)]
    perms = []
    for A in mats:
        if len(A) != dim or any(len(r) != dim for r in A):
            raise ValueError("matrix dimension mismatch")
        images = [vector_code(field, vec_mat(field, v, A)) for v in vectors]
        perms.append(Permutation(images))
    group = PermGroup(perms, degree)

    def encode(v):
        return vector_code(field, v)

    def decode(c):
        return vector_from_code(field, c, dim)

    return group, encode, decode


# ---------------------------------------------------------------------------
# classical group orders (exact integers)

def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def gl_order(n, q):
    o = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        o *= q ** i - 1
    return o


def sl_order(n, q):
    return gl_order(n, q) // (q - 1)


def pgl_order(n, q):
    return gl_order(n, q) // (q - 1)


def psl_order(n, q):
    return sl_order(n, q) // _gcd(n, q - 1)


def gu_order(n, q):
    o = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        o *= q ** i - (-1) ** i
    return o


def su_order(n, q):
    return gu_order(n, q) // (q + 1)


def psu_order(n, q):
    return su_order(n, q) // _gcd(n, q + 1)


def sp_order(m, q):
    """Order of Sp_{2m}(q)."""
    o = q ** (m * m)
    for i in range(1, m + 1):
        o *= q ** (2 * i) - 1
    return o


def psp_order(m, q):
    return sp_order(m, q) // _gcd(2, q - 1)


def go_order(n, q, eps=0):
    """Order of the full orthogonal group GO^eps_n(q); eps in {+1,-1} for
    even n, eps=0 for odd n."""
    if n % 2 == 1:
        if q % 2 == 0:
            return sp_order((n - 1) // 2, q)
        m = (n - 1) // 2
        o = 2 * q ** (m * m)
        for i in range(1, m + 1):
            o *= q ** (2 * i) - 1
        return o
    if eps not in (1, -1):
        raise ValueError("even dimension needs eps = +1 or -1")
    m = n // 2
    o = 2 * q ** (m * (m - 1)) * (q ** m - eps)
    for i in range(1, m):
        o *= q ** (2 * i) - 1
    return o


def so_order(n, q, eps=0):
    """Order of SO = GO ∩ SL (for q even, conventionally GO itself)."""
    if q % 2 == 0:
        return go_order(n, q, eps)
    return go_order(n, q, eps) // 2


def omega_order(n, q, eps=0):
    """Order of Omega: kernel of the spinor norm in SO (q odd) or of the
    Dickson invariant in GO (q even); index 2 either way, except that the
    odd-dimensional groups in characteristic 2 are symplectic already."""
    if q % 2 == 0:
        if n % 2 == 1:
            return go_order(n, q, eps)
        return go_order(n, q, eps) // 2
    return so_order(n, q, eps) // 2


def pomega_order(n, q, eps=0):
    if n % 2 == 1:
        return omega_order(n, q, eps)
    m = n // 2
    if q % 2 == 1 and q ** m % 4 == eps % 4:
        return omega_order(n, q, eps) // 2
    return omega_order(n, q, eps)


# ---------------------------------------------------------------------------
# .mgp file format

def parse_mgp(text, source="<string>"):
    """Parse the matrix-group format: ``mat <p> <f> <dim>``, then each
    generator as dim rows of dim element codes, generators separated by
    blank lines.  Returns (field, [matrices])."""
    lines = text.splitlines()
    field = None
    dim = None
    mats = []
    current = []
    for ln, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if field is None:
            if not line:
                continue
            parts = line.split()
            if len(parts) != 4 or parts[0] != "mat":
                raise ValueError("%s:%d: expected header 'mat <p> <f> <dim>'"
                                 % (source, ln))
            try:
                p, f, dim = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise ValueError("%s:%d: non-integer header field" % (source, ln))
            if dim <= 0:
                raise ValueError("%s:%d: dimension must be positive" % (source, ln))
            field = GF(p, f)
            continue
        if not line:
            if current:
                if len(current) != dim:
                    raise ValueError("%s:%d: generator has %d rows, expected %d"
                                     % (source, ln, len(current), dim))
                mats.append(tuple(current))
                current = []
            continue
        parts = line.split()
        if len(parts) != dim:
            raise ValueError("%s:%d: expected %d entries, got %d"
                             % (source, ln, dim, len(parts)))
        try:
            row = tuple(int(x) for x in parts)
        except ValueError:
            raise ValueError("%s:%d: non-integer entry" % (source, ln))
        for x in row:
            if not (0 <= x < field.q):
                raise ValueError("%s:%d: code %d out of range for %r"
                                 % (source, ln, x, field))
        current.append(row)
        if len(current) > dim:
            raise ValueError("%s:%d: generator has more than %d rows"
                             % (source, ln, dim))
    if field is None:
        raise ValueError("%s: missing 'mat <p> <f> <dim>' header" % source)
    if current:
        if len(current) != dim:
            raise ValueError("%s: last generator has %d rows, expected %d"
                             % (source, len(current), dim))
        mats.append(tuple(current))
    for A in mats:
        if mat_det(field, A) == 0:
            raise ValueError("%s: singular generator" % source)
    return field, mats


def format_mgp(field, mats, comment=None):
    out = []
    if comment:
        for line in comment.splitlines():
            out.append("# " + line)
    out.append("mat %d %d %d" % (field.p, field.f, len(mats[0]) if mats else 0))
    for A in mats:
        out.append("")
        for row in A:
            out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"
