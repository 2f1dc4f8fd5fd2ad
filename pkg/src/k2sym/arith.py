"""Exact arithmetic substrate: primes, factorization, finite fields, polynomials.

Everything downstream (local symbols, reciprocity, function-field places)
reduces to the primitives in this module.  All arithmetic is exact: Python
ints, fractions.Fraction, and field-element encodings.  Nothing here is
probabilistic except Cantor-Zassenhaus splitting, which is derandomized by
seeding from the input polynomial.
"""
from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

# Degree of the zero polynomial.  A distinguished marker, never -1, so that
# accidental integer arithmetic on it is loud (it propagates as -inf).
NEG_INF = float("-inf")

# Witness set making Miller-Rabin deterministic for n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Factorization refuses inputs whose prime parts exceed this bound.
FACTOR_BOUND = 10**12


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@functools.lru_cache(maxsize=None)
def _prime_list(limit: int) -> tuple[int, ...]:
    """Primes up to limit, by sieve."""
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i in range(limit + 1) if sieve[i])


def primes_below(limit: int) -> tuple[int, ...]:
    """Primes < limit.  Sieve results are cached at a few canonical sizes."""
    for size in (1 << 10, 1 << 14, 1 << 20):
        if limit <= size:
            ps = _prime_list(size)
            break
    else:
        ps = _prime_list(limit)
    out = []
    for p in ps:
        if p >= limit:
            break
        out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive rational: ((p, e), ...) with the
    primes strictly increasing and e nonzero (negative e for denominator
    primes)."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = 1
        for p, e in self.factors:
            if p <= last or e == 0 or not is_prime(p):
                raise ValueError(f"malformed factorization: {self.factors}")
            last = p

    def value(self) -> Fraction:
        v = Fraction(1)
        for p, e in self.factors:
            v *= Fraction(p) ** e
        return v

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def _factor_positive(n: int) -> dict[int, int]:
    """Trial division by cached primes; Miller-Rabin certifies the cofactor."""
    out: dict[int, int] = {}
    m = n
    bound = isqrt(m) + 1
    for p in primes_below(min(bound + 1, 10**6 + 1)):
        if p * p > m:
            break
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    if m > 1:
        if not is_prime(m):
            raise ValueError(f"factorization bound exceeded for {n}")
        out[m] = out.get(m, 0) + 1
    return out


def factorize(x: int | Fraction) -> tuple[int, Factorization]:
    """Factor a nonzero rational as sign * prod p^e.

    Returns (sign, Factorization).  Denominator primes appear with negative
    exponent.  Raises ValueError on 0 and on inputs beyond the supported
    factor bound.
    """
    x = Fraction(x)
    if x == 0:
        raise ValueError("cannot factor 0")
    if abs(x.numerator) > FACTOR_BOUND or x.denominator > FACTOR_BOUND:
        raise ValueError(f"input beyond factorization bound: {x}")
    sign = 1 if x > 0 else -1
    fac = _factor_positive(abs(x.numerator))
    for p, e in _factor_positive(x.denominator).items():
        fac[p] = fac.get(p, 0) - e
    items = tuple(sorted((p, e) for p, e in fac.items() if e != 0))
    return sign, Factorization(items)


def valuation(x: int | Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0")
    v = 0
    n = abs(x.numerator)
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, via Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


# ---------------------------------------------------------------------------
# Coefficient-list arithmetic over F_p (bootstrap layer for Fq internals).
# Lists are little-endian, no trailing zeros.


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_add(a, b, p):
    n = max(len(a), len(b))
    return _fp_trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    return _fp_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = a[-1] * inv_lead % p
        d = len(a) - len(b)
        q[d] = c
        for i, bi in enumerate(b):
            a[d + i] = (a[d + i] - c * bi) % p
        _fp_trim(a)
    return _fp_trim(q), a


def _fp_powmod(a, e, mod, p):
    result = [1]
    base = _fp_divmod(a, mod, p)[1]
    while e:
        if e & 1:
            result = _fp_divmod(_fp_mul(result, base, p), mod, p)[1]
        base = _fp_divmod(_fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _fp_is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test: x^(p^n) = x mod f and gcd(x^(p^(n/l)) - x, f) = 1."""
    n = len(f) - 1
    if n < 1:
        return False
    x = [0, 1]
    xq = _fp_powmod(x, p**n, f, p)
    if _fp_sub(xq, _fp_divmod(x, f, p)[1], p):
        return False
    for ell in sorted({q for q, _ in _factor_positive(n).items()}):
        xql = _fp_powmod(x, p ** (n // ell), f, p)
        g = _fp_gcd(_fp_sub(xql, x, p), f, p)
        if g != [1]:
            return False
    return True


# ---------------------------------------------------------------------------
# Finite fields F_q, q = p^k.  Elements are encoded as integers in [0, q):
# the element with polynomial-basis coordinates (c_0, ..., c_{k-1}) is
# c_0 + c_1 p + ... + c_{k-1} p^{k-1}.  Integer order on encodings is the
# fixed basis ordering used by generator().


class Fq:
    """The finite field with q = p^k elements.

    For k > 1 the field is F_p[X]/(m) where m is the monic irreducible of
    degree k whose non-leading coefficient vector has the smallest integer
    encoding (a deterministic, lexicographic choice).
    """

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("k must be >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        self.char = p
        self.zero = 0
        self.one = 1 % self.q
        if k == 1:
            self.modulus_coeffs: tuple[int, ...] | None = None
        else:
            self.modulus_coeffs = self._find_modulus()

    def _find_modulus(self) -> tuple[int, ...]:
        for n in range(self.p**self.k):
            coeffs = self._digits(n) + [0] * (self.k - len(self._digits(n)))
            f = coeffs[: self.k] + [1]
            if _fp_is_irreducible(f, self.p):
                return tuple(f)
        raise RuntimeError("no irreducible polynomial found")  # unreachable

    def _digits(self, n: int) -> list[int]:
        out = []
        while n:
            out.append(n % self.p)
            n //= self.p
        return out

    def _encode(self, coeffs: list[int]) -> int:
        n = 0
        for c in reversed(coeffs):
            n = n * self.p + c % self.p
        return n

    # -- field operations on integer encodings --

    def from_int(self, n: int) -> int:
        """Image of the rational integer n under Z -> F_q."""
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        n = max(len(da), len(db))
        return self._encode([((da[i] if i < len(da) else 0) + (db[i] if i < len(db) else 0)) for i in range(n)])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._encode([-c for c in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        prod = _fp_mul(self._digits(a), self._digits(b), self.p)
        _, rem = _fp_divmod(prod, list(self.modulus_coeffs), self.p)
        return self._encode(rem)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def frobenius_root(self, a: int) -> int:
        """The unique p-th root of a (inverse Frobenius)."""
        return self.pow(a, self.p ** (self.k - 1)) if self.k > 1 else a

    def __repr__(self):
        return f"Fq({self.p}^{self.k})" if self.k > 1 else f"Fq({self.p})"

    def __eq__(self, other):
        return isinstance(other, Fq) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))


@functools.lru_cache(maxsize=None)
def field(q: int) -> Fq:
    """The finite field with q elements; q must be a prime power."""
    sign, fac = factorize(q)
    if sign < 0 or len(fac.factors) != 1 or fac.factors[0][1] < 1:
        raise ValueError(f"{q} is not a prime power")
    p, k = fac.factors[0]
    return Fq(p, k)


def generator(q_or_field: int | Fq) -> int:
    """Smallest element (in the basis ordering) generating F_q^*."""
    F = field(q_or_field) if isinstance(q_or_field, int) else q_or_field
    n = F.q - 1
    if n == 1:
        return F.one
    prime_divs = [p for p, _ in _factor_positive(n).items()]
    for a in F.units():
        if all(F.pow(a, n // ell) != F.one for ell in prime_divs):
            return a
    raise RuntimeError("no generator found")  # unreachable for a field


# ---------------------------------------------------------------------------
# The rationals as a coefficient field, so Poly/RatFunc work over Q too.


class QField:
    """Field-protocol wrapper around fractions.Fraction."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def pow(self, a, e):
        return Fraction(a) ** e

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, QField)

    def __hash__(self):
        return hash("QField")


QQ = QField()


# ---------------------------------------------------------------------------
# Univariate polynomials over any exact field (Fq, QField, or the Gaussian
# rationals from the regulator module).


class Poly:
    """Univariate polynomial, little-endian coefficient tuple, no trailing
    zeros.  The zero polynomial has degree NEG_INF."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == field.zero:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- constructors --

    @staticmethod
    def const(field, c) -> "Poly":
        return Poly(field, [c])

    @staticmethod
    def x(field) -> "Poly":
        return Poly(field, [field.zero, field.one])

    @staticmethod
    def from_ints(field, ints) -> "Poly":
        return Poly(field, [field.from_int(n) for n in ints])

    # -- structure --

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self):
        if not self.coeffs:
            raise ValueError("leading coefficient of 0")
        return self.coeffs[-1]

    def constant_value(self):
        return self.coeffs[0] if self.coeffs else self.field.zero

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.field.inv(self.lc())
        return Poly(self.field, [self.field.mul(c, inv) for c in self.coeffs])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc() == self.field.one

    # -- arithmetic --

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("mixed coefficient fields")

    def __add__(self, other):
        self._check(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        return Poly(F, [F.add(a[i] if i < len(a) else F.zero, b[i] if i < len(b) else F.zero) for i in range(n)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        self._check(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly(F, [])
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ai in enumerate(self.coeffs):
            if ai == F.zero:
                continue
            for j, bj in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out)

    def scale(self, c) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(self.field, self.field.one)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other) -> tuple["Poly", "Poly"]:
        self._check(other)
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.coeffs
        inv_lead = F.inv(d[-1])
        q = [F.zero] * max(0, len(rem) - len(d) + 1)
        while len(rem) >= len(d) and rem:
            c = F.mul(rem[-1], inv_lead)
            k = len(rem) - len(d)
            q[k] = c
            for i, di in enumerate(d):
                rem[k + i] = F.sub(rem[k + i], F.mul(c, di))
            while rem and rem[-1] == F.zero:
                rem.pop()
        return Poly(F, q), Poly(F, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def gcd(self, other) -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def pow_mod(self, e: int, mod: "Poly") -> "Poly":
        result = Poly.const(self.field, self.field.one) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            term = F.zero
            # i * c_i computed by repeated addition semantics: F.from_int(i)*c_i
            term = F.mul(F.from_int(i) if F.char == 0 else F.from_int(i % F.char), self.coeffs[i])
            out.append(term)
        return Poly(F, out)

    def evaluate(self, x):
        """Horner evaluation at a field element."""
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def shift_compose_reverse(self) -> "Poly":
        """Coefficient reversal: T^deg * self(1/T).  Used at infinity."""
        return Poly(self.field, list(reversed(self.coeffs)))

    # -- comparisons --

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Poly({self.field}, {list(self.coeffs)})"

    def sort_key(self):
        """Deterministic total order key: (degree, coefficient encodings)."""
        return (len(self.coeffs), tuple(reversed([_coeff_key(c) for c in self.coeffs])))


def _coeff_key(c):
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return (c.numerator, c.denominator)
    return repr(c)


def is_irreducible(f: Poly) -> bool:
    """Rabin irreducibility over F_q: works for prime and prime-power q."""
    F = f.field
    if not isinstance(F, Fq):
        raise ValueError("irreducibility test requires a finite field")
    n = f.degree
    if n is NEG_INF or n < 1:
        return False
    if n == 1:
        return True
    x = Poly.x(F)
    f = f.monic()
    xq = x.pow_mod(F.q**n, f)
    if xq != x % f:
        return False
    for ell in {p for p, _ in _factor_positive(n).items()}:
        xql = x.pow_mod(F.q ** (n // ell), f)
        if (xql - x).gcd(f).degree != 0:
            return False
    return True


def irreducibles(F: Fq, degree: int):
    """Yield monic irreducibles of the given degree, in encoding order."""
    for n in range(F.q**degree):
        coeffs = []
        m = n
        for _ in range(degree):
            coeffs.append(m % F.q)
            m //= F.q
        f = Poly(F, coeffs + [F.one])
        if is_irreducible(f):
            yield f


# -- polynomial factorization over F_q ---------------------------------------


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split squarefree monic f into products of irreducibles by degree."""
    F = f.field
    out = []
    x = Poly.x(F)
    h = x % f
    rest = f
    d = 0
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            out.append((rest, rest.degree))
            break
        h = h.pow_mod(F.q, rest)
        g = (h - x % rest).gcd(rest)
        if g.degree != 0:
            out.append((g, d))
            rest = (rest // g).monic()
            h = h % rest
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> Poly:
    """Find a proper monic factor of f (product of irreducibles of degree d)."""
    F = f.field
    n = f.degree
    one = Poly.const(F, F.one)
    while True:
        r = Poly(F, [rng.randrange(F.q) for _ in range(n)])
        if r.degree is NEG_INF or r.degree < 1:
            continue
        g = r.gcd(f)
        if 0 < g.degree < n:
            return g.monic()
        if F.char == 2:
            # trace map to F_2: sum of 2-power Frobenius images
            bits = F.k * d
            t = r % f
            acc = t
            for _ in range(bits - 1):
                t = t.pow_mod(2, f)
                acc = (acc + t) % f
            g = acc.gcd(f)
        else:
            e = (F.q**d - 1) // 2
            g = (r.pow_mod(e, f) - one).gcd(f)
        if 0 < g.degree < n:
            return g.monic()


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    if f.degree == d:
        return [f.monic()]
    g = _equal_degree_split(f, d, rng)
    return _equal_degree(g, d, rng) + _equal_degree((f // g).monic(), d, rng)


def poly_factor(f: Poly) -> tuple:
    """Factor f over F_q as (leading_coeff, ((g, e), ...)), g monic
    irreducible, strictly increasing in (degree, encoding) order.

    Derandomized: the equal-degree splitting RNG is seeded from the input.
    """
    F = f.field
    if not isinstance(F, Fq):
        raise ValueError("poly_factor requires coefficients in a finite field")
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    lead = f.lc()
    f = f.monic()
    if f.degree == 0:
        return lead, ()
    rng = random.Random(("poly_factor", F.p, F.k, f.coeffs).__repr__())
    exps: dict[Poly, int] = {}
    remaining = f
    # Extract multiplicities by dividing out the squarefree radical repeatedly.
    while remaining.degree != 0:
        d = remaining.derivative()
        if d.is_zero():
            # remaining = h(T^p): recurse on its p-th root, multiply exponents
            cs = [F.frobenius_root(remaining.coeffs[i]) for i in range(0, len(remaining.coeffs), F.char)]
            _, sub = poly_factor(Poly(F, cs))
            for g, e in sub:
                exps[g] = exps.get(g, 0) + e * F.char
            break
        radical = (remaining // remaining.gcd(d)).monic()
        for g, dd in _distinct_degree(radical):
            for irr in _equal_degree(g, dd, rng):
                exps[irr] = exps.get(irr, 0) + 1
        remaining = (remaining // radical).monic()
    items = sorted(exps.items(), key=lambda ge: ge[0].sort_key())
    return lead, tuple(items)


# ---------------------------------------------------------------------------
# Rational functions N/D over an exact field: N, D coprime, D monic.


class RatFunc:
    """Univariate rational function in canonical form (coprime, monic
    denominator)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.field != den.field:
            raise ValueError("mixed coefficient fields")
        g = num.gcd(den)
        if not g.is_constant():
            num, den = num // g, den // g
        lead = den.lc()
        if lead != den.field.one:
            inv = den.field.inv(lead)
            num, den = num.scale(inv), den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def from_poly(f: Poly) -> "RatFunc":
        return RatFunc(f, Poly.const(f.field, f.field.one))

    @property
    def field(self):
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __add__(self, other):
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __mul__(self, other):
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, e: int):
        if e >= 0:
            return RatFunc(self.num**e, self.den**e)
        return RatFunc(self.den ** (-e), self.num ** (-e))

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def evaluate(self, x):
        dv = self.den.evaluate(x)
        F = self.field
        return F.div(self.num.evaluate(x), dv)

    def __eq__(self, other):
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num!r} / {self.den!r})"


# ---------------------------------------------------------------------------
# Bernoulli numbers.


@functools.lru_cache(maxsize=None)
def _bernoulli_list(n: int) -> tuple[Fraction, ...]:
    B = [Fraction(0)] * (n + 1)
    B[0] = Fraction(1)
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * B[j]
        B[m] = -acc / (m + 1)
    return tuple(B)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (B_1 = -1/2 convention), n <= 64.

    Computed by the defining recurrence sum_{j<=n} C(n+1,j) B_j = 0.
    """
    if n < 0 or n > 64:
        raise ValueError("bernoulli supports 0 <= n <= 64")
    return _bernoulli_list(64)[n]
