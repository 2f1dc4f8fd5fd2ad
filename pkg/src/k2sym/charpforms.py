"""Differential forms in two variables over F_p(s, t).

The chain Omega^0 -> Omega^1 -> Omega^2 with exterior derivative, dlog, and
the Cartier operator C.  In two variables Omega^2 is top degree, so every
2-form is closed and the classical monomial rule decides everything:

    C(s^i t^j ds^dt) = s^((i+1)/p - 1) t^((j+1)/p - 1) ds^dt
                       when p | i+1 and p | j+1, else 0

with coefficients passing through unchanged (F_p is its own p-th roots).
Rational coefficients reduce to the polynomial case by clearing the
denominator to a p-th power and using semilinearity C(u^p w) = u C(w).
Ker C on closed forms is exactly the space of exact forms, which turns
B-membership and the fixed-point test for nu = Ker(gamma - Id) into
finite computations.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith import _fp_divmod, _fp_gcd, _fp_mul, _fp_sub, _fp_trim, is_prime


def _grlex(ij):
    i, j = ij
    return (i + j, i, j)


@dataclass(frozen=True)
class BiPoly:
    """Sparse bivariate polynomial over F_p; terms sorted by graded lex."""

    p: int
    terms: tuple[tuple[tuple[int, int], int], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"coefficient modulus must be prime, got {self.p}")
        last = None
        for (i, j), c in self.terms:
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            if not 0 < c < self.p:
                raise ValueError("coefficient not reduced")
            key = _grlex((i, j))
            if last is not None and key <= last:
                raise ValueError("terms out of order")
            last = key

    @staticmethod
    def make(p: int, coeffs: dict) -> "BiPoly":
        items = [(ij, c % p) for ij, c in coeffs.items() if c % p]
        items.sort(key=lambda t: _grlex(t[0]))
        return BiPoly(p, tuple(items))

    @staticmethod
    def zero(p: int) -> "BiPoly":
        return BiPoly(p, ())

    @staticmethod
    def const(p: int, c: int) -> "BiPoly":
        return BiPoly.make(p, {(0, 0): c})

    @staticmethod
    def var_s(p: int) -> "BiPoly":
        return BiPoly.make(p, {(1, 0): 1})

    @staticmethod
    def var_t(p: int) -> "BiPoly":
        return BiPoly.make(p, {(0, 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(ij == (0, 0) for ij, _ in self.terms)

    def constant_value(self) -> int:
        if self.is_zero():
            return 0
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms[0][1]

    def total_degree(self) -> int:
        return max((i + j for (i, j), _ in self.terms), default=-1)

    def leading(self) -> tuple[tuple[int, int], int]:
        if self.is_zero():
            raise ValueError("leading term of 0")
        return self.terms[-1]

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("mixed characteristics")

    def __add__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        out = dict(self.terms)
        for ij, c in other.terms:
            out[ij] = (out.get(ij, 0) + c) % self.p
        return BiPoly.make(self.p, out)

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.p, tuple((ij, self.p - c) for ij, c in self.terms))

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        out: dict = {}
        for (i1, j1), c1 in self.terms:
            for (i2, j2), c2 in other.terms:
                ij = (i1 + i2, j1 + j2)
                out[ij] = (out.get(ij, 0) + c1 * c2) % self.p
        return BiPoly.make(self.p, out)

    def scale(self, c: int) -> "BiPoly":
        c %= self.p
        return BiPoly.make(self.p, {ij: a * c for ij, a in self.terms})

    def __pow__(self, e: int) -> "BiPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.const(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exact_div(self, d: "BiPoly") -> "BiPoly":
        """Quotient self/d when d divides exactly; ValueError otherwise.

        Greedy leading-term cancellation under grlex: for a true multiple
        the leading monomial is always divisible, so failure mid-loop is
        proof of non-divisibility.
        """
        self._check(d)
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        p = self.p
        (di, dj), dc = d.leading()
        dc_inv = pow(dc, -1, p)
        rem = self
        q: dict = {}
        while not rem.is_zero():
            (ri, rj), rc = rem.leading()
            mi, mj = ri - di, rj - dj
            if mi < 0 or mj < 0:
                raise ValueError("not an exact division")
            c = rc * dc_inv % p
            q[(mi, mj)] = c
            rem = rem - d * BiPoly.make(p, {(mi, mj): c})
        return BiPoly.make(p, q)

    def derivative_s(self) -> "BiPoly":
        return BiPoly.make(self.p, {(i - 1, j): i * c for (i, j), c in self.terms if i})

    def derivative_t(self) -> "BiPoly":
        return BiPoly.make(self.p, {(i, j - 1): j * c for (i, j), c in self.terms if j})

    def __repr__(self):
        return f"BiPoly({self.p}, {dict(self.terms)})"


# -- gcd via primitive pseudo-remainder sequences in (F_p[s])[t] ----------------


def _tmajor(f: BiPoly) -> list[list[int]]:
    """Coefficients as s-polynomials (int lists) indexed by t-degree."""
    dt = max((j for (_, j), _ in f.terms), default=-1)
    out: list[list[int]] = [[] for _ in range(dt + 1)]
    for (i, j), c in f.terms:
        col = out[j]
        while len(col) <= i:
            col.append(0)
        col[i] = c
    return [_fp_trim(col) for col in out]


def _from_tmajor(p: int, cols: list[list[int]]) -> BiPoly:
    coeffs = {}
    for j, col in enumerate(cols):
        for i, c in enumerate(col):
            if c:
                coeffs[(i, j)] = c
    return BiPoly.make(p, coeffs)


def _trim_t(cols):
    while cols and not cols[-1]:
        cols.pop()
    return cols


def _content_t(cols, p):
    g: list[int] = []
    for col in cols:
        g = _fp_gcd(g, col, p)
    return g


def _primitive_t(cols, p):
    c = _content_t(cols, p)
    if not c or c == [1]:
        return list(cols), (c or [])
    out = []
    for col in cols:
        q, r = _fp_divmod(col, c, p)
        assert not r
        out.append(q)
    return out, c


def _prem_t(A, B, p):
    """Pseudo-remainder of A by B in (F_p[s])[t]; B nonzero."""
    A = _trim_t(list(A))
    B = _trim_t(list(B))
    dB = len(B) - 1
    lB = B[-1]
    R = [list(col) for col in A]
    while _trim_t(R) and len(R) - 1 >= dB:
        dR = len(R) - 1
        lR = R[-1]
        k = dR - dB
        new = []
        for idx in range(dR):
            term = _fp_mul(lB, R[idx], p)
            if 0 <= idx - k < dB:
                term = _fp_sub(term, _fp_mul(lR, B[idx - k], p), p)
            new.append(term)
        R = _trim_t(new)
    return R


def bipoly_gcd(a: BiPoly, b: BiPoly) -> BiPoly:
    """Gcd normalized to grlex-leading coefficient 1."""
    a._check(b)
    p = a.p
    if a.is_zero():
        return _normalize_lead(b)
    if b.is_zero():
        return _normalize_lead(a)
    A, ca = _primitive_t(_tmajor(a), p)
    B, cb = _primitive_t(_tmajor(b), p)
    c = _fp_gcd(ca, cb, p)
    while _trim_t(B):
        R = _prem_t(A, B, p)
        A, B = B, _primitive_t(R, p)[0] if _trim_t(R) else []
    g = _from_tmajor(p, [_fp_mul(col, c, p) for col in A])
    return _normalize_lead(g)


def _normalize_lead(f: BiPoly) -> BiPoly:
    if f.is_zero():
        return f
    _, c = f.leading()
    return f.scale(pow(c, -1, f.p))


class MultiRatFunc:
    """Bivariate rational function over F_p in canonical form: numerator and
    denominator coprime, denominator with grlex-leading coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly):
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = BiPoly.const(num.p, 1)
        else:
            g = bipoly_gcd(num, den)
            if not (g.is_constant() and g.constant_value() == 1):
                num, den = num.exact_div(g), den.exact_div(g)
            _, lc = den.leading()
            if lc != 1:
                inv = pow(lc, -1, num.p)
                num, den = num.scale(inv), den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("MultiRatFunc is immutable")

    @staticmethod
    def from_poly(f: BiPoly) -> "MultiRatFunc":
        return MultiRatFunc(f, BiPoly.const(f.p, 1))

    @staticmethod
    def const(p: int, c: int) -> "MultiRatFunc":
        return MultiRatFunc.from_poly(BiPoly.const(p, c))

    @property
    def p(self) -> int:
        return self.num.p

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def __add__(self, other):
        return MultiRatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return MultiRatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return MultiRatFunc(-self.num, self.den)

    def __mul__(self, other):
        return MultiRatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return MultiRatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, e: int):
        if e >= 0:
            return MultiRatFunc(self.num**e, self.den**e)
        return MultiRatFunc(self.den ** (-e), self.num ** (-e))

    def derivative_s(self) -> "MultiRatFunc":
        return MultiRatFunc(
            self.num.derivative_s() * self.den - self.num * self.den.derivative_s(),
            self.den * self.den,
        )

    def derivative_t(self) -> "MultiRatFunc":
        return MultiRatFunc(
            self.num.derivative_t() * self.den - self.num * self.den.derivative_t(),
            self.den * self.den,
        )

    def __eq__(self, other):
        return (
            isinstance(other, MultiRatFunc) and self.num == other.num and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"MultiRatFunc({self.num!r}, {self.den!r})"


# -- the de Rham chain in two variables ------------------------------------------


@dataclass(frozen=True)
class Form0:
    f: MultiRatFunc

    def is_zero(self) -> bool:
        return self.f.is_zero()


@dataclass(frozen=True)
class Form1:
    """f ds + g dt."""

    ds: MultiRatFunc
    dt: MultiRatFunc

    def __add__(self, other: "Form1") -> "Form1":
        return Form1(self.ds + other.ds, self.dt + other.dt)

    def __sub__(self, other: "Form1") -> "Form1":
        return Form1(self.ds - other.ds, self.dt - other.dt)

    def __neg__(self) -> "Form1":
        return Form1(-self.ds, -self.dt)

    def is_zero(self) -> bool:
        return self.ds.is_zero() and self.dt.is_zero()


@dataclass(frozen=True)
class Form2:
    """h ds^dt."""

    h: MultiRatFunc

    def __add__(self, other: "Form2") -> "Form2":
        return Form2(self.h + other.h)

    def __sub__(self, other: "Form2") -> "Form2":
        return Form2(self.h - other.h)

    def __neg__(self) -> "Form2":
        return Form2(-self.h)

    def is_zero(self) -> bool:
        return self.h.is_zero()


def d0(x: Form0) -> Form1:
    return Form1(x.f.derivative_s(), x.f.derivative_t())


def d1(w: Form1) -> Form2:
    return Form2(w.dt.derivative_s() - w.ds.derivative_t())


def dlog1(f: MultiRatFunc) -> Form1:
    """d(f)/f."""
    if f.is_zero():
        raise ValueError("dlog of zero")
    return Form1(f.derivative_s() / f, f.derivative_t() / f)


def dlog2(f: MultiRatFunc, g: MultiRatFunc) -> Form2:
    """dlog(f) ^ dlog(g)."""
    if f.is_zero() or g.is_zero():
        raise ValueError("dlog of zero")
    a = dlog1(f)
    b = dlog1(g)
    return Form2(a.ds * b.dt - a.dt * b.ds)


def _cartier_terms(P: BiPoly, shift_s: int, shift_t: int) -> BiPoly:
    """Keep monomials with p | i+shift_s and p | j+shift_t, dividing the
    shifted exponents by p.  Coefficients are their own p-th roots."""
    p = P.p
    out = {}
    for (i, j), c in P.terms:
        if (i + shift_s) % p == 0 and (j + shift_t) % p == 0:
            out[((i + shift_s) // p - (1 if shift_s else 0), (j + shift_t) // p - (1 if shift_t else 0))] = c
    return BiPoly.make(p, out)


def cartier2(w: Form2) -> Form2:
    """The Cartier operator on 2-forms (all closed in two variables)."""
    h = w.h
    if h.is_zero():
        return w
    p = h.p
    P = h.num * h.den ** (p - 1)  # h = P / den^p
    C = _cartier_terms(P, 1, 1)
    return Form2(MultiRatFunc(C, h.den))


def cartier1(w: Form1) -> Form1:
    """The Cartier operator on closed 1-forms; raises off Z^1."""
    if not d1(w).is_zero():
        raise ValueError("1-form is not closed")
    f, g = w.ds, w.dt
    p = f.p
    gd = bipoly_gcd(f.den, g.den)
    D = f.den * g.den.exact_div(gd)
    P = f.num * (D**p).exact_div(f.den)
    Q = g.num * (D**p).exact_div(g.den)
    Cs = _cartier_terms(P, 1, 0)
    Ct = _cartier_terms(Q, 0, 1)
    return Form1(MultiRatFunc(Cs, D), MultiRatFunc(Ct, D))


def in_B2(w: Form2) -> bool:
    """Exactness of a 2-form: the kernel of C is the image of d1."""
    return cartier2(w).is_zero()


def in_B1(w: Form1) -> bool:
    """Exactness of a closed 1-form; raises on non-closed input."""
    return cartier1(w).is_zero()


def nu_member(w) -> bool:
    """Membership in nu(n) = Ker(gamma - Id): Cartier fixed points.

    Degree 0 is the prime field (x^p = x); degrees 1 and 2 use C(w) = w,
    which is the fixed-point condition transported through C.
    """
    if isinstance(w, Form0):
        return w.f.is_constant()
    if isinstance(w, Form1):
        return cartier1(w) == w
    if isinstance(w, Form2):
        return cartier2(w) == w
    raise TypeError(f"not a differential form: {w!r}")
