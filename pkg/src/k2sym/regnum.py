"""Numerics for the dilogarithm regulator pairing on C(z).

The single-valued dilogarithm D(z) = Im Li2(z) + arg(1-z) log|z| is computed
by reducing into |z| <= 1, Re z <= 1/2 with the inversion and reflection
antisymmetries, then summing either the defining series (small |z|) or the
Bernoulli series in y = -log(1-z).

The pairing side: for nonzero f, g in C(z) the real 1-form

    eta(f, g) = log|f| d(arg g) - log|g| d(arg f)

is closed away from the zeros and poles of f and g, and its loop integrals
recover logs of tame symbol absolute values.  Coefficients are exact
Gaussian rationals so the tame side of the comparison carries no float
error at all.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy

from .arith import Poly, RatFunc, bernoulli

CONVERGENCE_TARGET = 1e-9
MAX_SAMPLES = 2**20


@dataclass(frozen=True)
class GaussRat:
    """Exact Gaussian rational re + im*i."""

    re: Fraction
    im: Fraction

    @staticmethod
    def make(re, im=0) -> "GaussRat":
        return GaussRat(Fraction(re), Fraction(im))

    def __add__(self, o):
        return GaussRat(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return GaussRat(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, o):
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRat":
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("inverse of 0")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * o.inverse()

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"


class GaussField:
    """Field-protocol wrapper so Poly and RatFunc run over Q(i)."""

    char = 0
    zero = GaussRat.make(0)
    one = GaussRat.make(1)
    i = GaussRat.make(0, 1)

    def from_int(self, n):
        return GaussRat.make(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def div(self, a, b):
        return a * b.inverse()

    def pow(self, a, e):
        if e < 0:
            return self.pow(a.inverse(), -e)
        out = self.one
        base = a
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __repr__(self):
        return "Q(i)"

    def __eq__(self, other):
        return isinstance(other, GaussField)

    def __hash__(self):
        return hash("GaussField")


CX = GaussField()


def gauss(re, im=0) -> GaussRat:
    return GaussRat.make(re, im)


def poly_z(coeffs) -> Poly:
    """Polynomial in z from ints, Fractions, or GaussRat, little-endian."""
    out = []
    for c in coeffs:
        out.append(c if isinstance(c, GaussRat) else GaussRat.make(c))
    return Poly(CX, out)


def ratfunc_z(num, den=(1,)) -> RatFunc:
    return RatFunc(poly_z(num), poly_z(den))


# -- the single-valued dilogarithm ------------------------------------------------


def _li2_series(z: complex) -> complex:
    # defining series, fast for |z| <= 1/2
    term = z
    acc = 0j
    k = 1
    while abs(term) > 1e-19 and k < 200:
        acc += term / (k * k)
        k += 1
        term *= z
    return acc


_BERN_COEFFS: list[float] = []


def _bern_coeffs() -> list[float]:
    if not _BERN_COEFFS:
        fact = 1
        for n in range(40):
            fact *= n + 1
            _BERN_COEFFS.append(float(Fraction(bernoulli(n), fact)))
    return _BERN_COEFFS


def _li2(z: complex) -> complex:
    """Dilogarithm on |z| <= 1, Re z <= 1/2."""
    if abs(z) <= 0.5:
        return _li2_series(z)
    y = -cmath.log(1 - z)
    acc = 0j
    yp = y
    for c in _bern_coeffs():
        acc += c * yp
        yp *= y
    return acc


def bloch_wigner(z) -> float:
    """D(z) = Im Li2(z) + arg(1-z) log|z|; identically 0 on the real line."""
    if isinstance(z, GaussRat):
        z = z.to_complex()
    z = complex(z)
    if z.imag == 0.0:
        return 0.0
    sign = 1.0
    if abs(z) > 1.0:
        z = 1 / z
        sign = -sign
    if z.real > 0.5:
        z = 1 - z
        sign = -sign
    val = _li2(z).imag + cmath.phase(1 - z) * math.log(abs(z))
    return sign * val


# -- loops and the eta pairing -----------------------------------------------------


@dataclass(frozen=True)
class Loop:
    """Circle center + radius e^(i orientation theta), sampled dyadically."""

    center: complex
    radius: float
    orientation: int = 1
    samples: int = 64

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        s = self.samples
        if s < 4 or s & (s - 1):
            raise ValueError("samples must be a power of two, at least 4")

    def point(self, theta: float) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.orientation * theta)

    def tangent(self, theta: float) -> complex:
        return self.radius * self.orientation * 1j * cmath.exp(1j * self.orientation * theta)


def _horner(p: Poly, zc: complex) -> complex:
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * zc + c.to_complex()
    return acc


def _log_abs_and_dlog(f: RatFunc, zc: complex) -> tuple[float, complex]:
    """(log|f(z)|, f'(z)/f(z)) via numerator and denominator separately."""
    n = _horner(f.num, zc)
    d = _horner(f.den, zc)
    if n == 0 or d == 0:
        raise ValueError("evaluation at a zero or pole")
    dlog = _horner(f.num.derivative(), zc) / n - _horner(f.den.derivative(), zc) / d
    return math.log(abs(n)) - math.log(abs(d)), dlog


def eta_value(f: RatFunc, g: RatFunc, zc: complex, dz: complex) -> float:
    """The 1-form eta(f, g) contracted with the tangent vector dz at zc."""
    log_f, dlog_f = _log_abs_and_dlog(f, zc)
    log_g, dlog_g = _log_abs_and_dlog(g, zc)
    return log_f * (dlog_g * dz).imag - log_g * (dlog_f * dz).imag


def eta_pullback(f: RatFunc, g: RatFunc, loop: Loop, theta: float) -> float:
    return eta_value(f, g, loop.point(theta), loop.tangent(theta))


@dataclass(frozen=True)
class LoopIntegral:
    value: float
    tolerance: float
    samples: int


def _trapezoid(f, g, loop, n):
    # periodic trapezoid rule: the mean of equally spaced samples is
    # (1/2pi) times the integral, with spectral accuracy
    step = 2 * math.pi / n
    return math.fsum(eta_pullback(f, g, loop, k * step) for k in range(n)) / n


def loop_integral(f: RatFunc, g: RatFunc, loop: Loop) -> LoopIntegral:
    """(1/2pi) times the integral of eta(f, g) around the loop, refined by
    doubling until two dyadic levels agree to 1e-9."""
    if f.is_zero() or g.is_zero():
        raise ValueError("eta needs nonzero functions")
    n = loop.samples
    prev = _trapezoid(f, g, loop, n)
    while n < MAX_SAMPLES:
        n *= 2
        cur = _trapezoid(f, g, loop, n)
        if abs(cur - prev) < CONVERGENCE_TARGET:
            return LoopIntegral(cur, abs(cur - prev), n)
        prev = cur
    raise RuntimeError(f"no convergence after {MAX_SAMPLES} samples")


# -- comparison against the exact tame symbol --------------------------------------


def _order_and_unit(p: Poly, a: GaussRat) -> tuple[int, Poly]:
    """Vanishing order of p at a, plus the cofactor with the root removed."""
    lin = Poly(CX, [-a, CX.one])
    order = 0
    while not p.is_zero() and p.evaluate(a).is_zero():
        q, r = p.divmod(lin)
        assert r.is_zero()
        p = q
        order += 1
    return order, p


def order_at(f: RatFunc, a: GaussRat) -> int:
    kn, _ = _order_and_unit(f.num, a)
    kd, _ = _order_and_unit(f.den, a)
    return kn - kd


def tame_symbol_cx(f: RatFunc, g: RatFunc, a: GaussRat) -> GaussRat:
    """Exact tame symbol (-1)^(mn) f^n g^(-m) evaluated at a."""
    if f.is_zero() or g.is_zero():
        raise ValueError("tame symbol needs nonzero functions")
    fn, fu = _order_and_unit(f.num, a)
    fd, fv = _order_and_unit(f.den, a)
    gn, gu = _order_and_unit(g.num, a)
    gd, gv = _order_and_unit(g.den, a)
    m, n = fn - fd, gn - gd
    uf = fu.evaluate(a) / fv.evaluate(a)
    ug = gu.evaluate(a) / gv.evaluate(a)
    val = CX.pow(uf, n) * CX.pow(ug, -m)
    if (m * n) % 2:
        val = -val
    return val


def _singularities(f: RatFunc, g: RatFunc) -> list[complex]:
    roots: list[complex] = []
    for p in (f.num, f.den, g.num, g.den):
        if not p.is_constant():
            cs = [c.to_complex() for c in reversed(p.coeffs)]
            roots.extend(numpy.roots(cs).tolist())
    return roots


@dataclass(frozen=True)
class ResidueCheck:
    point: GaussRat
    order_f: int
    order_g: int
    tame_value: GaussRat
    expected: float
    integral: float
    difference: float
    holds: bool


def residue_check(f: RatFunc, g: RatFunc, point: GaussRat, tolerance: float = 1e-6) -> ResidueCheck:
    """Compare the loop integral of eta around the point with log of the
    exact tame symbol's absolute value."""
    tame = tame_symbol_cx(f, g, point)
    if tame.is_zero():
        raise ValueError("tame symbol vanished; functions not coprime enough")
    n2 = tame.norm2()
    expected = 0.5 * (math.log(n2.numerator) - math.log(n2.denominator))
    pc = point.to_complex()
    dists = [abs(r - pc) for r in _singularities(f, g) if abs(r - pc) > 1e-9]
    radius = min(dists) / 2 if dists else 1.0
    li = loop_integral(f, g, Loop(pc, radius))
    diff = abs(li.value - expected)
    return ResidueCheck(
        point,
        order_at(f, point),
        order_at(g, point),
        tame,
        expected,
        li.value,
        diff,
        diff <= tolerance,
    )
