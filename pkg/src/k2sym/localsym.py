"""Local symbols on Q: the sign symbol at the real place, the dyadic symbol,
and tame symbols at odd primes.

Each place v of Q carries a symbol s_v on pairs of nonzero rationals with
values in the roots of unity mu_v of the completion: {+1,-1} at the real
place and at 2, and F_p^* at an odd prime p (mu of Q_p identified with the
residue field units by reduction mod p).  All three are bilinear and satisfy
the Steinberg relation s(x, 1-x) = 1, which makes them symbols on K_2.

Conventions fixed here and relied on everywhere else:
  * tame(x, y, p) is the residue of (-1)^{v(x)v(y)} x^{v(y)} y^{-v(x)} mod p;
  * the dyadic symbol on odd units is (-1)^{eps(x)eps(y)} with
    eps(u) = (u-1)/2 mod 2, extended to all of Q_2^* by bilinearity through
    the decomposition x = 2^a u (the 3x3 generator table below);
  * h_p(x, y) = tame(x, y, p)^{(p-1)/2} is the +-1 squashing of the tame
    symbol used in product formulas.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import factorize, is_prime, legendre, valuation


@dataclass(frozen=True)
class PlaceQ:
    """A place of Q: the real place or a prime."""

    kind: str  # "real" or "prime"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "real":
            if self.p is not None:
                raise ValueError("real place has no prime")
        elif self.kind == "prime":
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"not a prime: {self.p}")
        else:
            raise ValueError(f"unknown place kind: {self.kind}")

    @staticmethod
    def real() -> "PlaceQ":
        return REAL

    @staticmethod
    def prime(p: int) -> "PlaceQ":
        return PlaceQ("prime", p)

    @property
    def mu_order(self) -> int:
        """Order of the local roots of unity: 2 at the real place and at 2,
        p-1 at an odd prime."""
        if self.kind == "real" or self.p == 2:
            return 2
        return self.p - 1

    def is_real(self) -> bool:
        return self.kind == "real"

    def __repr__(self):
        return "PlaceQ(real)" if self.kind == "real" else f"PlaceQ({self.p})"

    def sort_key(self):
        # real place first, then primes in order
        return (0, 0) if self.kind == "real" else (1, self.p)


REAL = PlaceQ("real")


@dataclass(frozen=True)
class MuValue:
    """A local symbol value: +-1 at the real place and at 2, a unit in
    [1, p-1] at an odd prime p."""

    place: PlaceQ
    value: int

    def __post_init__(self):
        if self.place.kind == "real" or self.place.p == 2:
            if self.value not in (1, -1):
                raise ValueError(f"value must be +-1 at {self.place}")
        else:
            if not 1 <= self.value < self.place.p:
                raise ValueError(f"value out of range at {self.place}: {self.value}")

    def is_identity(self) -> bool:
        return self.value == 1


def _as_nonzero_fraction(x) -> Fraction:
    x = Fraction(x)
    if x == 0:
        raise ValueError("symbols are defined on nonzero arguments only")
    return x


def s_infinity(x, y) -> int:
    """Symbol at the real place: -1 iff both arguments are negative."""
    x, y = _as_nonzero_fraction(x), _as_nonzero_fraction(y)
    return -1 if (x < 0 and y < 0) else 1


def _split_dyadic(x: Fraction) -> tuple[int, Fraction]:
    """x = 2^a * u with u an odd unit (odd numerator and denominator)."""
    a = valuation(x, 2)
    return a, x / Fraction(2) ** a


def _unit_mod8(u: Fraction) -> int:
    """Residue mod 8 of an odd rational unit.  Uses d^-1 = d mod 8."""
    n = u.numerator % 8
    d = u.denominator % 8
    return n * d % 8


def _eps(u: Fraction) -> int:
    """(u-1)/2 mod 2 for an odd unit: 0 if u = 1 mod 4, 1 if u = 3 mod 4."""
    return (_unit_mod8(u) % 4 - 1) // 2


def _omega(u: Fraction) -> int:
    """(u^2-1)/8 mod 2 for an odd unit: 0 if u = +-1 mod 8, else 1."""
    return 0 if _unit_mod8(u) in (1, 7) else 1


def s_2(x, y) -> int:
    """The dyadic symbol on Q_2^* x Q_2^*, valued in {+1, -1}.

    On odd units: s_2(u, w) = (-1)^{eps(u) eps(w)}.
    Mixed: s_2(u, 2) = (-1)^{omega(u)}.
    And s_2(2, 2) = s_2(-1, 2) = +1, forced by s(t, t) = s(-1, t).
    General arguments decompose as x = 2^a u and expand bilinearly.
    """
    x, y = _as_nonzero_fraction(x), _as_nonzero_fraction(y)
    a, u = _split_dyadic(x)
    b, w = _split_dyadic(y)
    exponent = _eps(u) * _eps(w) + _omega(u) * b + _omega(w) * a
    # the s_2(2,2)^{ab} factor is +1, so it contributes nothing
    return -1 if exponent % 2 else 1


def tame(x, y, p: int) -> int:
    """Tame symbol at an odd prime p, valued in the residue units [1, p-1].

    tame(x, y, p) is the reduction mod p of the p-adic unit
    (-1)^{v(x)v(y)} x^{v(y)} y^{-v(x)}.
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"tame symbol needs an odd prime, got {p}")
    x, y = _as_nonzero_fraction(x), _as_nonzero_fraction(y)
    a = valuation(x, p)
    b = valuation(y, p)
    u = x / Fraction(p) ** a   # p-adic unit part of x
    w = y / Fraction(p) ** b
    sign = -1 if (a * b) % 2 else 1
    val = Fraction(sign) * u**b * w**(-a)  # a p-adic unit
    return val.numerator * pow(val.denominator, -1, p) % p


def h_p(x, y, p: int) -> int:
    """The order-2 quotient of the tame symbol: tame(x,y,p)^((p-1)/2)."""
    t = tame(x, y, p)
    r = pow(t, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def hilbert(x, y, place: PlaceQ) -> int:
    """The +-1 Hilbert symbol at any place: s_infinity, s_2, or h_p."""
    if place.is_real():
        return s_infinity(x, y)
    if place.p == 2:
        return s_2(x, y)
    return h_p(x, y, place.p)


def norm_residue(x, y, place: PlaceQ) -> MuValue:
    """The full local symbol value in mu_v: +-1 at real and 2, the tame
    value in F_p^* at odd p."""
    if place.is_real():
        return MuValue(place, s_infinity(x, y))
    if place.p == 2:
        return MuValue(place, s_2(x, y))
    return MuValue(place, tame(x, y, place.p))


def conic_local(x, y, place: PlaceQ) -> bool:
    """Local solvability of x R^2 + y S^2 = 1 at the given place.

    The conic has a point over the completion iff the Hilbert symbol is +1.
    """
    return hilbert(x, y, place) == 1


def odd_support(*values) -> tuple[int, ...]:
    """Odd primes dividing the numerator or denominator of any argument."""
    ps: set[int] = set()
    for v in values:
        _, fac = factorize(Fraction(v))
        ps.update(p for p in fac.primes() if p != 2)
    return tuple(sorted(ps))


def support_places(x, y) -> tuple[PlaceQ, ...]:
    """Real, 2, and every odd prime in the support of x or y.

    Away from these places both arguments are units and the tame symbol is
    trivially 1, so any product formula over all places reduces to this set.
    """
    return (REAL, PlaceQ.prime(2)) + tuple(PlaceQ.prime(p) for p in odd_support(x, y))


def milnor_sign_class(xs) -> int:
    """Degree-n component of the mod-2 symbol on the reals.

    The graded square-class algebra of R is F_2[T]; the class of the symbol
    {x_1, ..., x_n} is T^n iff every x_i is negative, else 0.  Returns 1 or
    0 for the T^n coefficient.  The empty product gives 1 (the unit class).
    """
    for x in xs:
        x = _as_nonzero_fraction(x)
        if x > 0:
            return 0
    return 1
