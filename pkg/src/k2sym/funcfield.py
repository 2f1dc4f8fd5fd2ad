"""K_2 of a rational function field F_q(T).

Places are the monic irreducible polynomials plus a place at infinity with
uniformizer 1/T; the residue field at a finite place pi is F_q[T]/(pi), and
F_q itself at infinity.  The tame symbol at each place takes values in the
residue field units, and K_2(F_q(T)) decomposes as the direct sum of those
unit groups over the finite places -- exactly, with no extra summand,
because K_2 of a finite field vanishes (the Steinberg-witness argument
implemented at the bottom of this module).

Weil reciprocity ties the places together: the product over ALL places,
infinity included, of the norms down to F_q^* of the tame values is 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Final

from .arith import Fq, Poly, RatFunc, field, generator, is_irreducible, poly_factor

# Returned by steinberg_witness over fields of characteristic 2, where the
# relation {zeta, zeta} = {zeta, -zeta} = 0 is immediate and no quadratic
# witness is needed.
CHAR2: Final = "CHAR2"


# ---------------------------------------------------------------------------
# Places.


@dataclass(frozen=True)
class PlaceFq:
    """A place of F_q(T): a monic irreducible polynomial, or infinity."""

    pi: Poly | None  # None encodes the place at infinity

    def __post_init__(self):
        if self.pi is not None:
            if not self.pi.is_monic() or not is_irreducible(self.pi):
                raise ValueError(f"not a monic irreducible: {self.pi}")

    @staticmethod
    def finite(pi: Poly) -> "PlaceFq":
        return PlaceFq(pi)

    @staticmethod
    def infinity() -> "PlaceFq":
        return PlaceFq(None)

    @property
    def is_infinite(self) -> bool:
        return self.pi is None

    @property
    def degree(self) -> int:
        """Degree of the residue field over F_q (infinity has degree 1)."""
        return 1 if self.pi is None else self.pi.degree

    def sort_key(self):
        # finite places by (degree, encoding); infinity last
        return (1, ()) if self.pi is None else (0, self.pi.sort_key())


def as_ratfunc(f) -> RatFunc:
    if isinstance(f, RatFunc):
        return f
    if isinstance(f, Poly):
        return RatFunc.from_poly(f)
    raise TypeError(f"expected Poly or RatFunc, got {type(f)}")


def _strip(f: Poly, pi: Poly) -> tuple[Poly, int]:
    """f = pi^m * g with pi not dividing g; returns (g, m)."""
    m = 0
    while True:
        q, r = f.divmod(pi)
        if not r.is_zero():
            return f, m
        f = q
        m += 1


def ff_valuation(f, place: PlaceFq) -> int:
    """Order of vanishing of a nonzero rational function at the place."""
    f = as_ratfunc(f)
    if f.is_zero():
        raise ValueError("valuation of 0")
    if place.is_infinite:
        return f.den.degree - f.num.degree
    _, a = _strip(f.num, place.pi)
    _, b = _strip(f.den, place.pi)
    return a - b


def _poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b), g monic."""
    F = a.field
    one, zero = Poly.const(F, F.one), Poly(F, [])
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = F.inv(r0.lc())
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def _residue_inv(a: Poly, pi: Poly) -> Poly:
    """Inverse of a mod pi (pi irreducible, a not divisible by pi)."""
    g, s, _ = _poly_xgcd(a % pi, pi)
    if g.degree != 0:
        raise ZeroDivisionError("element not invertible mod pi")
    # g is the constant 1 after normalization
    return s % pi


def _residue_pow(a: Poly, e: int, pi: Poly) -> Poly:
    if e < 0:
        return _residue_pow(_residue_inv(a, pi), -e, pi)
    return (a % pi).pow_mod(e, pi)


def _to_infinity_chart(f: RatFunc) -> RatFunc:
    """Rewrite f(T) as a rational function of U = 1/T.

    f = N/D becomes U^(deg D - deg N) * rev(N)/rev(D) where rev reverses
    coefficients; rev(N)(0) is the leading coefficient of N, so the result
    is already unit-times-uniformizer-power at U = 0.
    """
    F = f.field
    n, d = f.num.degree, f.den.degree
    u = Poly.x(F)
    num = f.num.shift_compose_reverse()
    den = f.den.shift_compose_reverse()
    if d >= n:
        num = num * u ** (d - n)
    else:
        den = den * u ** (n - d)
    return RatFunc(num, den)


def tame_ff(f, g, place: PlaceFq) -> Poly:
    """Tame symbol at a place of F_q(T), valued in the residue field.

    At a finite place pi: the class of (-1)^{v(f)v(g)} f^{v(g)} g^{-v(f)}
    in F_q[T]/(pi), returned as the reduced representative.  At infinity the
    same formula in the chart U = 1/T; the result is a constant polynomial
    whose value lies in F_q.
    """
    f, g = as_ratfunc(f), as_ratfunc(g)
    if f.is_zero() or g.is_zero():
        raise ValueError("tame symbol needs nonzero arguments")
    F = f.field
    if place.is_infinite:
        t = Poly.x(F)
        inf_as_finite = PlaceFq.finite(t)
        return tame_ff(_to_infinity_chart(f), _to_infinity_chart(g), inf_as_finite)
    pi = place.pi
    fn, a_num = _strip(f.num, pi)
    fd, a_den = _strip(f.den, pi)
    gn, b_num = _strip(g.num, pi)
    gd, b_den = _strip(g.den, pi)
    a = a_num - a_den
    b = b_num - b_den
    # residues of the unit parts
    u = (fn % pi) * _residue_inv(fd, pi) % pi
    w = (gn % pi) * _residue_inv(gd, pi) % pi
    sign = F.one if (a * b) % 2 == 0 else F.neg(F.one)
    val = Poly.const(F, sign)
    val = val * _residue_pow(u, b, pi) % pi
    val = val * _residue_pow(w, -a, pi) % pi
    return val


def residue_norm(value: Poly, place: PlaceFq) -> int:
    """Norm of a residue-field unit down to F_q^*, by the exponent formula
    x -> x^((q^d - 1)/(q - 1)).  Returns the F_q encoding."""
    F = value.field
    if place.is_infinite or place.degree == 1:
        v = value % place.pi if place.pi is not None else value
        if not v.is_constant():
            raise ValueError("degree-1 residue value must be constant")
        return v.constant_value()
    d = place.degree
    e = (F.q**d - 1) // (F.q - 1)
    nm = _residue_pow(value, e, place.pi)
    if not nm.is_constant():
        raise ArithmeticError("norm did not land in the base field")
    return nm.constant_value()


def leading_coeff(f) -> int:
    """The leading-coefficient retraction c(f) = lc(num)/lc(den) in F_q^*.

    c is multiplicative, restricts to the identity on constants, and sends
    T to 1; it splits F_q^* off of F_q(T)^*.
    """
    f = as_ratfunc(f)
    if f.is_zero():
        raise ValueError("leading coefficient of 0")
    F = f.field
    return F.div(f.num.lc(), f.den.lc())


# ---------------------------------------------------------------------------
# Symbol expressions and classes.


@dataclass(frozen=True)
class FFSymbolExpr:
    """Formal sum of symbols {f, g} on F_q(T)^*, with multiplicities."""

    terms: tuple[tuple[RatFunc, RatFunc, int], ...]

    def __post_init__(self):
        for f, g, _ in self.terms:
            if f.is_zero() or g.is_zero():
                raise ValueError("symbol entries must be nonzero")

    @staticmethod
    def of(*pairs, multiplicities=None) -> "FFSymbolExpr":
        ms = multiplicities or [1] * len(pairs)
        merged: dict[tuple[RatFunc, RatFunc], int] = {}
        order = []
        for (f, g), m in zip(pairs, ms):
            key = (as_ratfunc(f), as_ratfunc(g))
            if key not in merged:
                merged[key] = 0
                order.append(key)
            merged[key] += m
        return FFSymbolExpr(tuple((f, g, merged[(f, g)]) for f, g in order if merged[(f, g)]))


def ff_symbol(f, g) -> FFSymbolExpr:
    return FFSymbolExpr.of((f, g))


@dataclass(frozen=True)
class K2FFClass:
    """Element of the direct sum of residue-field unit groups over the
    finite places: finitely many (pi, value) with value a nontrivial unit
    mod pi."""

    base: Fq
    entries: tuple[tuple[Poly, Poly], ...]

    def __post_init__(self):
        seen = set()
        for pi, v in self.entries:
            if pi in seen:
                raise ValueError("duplicate place")
            seen.add(pi)
            if v.is_zero() or (v % pi) != v:
                raise ValueError(f"value not reduced mod {pi}")
            if v == Poly.const(self.base, self.base.one):
                raise ValueError("identity values must be dropped")

    @staticmethod
    def make(base: Fq, entries: dict[Poly, Poly]) -> "K2FFClass":
        one = Poly.const(base, base.one)
        items = [(pi, v % pi) for pi, v in entries.items() if (v % pi) != one]
        items.sort(key=lambda pv: pv[0].sort_key())
        return K2FFClass(base, tuple(items))

    def value_at(self, pi: Poly) -> Poly:
        for q, v in self.entries:
            if q == pi:
                return v
        return Poly.const(self.base, self.base.one)

    def support(self) -> tuple[Poly, ...]:
        return tuple(pi for pi, _ in self.entries)

    def __add__(self, other: "K2FFClass") -> "K2FFClass":
        if self.base != other.base:
            raise ValueError("mixed base fields")
        vals = dict(self.entries)
        for pi, v in other.entries:
            vals[pi] = vals.get(pi, Poly.const(self.base, self.base.one)) * v % pi
        return K2FFClass.make(self.base, vals)

    def __neg__(self) -> "K2FFClass":
        return K2FFClass.make(self.base, {pi: _residue_inv(v, pi) for pi, v in self.entries})

    def __sub__(self, other: "K2FFClass") -> "K2FFClass":
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.entries


def _support_places(e: FFSymbolExpr) -> list[Poly]:
    """Monic irreducibles dividing any numerator or denominator in e."""
    pis: set[Poly] = set()
    for f, g, _ in e.terms:
        for poly in (f.num, f.den, g.num, g.den):
            if poly.is_constant():
                continue
            _, fac = poly_factor(poly)
            pis.update(pi for pi, _ in fac)
    return sorted(pis, key=lambda pi: pi.sort_key())


def decompose(e: FFSymbolExpr, base: Fq | None = None) -> K2FFClass:
    """Tame values of a symbol expression at every finite place.

    This realizes the isomorphism of K_2(F_q(T)) with the direct sum of the
    residue unit groups: the kernel of all tame symbols is K_2(F_q) = 0.
    """
    if not e.terms:
        if base is None:
            raise ValueError("empty expression needs an explicit base field")
        return K2FFClass.make(base, {})
    base = e.terms[0][0].field
    vals: dict[Poly, Poly] = {}
    one = Poly.const(base, base.one)
    for pi in _support_places(e):
        acc = one
        group_order = base.q**pi.degree - 1
        for f, g, m in e.terms:
            t = tame_ff(f, g, PlaceFq.finite(pi))
            acc = acc * _residue_pow(t, m % group_order, pi) % pi
        vals[pi] = acc
    return K2FFClass.make(base, vals)


@dataclass(frozen=True)
class WeilFactor:
    place: PlaceFq
    value: Poly   # tame value in the residue field
    norm: int     # its norm in F_q^*


@dataclass(frozen=True)
class WeilResult:
    factors: tuple[WeilFactor, ...]
    product: int  # in F_q^*

    @property
    def holds(self) -> bool:
        return self.product == 1


def weil_check(f, g) -> WeilResult:
    """Weil reciprocity: prod over all places of Norm(tame value) = 1.

    Every place outside the support of f and g contributes 1 and is skipped;
    infinity is always listed.
    """
    f, g = as_ratfunc(f), as_ratfunc(g)
    base = f.field
    e = ff_symbol(f, g)
    factors = []
    prod = base.one
    for pi in _support_places(e):
        place = PlaceFq.finite(pi)
        v = tame_ff(f, g, place)
        nm = residue_norm(v, place)
        factors.append(WeilFactor(place, v, nm))
        prod = base.mul(prod, nm)
    inf = PlaceFq.infinity()
    v = tame_ff(f, g, inf)
    nm = v.constant_value() if not v.is_zero() else base.zero
    factors.append(WeilFactor(inf, v, nm))
    prod = base.mul(prod, nm)
    return WeilResult(tuple(factors), prod)


def lift_ff(base: Fq, target: K2FFClass) -> FFSymbolExpr:
    """A symbol expression whose decomposition is the given class.

    Descent on a place of maximal degree: if the value there is a (a reduced
    polynomial of degree < deg pi), the symbol {a, pi} has tame value a at
    pi and finite support otherwise only at divisors of a, all of strictly
    smaller degree.  Subtract and repeat; the multiset of support degrees
    strictly decreases, so this terminates.
    """
    if base != target.base:
        raise ValueError("base field mismatch")
    pairs = []
    remaining = target
    while not remaining.is_zero():
        pi, a = max(remaining.entries, key=lambda pv: pv[0].sort_key())
        rep = RatFunc.from_poly(a)
        pairs.append((rep, RatFunc.from_poly(pi)))
        remaining = remaining - decompose(ff_symbol(rep, pi))
    return FFSymbolExpr.of(*pairs) if pairs else FFSymbolExpr(())


# ---------------------------------------------------------------------------
# K_2 of the finite field itself is trivial: witnesses and reduction.


def steinberg_witness(q: int, zeta: int | None = None):
    """For odd q: the first pair (x, y) of units with zeta x^2 + zeta y^2 = 1.

    Such a pair exists by counting: zeta*squares and 1 - zeta*squares are
    sets of size (q+1)/2 each, so they intersect; x = 0 or y = 0 would make
    zeta a square, which a generator is not.  For even q returns the CHAR2
    marker: there -zeta = zeta, so {zeta, zeta} = {zeta, -zeta} = 0 with no
    witness needed.
    """
    F = field(q)
    if F.q % 2 == 0:
        return CHAR2
    if zeta is None:
        zeta = generator(F)
    one = F.one
    for x in F.units():
        zx2 = F.mul(zeta, F.mul(x, x))
        for y in F.units():
            if F.add(zx2, F.mul(zeta, F.mul(y, y))) == one:
                return (x, y)
    raise AssertionError("no witness found; counting bound violated")


@dataclass(frozen=True)
class CountingBound:
    """Cardinalities behind the witness existence argument."""

    q: int
    zeta_squares: int       # |{zeta x^2 : x in F}|
    one_minus: int          # |{1 - zeta y^2 : y in F}|
    total: int
    exceeds_field: bool     # total > q forces an intersection


def counting_bound(q: int, zeta: int | None = None) -> CountingBound:
    F = field(q)
    if zeta is None:
        zeta = generator(F)
    s1 = {F.mul(zeta, F.mul(x, x)) for x in F.elements()}
    s2 = {F.sub(F.one, F.mul(zeta, F.mul(y, y))) for y in F.elements()}
    return CountingBound(q, len(s1), len(s2), len(s1) + len(s2), len(s1) + len(s2) > q)


@dataclass(frozen=True)
class ReductionTrace:
    """Proof trace that a symbol {zeta^m, zeta^n} vanishes in K_2(F_q)."""

    q: int
    m: int
    n: int
    steps: tuple[str, ...]
    witness: object  # (x, y) or CHAR2
    is_zero: bool


def k2_fq_reduce(m: int, n: int, q: int) -> ReductionTrace:
    """Reduce {zeta^m, zeta^n} to 0 in K_2(F_q), recording each step.

    Bilinearity gives {zeta^m, zeta^n} = mn*c with c = {zeta, zeta}; c has
    order dividing 2 since c = {-1, zeta}; and for odd q a Steinberg witness
    zeta x^2 + zeta y^2 = 1 expands to 0 = c + 2w, where w is again a
    multiple of the generator c, so c = 0.  In characteristic 2 already
    -zeta = zeta makes c = {zeta, -zeta} = 0.
    """
    F = field(q)
    steps = [f"bilinearity: {{zeta^{m}, zeta^{n}}} = {m * n} * {{zeta, zeta}}"]
    if F.q % 2 == 0:
        steps.append("char 2: -zeta = zeta, so {zeta, zeta} = {zeta, -zeta} = 0")
        steps.append(f"hence {{zeta^{m}, zeta^{n}}} = 0")
        return ReductionTrace(q, m, n, tuple(steps), CHAR2, True)
    w = steinberg_witness(q)
    x, y = w
    steps.append("{zeta, zeta} = {-1, zeta}, so 2 {zeta, zeta} = 0")
    steps.append(
        f"witness: zeta*{x}^2 + zeta*{y}^2 = 1, so 0 = {{zeta {x}^2, zeta {y}^2}}"
    )
    steps.append(
        "expanding: 0 = {zeta, zeta} + 2*w with w in the cyclic group "
        "generated by {zeta, zeta}, and 2*w = 0"
    )
    steps.append(f"hence {{zeta, zeta}} = 0 and {{zeta^{m}, zeta^{n}}} = 0")
    return ReductionTrace(q, m, n, tuple(steps), w, True)


@dataclass(frozen=True)
class RetractionResult:
    """Leading-coefficient retraction of a symbol expression: the constant
    pair of each term and the proof that its K_2(F_q) class vanishes."""

    constants: tuple[tuple[int, int], ...]  # (c(f), c(g)) per term
    traces: tuple[ReductionTrace, ...]


def retraction(e: FFSymbolExpr) -> RetractionResult:
    """Apply c termwise and reduce each constant symbol {c(f), c(g)} to 0."""
    if not e.terms:
        return RetractionResult((), ())
    base = e.terms[0][0].field
    zeta = generator(base)
    consts = []
    traces = []
    for f, g, _ in e.terms:
        cf, cg = leading_coeff(f), leading_coeff(g)
        consts.append((cf, cg))
        mf = _discrete_log(base, zeta, cf)
        mg = _discrete_log(base, zeta, cg)
        traces.append(k2_fq_reduce(mf, mg, base.q))
    return RetractionResult(tuple(consts), tuple(traces))


def _discrete_log(F: Fq, zeta: int, a: int) -> int:
    """Smallest m >= 0 with zeta^m = a, by stepping (fields here are tiny)."""
    x = F.one
    for mm in range(F.q - 1):
        if x == a:
            return mm
        x = F.mul(x, zeta)
    raise ValueError("element not in the cyclic group")
