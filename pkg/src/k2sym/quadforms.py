"""Quadratic forms over Q: diagonalization, classical invariants, and the
local-global decisions for conics and quaternion algebras.

Forms are regular (nonzero determinant) throughout.  The Hasse invariant is
the product over i < j of hilbert(a_i, a_j, v); with this convention the
rank-4 form <1, -x, -y, xy> satisfies

    hasse_v * hilbert(-1, -1, v) = hilbert(x, y, v)

at every place, which is the checkable shadow of the fact that the Hasse
invariant inverts the mod-2 symbol on classes of even rank and trivial
discriminant.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import factorize
from .localsym import REAL, PlaceQ, hilbert, support_places


def _frac(x) -> Fraction:
    f = Fraction(x)
    return f


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric matrix of rationals in row-major tuples."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.rows[i][j] != self.rows[j][i]:
                    raise ValueError("matrix must be symmetric")

    @staticmethod
    def of(rows) -> "GramMatrix":
        return GramMatrix(tuple(tuple(_frac(x) for x in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class DiagForm:
    """Diagonal quadratic form <a_1, ..., a_n>, all entries nonzero."""

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if any(a == 0 for a in self.entries):
            raise ValueError("diagonal entries must be nonzero")

    @staticmethod
    def of(*entries) -> "DiagForm":
        return DiagForm(tuple(_frac(a) for a in entries))

    @property
    def rank(self) -> int:
        return len(self.entries)


def _mat_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)) for i in range(n)
    )


def _transpose(A):
    return tuple(tuple(row[i] for row in A) for i in range(len(A[0])))


def _identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def diagonalize_with_basis(g: GramMatrix) -> tuple[DiagForm, tuple[tuple[Fraction, ...], ...]]:
    """Diagonalize by congruence; returns (form, U) with U^T g U = diag(form).

    Standard symmetric elimination.  A zero pivot is repaired by swapping in
    a later nonzero diagonal entry, or, when the whole trailing diagonal
    vanishes, by the sum/difference substitution (e_k + e_j, e_k - e_j) on a
    nonzero off-diagonal pair, which splits off a hyperbolic plane.
    """
    n = g.n
    M = [list(row) for row in g.rows]
    U = _identity(n)

    def apply(P):
        nonlocal M, U
        Pt = _transpose(P)
        M = [list(r) for r in _mat_mul(_mat_mul(Pt, M), P)]
        U = [list(r) for r in _mat_mul(U, P)]

    for k in range(n):
        if M[k][k] == 0:
            j = next((j for j in range(k + 1, n) if M[j][j] != 0), None)
            if j is not None:
                P = _identity(n)
                P[k][k] = P[j][j] = Fraction(0)
                P[k][j] = P[j][k] = Fraction(1)
                apply(P)
            else:
                j = next((j for j in range(k + 1, n) if M[k][j] != 0), None)
                if j is None:
                    raise ValueError("singular matrix")
                P = _identity(n)
                P[j][k] = Fraction(1)   # new e_k = e_k + e_j
                P[j][j] = Fraction(-1)  # new e_j = e_k - e_j
                P[k][j] = Fraction(1)
                apply(P)
        pivot = M[k][k]
        if pivot == 0:
            raise ValueError("singular matrix")
        for j in range(k + 1, n):
            if M[k][j] != 0:
                P = _identity(n)
                P[k][j] = -M[k][j] / pivot
                apply(P)

    Ut = tuple(tuple(row) for row in U)
    check = _mat_mul(_mat_mul(_transpose(Ut), g.rows), Ut)
    for i in range(n):
        for j in range(n):
            expect = M[i][i] if i == j else Fraction(0)
            assert check[i][j] == expect, "congruence bookkeeping broke"
    return DiagForm(tuple(M[i][i] for i in range(n))), Ut


def diagonalize(g: GramMatrix) -> DiagForm:
    return diagonalize_with_basis(g)[0]


def square_class(r) -> int:
    """Squarefree integer representative of the square class of r != 0."""
    r = _frac(r)
    if r == 0:
        raise ValueError("zero has no square class")
    sign, fac = factorize(r)
    out = sign
    for p, e in fac.factors:
        if e % 2:
            out *= p
    return out


def _square_scale(r: Fraction) -> tuple[int, Fraction]:
    """Write r = sf * t^2 with sf squarefree; returns (sf, t), t > 0."""
    sf = square_class(r)
    t2 = r / sf
    t = Fraction(isqrt(t2.numerator), isqrt(t2.denominator))
    assert t * t == t2
    return sf, t


@dataclass(frozen=True)
class FormInvariants:
    rank: int
    disc: int  # squarefree representative of the discriminant class
    signature: tuple[int, int]  # (positive entries, negative entries)
    hasse: tuple[tuple[PlaceQ, int], ...]  # over the support set, sorted

    def hasse_at(self, place: PlaceQ) -> int:
        for v, s in self.hasse:
            if v == place:
                return s
        return 1

    def hasse_minus_set(self) -> frozenset:
        return frozenset(v for v, s in self.hasse if s == -1)


def invariants(f: DiagForm) -> FormInvariants:
    """Rank, discriminant class, signature, and all local Hasse invariants."""
    entries = f.entries
    places = set()
    for a in entries:
        for b in entries:
            places.update(support_places(a, b))
    hasse = []
    for v in sorted(places, key=PlaceQ.sort_key):
        s = 1
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                s *= hilbert(entries[i], entries[j], v)
        hasse.append((v, s))
    disc = square_class(_prod(entries))
    pos = sum(1 for a in entries if a > 0)
    return FormInvariants(
        rank=len(entries),
        disc=disc,
        signature=(pos, len(entries) - pos),
        hasse=tuple(hasse),
    )


def _prod(xs):
    out = Fraction(1)
    for x in xs:
        out *= x
    return out


def equivalent_over_Q(f1: DiagForm, f2: DiagForm) -> bool:
    """Rational equivalence decided by the complete invariant set."""
    i1, i2 = invariants(f1), invariants(f2)
    return (
        i1.rank == i2.rank
        and i1.disc == i2.disc
        and i1.signature == i2.signature
        and i1.hasse_minus_set() == i2.hasse_minus_set()
    )


# -- conics xR^2 + yS^2 = 1 ---------------------------------------------------


@dataclass(frozen=True)
class ConicCertificate:
    x: Fraction
    y: Fraction
    tested: tuple[tuple[PlaceQ, int], ...]  # every support place with its sign
    failing: tuple[PlaceQ, ...]


def conic_solvable_Q(x, y) -> tuple[bool, ConicCertificate]:
    """Decide solvability of x R^2 + y S^2 = 1 over Q by local symbols.

    Raises RuntimeError if exactly one place fails: the product formula
    makes a single failure impossible, so that would be an internal error.
    """
    x, y = _frac(x), _frac(y)
    if x == 0 or y == 0:
        raise ValueError("conic coefficients must be nonzero")
    tested = []
    failing = []
    for v in support_places(x, y):
        s = hilbert(x, y, v)
        tested.append((v, s))
        if s == -1:
            failing.append(v)
    if len(failing) == 1:
        raise RuntimeError(f"single local obstruction at {failing[0]}: reciprocity violated")
    cert = ConicCertificate(x, y, tuple(tested), tuple(failing))
    return not failing, cert


_SQ64 = frozenset(t * t % 64 for t in range(64))
_SQ64_ODD = frozenset(t * t % 64 for t in range(1, 64, 2))


def _congruence_obstruction_odd(xs: int, ys: int, p: int) -> bool:
    """True if x R^2 + y S^2 = 1 is p-adically obstructed, p odd, xs ys squarefree.

    Case analysis on which coefficients p divides; the residual condition
    is a quadratic-residue test done by exhaustion, so this decision shares
    no code with the Hilbert symbol.
    """
    sq = {t * t % p for t in range(1, p)}
    dx, dy = xs % p == 0, ys % p == 0
    if not dx and not dy:
        return False
    if dx and not dy:
        return ys % p not in sq
    if dy and not dx:
        return xs % p not in sq
    u, v = xs // p, ys // p
    return (-u * v) % p not in sq


def _congruence_obstruction_2(xs: int, ys: int) -> bool:
    """No primitive solution of xs r^2 + ys s^2 = c^2 mod 64.

    Primitive means r, s, c not all even; v in the odd-square set gives an
    odd c, otherwise r or s must supply the odd coordinate.
    """
    for r in range(64):
        xr = xs * r * r
        for s in range(64):
            v = (xr + ys * s * s) % 64
            if v in _SQ64_ODD:
                return False
            if v in _SQ64 and (r % 2 or s % 2):
                return False
    return True


def conic_congruence_obstruction(x, y):
    """Search for a cheap proof of non-solvability; returns a reason or None.

    Checks the real place and, after reducing the coefficients to their
    squarefree parts, a finite congruence condition at each prime of the
    support.  A returned obstruction is unconditional (a rational point
    would reduce to a primitive solution at every modulus).
    """
    x, y = _frac(x), _frac(y)
    xs, _ = _square_scale(x)
    ys, _ = _square_scale(y)
    if xs < 0 and ys < 0:
        return "real: both coefficients negative"
    if _congruence_obstruction_2(xs, ys):
        return "no primitive solution mod 64"
    primes = set()
    for c in (xs, ys):
        _, fac = factorize(c)
        primes.update(p for p in fac.primes() if p != 2)
    for p in sorted(primes):
        if _congruence_obstruction_odd(xs, ys, p):
            return f"no primitive solution at {p}"
    return None


def conic_point_search(x, y, height_bound: int):
    """Search for rational (R, S) with x R^2 + y S^2 = 1, or None.

    Height is max(|numerator|, |denominator|) over both coordinates in
    lowest terms.  Obstructed instances are rejected without search; the
    obstruction test is congruence-based and independent of the symbol
    machinery, so agreement with conic_solvable_Q is a genuine check.
    """
    x, y = _frac(x), _frac(y)
    if x == 0 or y == 0:
        raise ValueError("conic coefficients must be nonzero")
    if conic_congruence_obstruction(x, y) is not None:
        return None
    xs, tx = _square_scale(x)
    ys, ty = _square_scale(y)
    # solve xs r^2 + ys s^2 = c^2 in integers, then (R, S) = (r/(c tx), s/(c ty))
    for H in range(1, height_bound + 1):
        for r in range(H, -1, -1):
            ss = range(0, H + 1) if r == H else (H,)
            for s in ss:
                v = xs * r * r + ys * s * s
                if v <= 0:
                    continue
                c = isqrt(v)
                if c * c == v:
                    R = Fraction(r, c) / tx
                    S = Fraction(s, c) / ty
                    if max(abs(R.numerator), R.denominator, abs(S.numerator), S.denominator) <= height_bound:
                        return (R, S)
    return None


# -- quaternions and the Pfister form -----------------------------------------


def quaternion_splits(a, b, place: PlaceQ | None = None) -> bool:
    """Whether the quaternion algebra (a, b) is a matrix algebra.

    Locally this is hilbert(a, b, place) = +1; globally it is the
    conjunction over the support, the same criterion as for the conic.
    """
    a, b = _frac(a), _frac(b)
    if a == 0 or b == 0:
        raise ValueError("quaternion parameters must be nonzero")
    if place is not None:
        return hilbert(a, b, place) == 1
    return all(hilbert(a, b, v) == 1 for v in support_places(a, b))


def pfister_form(x, y) -> DiagForm:
    x, y = _frac(x), _frac(y)
    return DiagForm.of(1, -x, -y, x * y)


def pfister_hasse_identity(x, y, place: PlaceQ) -> bool:
    """hasse_v(<1,-x,-y,xy>) * hilbert(-1,-1,v) = hilbert(x,y,v)."""
    x, y = _frac(x), _frac(y)
    if x == 0 or y == 0:
        raise ValueError("parameters must be nonzero")
    form = pfister_form(x, y)
    h = 1
    es = form.entries
    for i in range(4):
        for j in range(i + 1, 4):
            h *= hilbert(es[i], es[j], place)
    return h * hilbert(Fraction(-1), Fraction(-1), place) == hilbert(x, y, place)
