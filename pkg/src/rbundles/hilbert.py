"""Euler characteristics, Hilbert polynomials and Hilbert functions on D(p).

Closed forms for line bundles O(aH + bF) are checked against section counts
obtained by gluing D0 and D1 along L; Hilbert functions of cokernels are
obtained by graded linear algebra over the normal-form monomial bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .dspace import BigradedForm, D0Form, basis, basis_d0, coordinates
from .errors import FitFailure, NotInX, OutOfRange, SampleInX8
from .linalg import Matrix, rank
from .moduli import Direction, SheafMatrix, is_in_X, is_in_X8
from .polys import BinaryForm, FormU, FormX, monomials

MAX_BIDEGREE = 6


@dataclass(frozen=True)
class HilbertPoly:
    """A polynomial in m with rational coefficients, constant term first."""

    coeffs: tuple

    def __post_init__(self):
        c = [Fraction(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def linear(cls, const, slope) -> HilbertPoly:
        return cls((const, slope))

    @classmethod
    def fit(cls, points, degree: int) -> HilbertPoly:
        """Interpolate through the first degree+1 points and require the rest to agree."""
        points = list(points)
        if len(points) < degree + 1:
            raise FitFailure("not enough samples")
        base = points[: degree + 1]
        poly = cls(())
        for i, (mi, vi) in enumerate(base):
            term = cls((Fraction(vi),))
            for j, (mj, _) in enumerate(base):
                if j != i:
                    term = term * cls((Fraction(-mj, mi - mj), Fraction(1, mi - mj)))
            poly = poly + term
        for m, v in points:
            if poly(m) != v:
                raise FitFailure(f"sampled values {points} do not lie on a polynomial of degree {degree}")
        return poly

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, m):
        s = Fraction(0)
        for c in reversed(self.coeffs):
            s = s * m + c
        return s

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return HilbertPoly(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, HilbertPoly):
            return self.scale(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return HilbertPoly(tuple(out))

    __rmul__ = __mul__

    def scale(self, s) -> HilbertPoly:
        return HilbertPoly(tuple(c * s for c in self.coeffs))

    def is_integer_valued(self) -> bool:
        # a polynomial of degree d is integer valued iff it is on d+1 consecutive integers
        return all(self(m).denominator == 1 for m in range(self.degree + 2))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = {0: "", 1: "m"}.get(k, f"m^{k}")
            cs = str(c)
            if mono and cs in ("1", "-1"):
                cs = cs[:-1]
            elif mono and "/" in cs:
                cs = f"({cs})"
            parts.append(cs + mono)
        return " + ".join(parts).replace("+ -", "- ")


def chi_line_bundle(a: int, b: int) -> Fraction:
    """Euler characteristic of O(aH + bF) on D(p)."""
    s = Fraction(a + b)
    return s * s / 2 + 3 * s / 2 + 1


def _chi_poly(a: HilbertPoly, b: HilbertPoly) -> HilbertPoly:
    """chi(a(m), b(m)) for a, b polynomial in m, as a polynomial in m."""
    s = a + b
    return s * s * Fraction(1, 2) + s * Fraction(3, 2) + HilbertPoly((1,))


def hilbert_poly_line_bundle(a: int, b: int) -> HilbertPoly:
    """m -> chi(O(aH + bF) twisted by m(H + F)) = 2m^2 + (2(a+b)+3)m + chi(a, b)."""
    return HilbertPoly((chi_line_bundle(a, b), 2 * (a + b) + 3, 2))


def _m_plus(k: int) -> HilbertPoly:
    return HilbertPoly((k, 1))


def _const(k: int) -> HilbertPoly:
    return HilbertPoly((k,))


def chi_additivity_H() -> HilbertPoly:
    """chi(E(mH)) from the resolution: chi(m-1, 0) + chi(m, 0) - 2 chi(m-1, -1)."""
    return _chi_poly(_m_plus(-1), _const(0)) + _chi_poly(_m_plus(0), _const(0)) \
        - _chi_poly(_m_plus(-1), _const(-1)).scale(2)


def chi_additivity_HF() -> HilbertPoly:
    """chi(E(m(H+F))): chi(m-1, m) + chi(m, m) - 2 chi(m-1, m-1)."""
    m = _m_plus(0)
    return _chi_poly(_m_plus(-1), m) + _chi_poly(m, m) - _chi_poly(_m_plus(-1), _m_plus(-1)).scale(2)


def _restriction_rank(d0_basis, d1_basis, b: int, field) -> int:
    """Rank of (s, t) -> s|L - t|L from D0 and D1 sections to binary forms of degree b."""
    target = monomials(2, b)
    rows = []
    for e in d0_basis:
        f = D0Form(field, 5, {e: 1}).to_line()
        rows.append(coordinates(f, target))
    for e in d1_basis:
        f = BinaryForm(field, 2, {e[1:]: -1} if e[0] == 0 else {})
        rows.append(coordinates(f, target))
    if not rows or not target:
        return 0
    return rank(Matrix.from_rows(field, rows, len(target)))


def h0_line_bundle(a: int, b: int) -> int:
    """h^0(O(aH + bF)) from the gluing sequence 0 -> O -> O_D0 + O_D1 -> O_L -> 0."""
    from .fields import QQ

    if b < 0:
        # sections on D0 are plane forms of degree a+b; D1 and L have none
        return comb(a + b + 2, 2) if a + b >= 0 else 0
    d0 = basis_d0(a, b)
    d1 = monomials(3, b)
    return len(d0) + len(d1) - _restriction_rank(d0, d1, b, QQ)


def _check_range(*degs):
    if any(d < 0 or d > MAX_BIDEGREE for d in degs):
        raise OutOfRange(f"bidegrees must lie in [0, {MAX_BIDEGREE}]")


def _multiplication_rank(entries, source, targets, field, cls, nvars) -> int:
    """Rank of (f, g) -> (f*e11 + g*e21, f*e12 + g*e22) with f, g over ``source``."""
    e11, e21, e12, e22 = entries
    t1, t2 = targets
    rows = []
    for col in ((e11, e12), (e21, e22)):
        for mono in source:
            f = cls(field, nvars, {mono: 1})
            rows.append(coordinates(f * col[0], t1) + coordinates(f * col[1], t2))
    width = len(t1) + len(t2)
    if not rows or not width:
        return 0
    return rank(Matrix.from_rows(field, rows, width))


def hilbert_function_coker(phi, c: int, d: int) -> int:
    """dim of the (c, d) piece of coker(2 S(-1,-1) -> S(-1,0) + S) for the matrix Phi."""
    _check_range(c, d)
    t1, t2 = basis(c - 1, d), basis(c, d)
    src = basis(c - 1, d - 1)
    r = _multiplication_rank(phi.entries(), src, (t1, t2), phi.field, BigradedForm, 6)
    return len(t1) + len(t2) - r


def coker_d0(phi, m: int) -> int:
    r11, r21, r12, r22 = phi.restrict("D0")
    t1, t2 = basis_d0(m - 1, m), basis_d0(m, m)
    r = _multiplication_rank((r11, r21, r12, r22), basis_d0(m - 1, m - 1), (t1, t2), phi.field, D0Form, 5)
    return len(t1) + len(t2) - r


def coker_d1(phi, m: int) -> int:
    s = phi.on_D1()
    # on D1 the x-degree only contributes a trivial twist: both summands are O(m)
    t = monomials(3, m)
    r = _multiplication_rank(s, monomials(3, m - 1) if m >= 1 else [], (t, t), phi.field, FormU, 3)
    return 2 * len(t) - r


def restriction_hilbert_polys(phi, samples=range(1, 5)) -> tuple[HilbertPoly, HilbertPoly]:
    """Hilbert polynomials of the cokernel restricted to D0 (w.r.t. O(1,1)) and to D1."""
    d0 = HilbertPoly.fit([(m, coker_d0(phi, m)) for m in samples], 1)
    d1 = HilbertPoly.fit([(m, coker_d1(phi, m)) for m in samples], 1)
    return d0, d1


def plane_coker_dim(a: SheafMatrix, m: int) -> int:
    """Degree-m piece of the cokernel of 2 O(-2) -> O(-1) + O given by (z1 z2 / q1 q2)."""
    t1, t2 = monomials(3, m - 1) if m >= 1 else [], monomials(3, m)
    src = monomials(3, m - 2) if m >= 2 else []
    entries = (a.z1, a.z2, a.q1, a.q2)
    return len(t1) + len(t2) - _multiplication_rank(entries, src, (t1, t2), a.field, FormX, 3)


@dataclass(frozen=True)
class FamilyProbe:
    t: object
    matrix: SheafMatrix | None
    dims: tuple
    poly: HilbertPoly


def flat_family_probes(a: SheafMatrix, b: Direction, t_samples, degrees=range(1, 5)) -> list[FamilyProbe]:
    """Hilbert data of the fibers of t -> A + tB; t = 0 uses the resolution on D(p)."""
    out = []
    for t in t_samples:
        t = a.field(t)
        if not t:
            poly = chi_additivity_H()
            out.append(FamilyProbe(t, None, tuple(poly(m) for m in degrees), poly))
            continue
        fiber = a + b.scale(t)
        if not is_in_X(fiber):
            raise NotInX(f"A + tB leaves X at t = {t}")
        if is_in_X8(fiber):
            raise SampleInX8(f"A + tB lies in X8 at t = {t}")
        dims = tuple(plane_coker_dim(fiber, m) for m in degrees)
        try:
            poly = HilbertPoly.fit(list(zip(degrees, dims)), 1)
        except FitFailure:
            poly = HilbertPoly(())
        out.append(FamilyProbe(t, fiber, dims, poly))
    return out


def flat_family_check(a: SheafMatrix, b: Direction, t_samples) -> bool:
    """Every probed fiber (and the central fiber) has Hilbert polynomial 3m + 1."""
    target = HilbertPoly.linear(1, 3)
    return all(p.poly == target for p in flat_family_probes(a, b, t_samples))


def dim_d0_closed(a: int, b: int) -> int:
    """C(a+2,2)(b+1) - C(a+1,2) b: the D0 section count from the (1,1) hypersurface sequence."""
    return comb(a + 2, 2) * (b + 1) - comb(a + 1, 2) * b


__all__ = [
    "HilbertPoly", "FamilyProbe", "chi_line_bundle", "hilbert_poly_line_bundle", "h0_line_bundle",
    "hilbert_function_coker", "restriction_hilbert_polys", "flat_family_check", "flat_family_probes",
    "chi_additivity_H", "chi_additivity_HF", "coker_d0", "coker_d1", "plane_coker_dim", "dim_d0_closed",
]
