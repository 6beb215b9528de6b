"""Coordinate rings of the degenerate surface D(p) and its pieces.

The point p is always [1:0:0].  D(p) sits in P2 x P2 with coordinates
(x0, x1, x2; u0, u1, u2) and is cut out by x1*u0, x2*u0 and x1*u2 - x2*u1.
Its components are D0 = {u0 = 0}, the blow-up of the plane at p, and
D1 = {x1 = x2 = 0}, a plane with coordinates u0, u1, u2; they meet along the
line L = {u0 = 0} of D1.

Normal forms use the rewriting rules

    x1*u0 -> 0,   x2*u0 -> 0,   x2*u1 -> x1*u2

so a monomial x^i u^j is normal iff (j0 > 0 implies i1 = i2 = 0) and
(i2 > 0 implies j1 = 0).
"""

from __future__ import annotations

from functools import lru_cache

from .polys import BinaryForm, FormU, Poly, monomials

DP_NAMES = ("x0", "x1", "x2", "u0", "u1", "u2")
D0_NAMES = ("x0", "x1", "x2", "v1", "v2")


def normal_form(exps):
    """Normal-form exponent tuple of a raw D(p) monomial, or None if it lies in the ideal."""
    i0, i1, i2, j0, j1, j2 = exps
    if min(exps) < 0:
        raise ValueError("negative exponent")
    if j0 and (i1 or i2):
        return None
    k = min(i2, j1)
    return (i0, i1 + k, i2 - k, j0, j1 - k, j2 + k)


def _normal_d0(exps):
    i0, i1, i2, j1, j2 = exps
    k = min(i2, j1)
    return (i0, i1 + k, i2 - k, j1 - k, j2 + k)


class BigradedForm(Poly):
    """An element of the coordinate ring of D(p), stored in normal form."""

    __slots__ = ()
    names = DP_NAMES

    def __init__(self, field, nvars: int = 6, terms=None):
        super().__init__(field, nvars, terms)

    def _normalize_monomial(self, exps):
        return normal_form(exps)

    @property
    def bidegree(self):
        degs = {(sum(e[:3]), sum(e[3:])) for e in self.terms}
        if len(degs) > 1:
            raise ValueError("not bihomogeneous")
        return degs.pop() if degs else None

    def restrict(self, target: str):
        return restrict(self, target)


class D0Form(Poly):
    """An element of the bigraded ring of D0 in P2 x P1: k[x0,x1,x2; v1,v2]/(x1v2 - x2v1)."""

    __slots__ = ()
    names = D0_NAMES

    def __init__(self, field, nvars: int = 5, terms=None):
        super().__init__(field, nvars, terms)

    def _normalize_monomial(self, exps):
        return _normal_d0(exps)

    @property
    def bidegree(self):
        degs = {(sum(e[:3]), sum(e[3:])) for e in self.terms}
        if len(degs) > 1:
            raise ValueError("not bihomogeneous")
        return degs.pop() if degs else None

    def to_line(self) -> BinaryForm:
        """Restriction to the exceptional line: x0 -> 1, x1, x2 -> 0, v -> u."""
        return BinaryForm(
            self.field, 2, [((j1, j2), c) for (i0, i1, i2, j1, j2), c in self.terms.items() if not (i1 or i2)]
        )


def dp_vars(field):
    """The six generators x0, x1, x2, u0, u1, u2 as BigradedForms."""
    return tuple(BigradedForm.variable(field, 6, i) for i in range(6))


def lift_x(form: Poly) -> BigradedForm:
    """A form in x0, x1, x2 viewed on D(p)."""
    return BigradedForm(form.field, 6, [(e + (0, 0, 0), c) for e, c in form.terms.items()])


def lift_u(form: Poly) -> BigradedForm:
    """A form in u0, u1, u2 viewed on D(p)."""
    return BigradedForm(form.field, 6, [((0, 0, 0) + e, c) for e, c in form.terms.items()])


@lru_cache(maxsize=None)
def basis(a: int, b: int) -> tuple[tuple[int, ...], ...]:
    """Normal-form monomials of bidegree (a, b) in the ring of D(p)."""
    if a < 0 or b < 0:
        return ()
    out = []
    for ex in monomials(3, a):
        for eu in monomials(3, b):
            e = ex + eu
            if normal_form(e) == e:
                out.append(e)
    return tuple(out)


def dim_bigraded(a: int, b: int) -> int:
    """Dimension of the (a, b) graded piece of the coordinate ring of D(p)."""
    if a < 0 or b < 0:
        raise ValueError("bidegree must be nonnegative")
    return len(basis(a, b))


@lru_cache(maxsize=None)
def basis_d0(a: int, b: int) -> tuple[tuple[int, ...], ...]:
    """Normal-form monomials of bidegree (a, b) in the ring of D0."""
    if a < 0 or b < 0:
        return ()
    out = []
    for ex in monomials(3, a):
        for ev in monomials(2, b):
            e = ex + ev
            if _normal_d0(e) == e:
                out.append(e)
    return tuple(out)


def dim_d0(a: int, b: int) -> int:
    """h^0 of O_{D0}(aH + bF) for a, b >= 0 (hypersurface of bidegree (1,1) in P2 x P1)."""
    return len(basis_d0(a, b))


def restrict(f: BigradedForm, target: str):
    """Restrict a form on D(p) to ``"D0"``, ``"D1"`` or ``"L"``.

    D0: u0 -> 0, u_i -> v_i.  D1: x0 -> 1, x1, x2 -> 0 (a form in u0, u1, u2).
    L: both (a binary form in u1, u2).
    """
    field = f.field
    if target == "D0":
        return D0Form(field, 5, [(e[:3] + e[4:], c) for e, c in f.terms.items() if e[3] == 0])
    if target == "D1":
        return FormU(field, 3, [(e[3:], c) for e, c in f.terms.items() if e[1] == 0 and e[2] == 0])
    if target == "L":
        return BinaryForm(
            field, 2, [(e[4:], c) for e, c in f.terms.items() if e[1] == 0 and e[2] == 0 and e[3] == 0]
        )
    raise ValueError(f"unknown restriction target {target!r}")


def u_form_to_line(f: Poly) -> BinaryForm:
    """Restriction of a form on D1 to L (u0 -> 0)."""
    return BinaryForm(f.field, 2, [(e[1:], c) for e, c in f.terms.items() if e[0] == 0])


def coordinates(f: Poly, monomial_basis) -> list:
    """Coefficient vector of f against a list of monomials (f must lie in their span)."""
    index = {m: i for i, m in enumerate(monomial_basis)}
    v = [f.field.zero] * len(monomial_basis)
    for e, c in f.terms.items():
        if e not in index:
            raise ValueError(f"monomial {e} outside the given basis")
        v[index[e]] = c
    return v
