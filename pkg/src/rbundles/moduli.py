"""The parameter space X of presenting matrices and its singular stratum X8.

A point of X is a 2x2 matrix

    A = ( z1  q1 )
        ( z2  q2 )

with z1, z2 independent linear forms and q1, q2 quadratic forms in x0, x1, x2,
such that det A = z1*q2 - z2*q1 is not identically zero.  The 18 coordinates
are the coefficients of z1, z2 (order [x0, x1, x2]) followed by those of
q1, q2 (order [x0^2, x0x1, x0x2, x1^2, x1x2, x2^2]).

A lies in X8 iff q1 and q2 both vanish at p(A), the common zero of z1, z2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DependentForms, NotInX, NotInX8, NotSpecialForm
from .fields import QQ
from .linalg import Matrix, rank
from .polys import FormX, linear_form, monomials, parse_form, quadratic_form, x_vars

LINEAR_NAMES = ("0", "1", "2")
QUADRATIC_NAMES = ("00", "01", "02", "11", "12", "22")


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of projective space, normalized so the first nonzero coordinate is 1."""

    coords: tuple

    def __post_init__(self):
        lead = next((c for c in self.coords if c), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", tuple(c / lead for c in self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


PointP2 = ProjectivePoint


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


class _TwoByTwo:
    """Shared behaviour of SheafMatrix and Direction: a column of linear forms
    next to a column of quadratic forms, viewed as a point of k^18."""

    __slots__ = ()

    def entries(self) -> tuple[FormX, FormX, FormX, FormX]:
        raise NotImplementedError

    @property
    def field(self):
        return self.entries()[0].field

    @classmethod
    def from_entries(cls, l1, l2, c1, c2):
        return cls(l1, l2, c1, c2)

    @classmethod
    def from_coeffs(cls, field, l1, l2, c1, c2):
        return cls(
            linear_form(field, l1), linear_form(field, l2),
            quadratic_form(field, c1), quadratic_form(field, c2),
        )

    @classmethod
    def from_vector(cls, field, v):
        v = list(v)
        if len(v) != 18:
            raise ValueError("expected 18 coordinates")
        return cls.from_coeffs(field, v[0:3], v[3:6], v[6:12], v[12:18])

    @classmethod
    def parse(cls, field, l1: str, c1: str, l2: str, c2: str):
        """Build from expressions, given row by row: ``parse(QQ, "x1", "x2^2", "x2", "x1*x0")``."""
        return cls(parse_form(field, l1), parse_form(field, l2), parse_form(field, c1), parse_form(field, c2))

    def to_vector(self) -> tuple:
        l1, l2, c1, c2 = self.entries()
        return l1.coeff_vector(1) + l2.coeff_vector(1) + c1.coeff_vector(2) + c2.coeff_vector(2)

    def _combine(self, other, fn):
        return type(self)(*(fn(a, b) for a, b in zip(self.entries(), other.entries())))

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def scale(self, s):
        return type(self)(*(e * s for e in self.entries()))

    def __eq__(self, other):
        return type(self) is type(other) and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    def map_field(self, field, fn=None):
        return type(self)(*(e.map_coeffs(field, fn) for e in self.entries()))

    def well_shaped(self) -> bool:
        l1, l2, c1, c2 = self.entries()
        return all(e.is_homogeneous(1) for e in (l1, l2)) and all(e.is_homogeneous(2) for e in (c1, c2))

    def rows(self) -> str:
        l1, l2, c1, c2 = self.entries()
        return f"[[{l1}, {c1}], [{l2}, {c2}]]"

    def __repr__(self):
        return f"{type(self).__name__}{self.rows()}"


class SheafMatrix(_TwoByTwo):
    __slots__ = ("z1", "z2", "q1", "q2")

    def __init__(self, z1: FormX, z2: FormX, q1: FormX, q2: FormX):
        self.z1, self.z2, self.q1, self.q2 = z1, z2, q1, q2

    def entries(self):
        return (self.z1, self.z2, self.q1, self.q2)

    def det(self) -> FormX:
        return self.z1 * self.q2 - self.z2 * self.q1

    def is_special(self) -> bool:
        x0, x1, x2 = x_vars(self.field)
        return self.z1 == x1 and self.z2 == x2


class Direction(_TwoByTwo):
    """A tangent vector at a point of X: same shape as a SheafMatrix, any entries."""

    __slots__ = ("beta1", "beta2", "c1", "c2")

    def __init__(self, beta1: FormX, beta2: FormX, c1: FormX, c2: FormX):
        self.beta1, self.beta2, self.c1, self.c2 = beta1, beta2, c1, c2

    def entries(self):
        return (self.beta1, self.beta2, self.c1, self.c2)

    @classmethod
    def zero(cls, field=QQ):
        return cls.from_vector(field, [0] * 18)

    @classmethod
    def named(cls, field=QQ, **coeffs):
        """Build from named coefficients: ``xi0, xi1, xi2, eta0..eta2`` for the
        linear column and ``xi00, xi01, ..., xi22, eta00, ..., eta22`` for the
        quadratic column; omitted ones are zero."""
        names = (
            [f"xi{n}" for n in LINEAR_NAMES] + [f"eta{n}" for n in LINEAR_NAMES]
            + [f"xi{n}" for n in QUADRATIC_NAMES] + [f"eta{n}" for n in QUADRATIC_NAMES]
        )
        unknown = set(coeffs) - set(names)
        if unknown:
            raise TypeError(f"unknown coefficient names {sorted(unknown)}")
        return cls.from_vector(field, [coeffs.get(n, 0) for n in names])

    @property
    def xi0(self):
        return self.beta1.coefficient((1, 0, 0))

    @property
    def eta0(self):
        return self.beta2.coefficient((1, 0, 0))

    @property
    def xi00(self):
        return self.c1.coefficient((2, 0, 0))

    @property
    def eta00(self):
        return self.c2.coefficient((2, 0, 0))


@dataclass(frozen=True)
class SpecialCoefficients:
    """Coefficients of a special matrix q1 = x1*y1 + x2*y2, q2 = x1*z1 + x2*z2.

    The x1*x2 monomial is assigned to y1 (resp. z1), so y2 and z2 involve only
    x0 and x2.
    """

    a01: object
    a02: object
    a11: object
    a12: object
    a22: object
    b01: object
    b02: object
    b11: object
    b12: object
    b22: object

    @classmethod
    def of(cls, a: SheafMatrix) -> SpecialCoefficients:
        require_special(a)
        qa, qb = a.q1.coeff_vector(2), a.q2.coeff_vector(2)
        if qa[0] or qb[0]:
            raise NotInX8("a special matrix in X8 has no x0^2 terms")
        return cls(qa[1], qa[2], qa[3], qa[4], qa[5], qb[1], qb[2], qb[3], qb[4], qb[5])

    def splitting(self, field):
        """The linear forms (y1, y2, z1, z2)."""
        return (
            linear_form(field, (self.a01, self.a11, self.a12)),
            linear_form(field, (self.a02, 0, self.a22)),
            linear_form(field, (self.b01, self.b11, self.b12)),
            linear_form(field, (self.b02, 0, self.b22)),
        )


@dataclass(frozen=True)
class GroupElement:
    """(g, h) in GL2 x H acting by A -> g A h^{-1}, with h = [[lam, z], [0, mu]]."""

    g: Matrix
    lam: object
    mu: object
    z: FormX

    def __post_init__(self):
        if not self.g.det() or not self.lam or not self.mu:
            raise ValueError("group element is not invertible")

    @classmethod
    def identity(cls, field=QQ) -> GroupElement:
        return cls(Matrix.identity(field, 2), field.one, field.one, FormX(field))

    @classmethod
    def rows(cls, field, g, lam=1, mu=1, z=None) -> GroupElement:
        return cls(Matrix.from_rows(field, g), field(lam), field(mu), z if z is not None else FormX(field))

    def _apply(self, cls, l1, l2, c1, c2):
        g = self.g
        inv_lam = 1 / self.lam
        inv_mu = 1 / self.mu
        # columns of M h^{-1}: (col1/lam, col2/mu - z*col1/(lam*mu))
        n1 = l1 * inv_lam
        n2 = l2 * inv_lam
        m1 = c1 * inv_mu - self.z * l1 * (inv_lam * inv_mu)
        m2 = c2 * inv_mu - self.z * l2 * (inv_lam * inv_mu)
        return cls(
            n1 * g[0, 0] + n2 * g[0, 1],
            n1 * g[1, 0] + n2 * g[1, 1],
            m1 * g[0, 0] + m2 * g[0, 1],
            m1 * g[1, 0] + m2 * g[1, 1],
        )

    def act(self, m):
        """g M h^{-1}; applies to SheafMatrix and (linearly) to Direction."""
        return self._apply(type(m), *m.entries())

    def inverse(self) -> GroupElement:
        # (g, h)^{-1} = (g^{-1}, h^{-1}); h^{-1} = [[1/lam, -z/(lam mu)], [0, 1/mu]]
        g = self.g
        d = g.det()
        ginv = Matrix.from_rows(g.field, [[g[1, 1] / d, -g[0, 1] / d], [-g[1, 0] / d, g[0, 0] / d]])
        return GroupElement(ginv, 1 / self.lam, 1 / self.mu, self.z * (-1 / (self.lam * self.mu)))


@dataclass(frozen=True)
class NormalCoords:
    n1: object
    n2: object

    def is_zero(self) -> bool:
        return not self.n1 and not self.n2

    def ratio_to(self, other: NormalCoords):
        """alpha with self = alpha * other, or None when not proportional (or alpha = 0)."""
        if other.is_zero():
            return None
        alpha = self.n1 / other.n1 if other.n1 else self.n2 / other.n2
        if alpha and self.n1 == alpha * other.n1 and self.n2 == alpha * other.n2:
            return alpha
        return None

    def __iter__(self):
        return iter((self.n1, self.n2))


def is_in_X(a: SheafMatrix) -> bool:
    if not a.well_shaped():
        return False
    if rank(Matrix.from_rows(a.field, [a.z1.coeff_vector(1), a.z2.coeff_vector(1)])) < 2:
        return False
    return not a.det().is_zero()


def common_zero(a: SheafMatrix) -> ProjectivePoint:
    """The common zero of z1 and z2: the cross product of their coefficient triples."""
    c = _cross(a.z1.coeff_vector(1), a.z2.coeff_vector(1))
    if not any(c):
        raise DependentForms("z1 and z2 are linearly dependent")
    return ProjectivePoint(c)


def is_in_X8(a: SheafMatrix) -> bool:
    if not is_in_X(a):
        raise NotInX("matrix is not in X (dependent linear forms or zero determinant)")
    p = common_zero(a).coords
    return not a.q1.evaluate(p) and not a.q2.evaluate(p)


def group_act(gh: GroupElement, a):
    return gh.act(a)


def change_coordinates(m, t: Matrix):
    """Substitute x = t x' in every entry (t is 3x3 and invertible)."""
    field = m.field
    xs = x_vars(field)
    images = [sum((xs[j] * t[i, j] for j in range(3)), FormX(field)) for i in range(3)]
    return type(m)(*(e.substitute(images, FormX) for e in m.entries()))


def _chart_matrix(field, p: ProjectivePoint) -> Matrix:
    """An invertible T with T e0 = p: elementary when p0 != 0, else swapping x0 with
    the first nonzero coordinate."""
    i0 = next(i for i, c in enumerate(p.coords) if c)
    cols = [list(p.coords)]
    for j in range(1, 3):
        k = 0 if j == i0 else j
        cols.append([1 if r == k else 0 for r in range(3)])
    return Matrix.from_rows(field, [[cols[c][r] for c in range(3)] for r in range(3)])


def _inverse3(t: Matrix) -> Matrix:
    from .linalg import solve

    cols = [solve(t, [1 if i == j else 0 for i in range(3)]) for j in range(3)]
    return Matrix.from_rows(t.field, [[cols[c][r] for c in range(3)] for r in range(3)])


@dataclass(frozen=True)
class SpecialFormCertificate:
    """How a matrix was brought into special form.

    First the coordinate change x = chart x' (moving p(A) to [1:0:0]), then
    the group element ``group`` acting on the result.
    """

    chart: Matrix
    group: GroupElement

    def apply(self, m):
        """Transport a matrix or a direction into the special chart."""
        return self.group.act(change_coordinates(m, self.chart))

    def undo(self, m):
        """Map a special-chart matrix (or direction) back to the original coordinates."""
        return change_coordinates(self.group.inverse().act(m), _inverse3(self.chart))

    def is_identity(self) -> bool:
        f = self.chart.field
        return (
            self.chart == Matrix.identity(f, 3)
            and self.group.g == Matrix.identity(f, 2)
            and self.group.lam == 1 and self.group.mu == 1 and self.group.z.is_zero()
        )


def to_special_form(a: SheafMatrix) -> tuple[SheafMatrix, SpecialFormCertificate]:
    """Normalize A in X8 to z1 = x1, z2 = x2 with a01 = a11 = a12 = 0."""
    if not is_in_X8(a):
        raise NotInX8("q1 and q2 do not both vanish at p(A)")
    field = a.field
    p = common_zero(a)
    chart = _chart_matrix(field, p)
    b = change_coordinates(a, chart)
    # z1, z2 now lie in span(x1, x2)
    zmat = Matrix.from_rows(field, [b.z1.coeff_vector(1)[1:], b.z2.coeff_vector(1)[1:]])
    d = zmat.det()
    g = [[zmat[1, 1] / d, -zmat[0, 1] / d], [-zmat[1, 0] / d, zmat[0, 0] / d]]
    row_op = GroupElement.rows(field, g)
    b = row_op.act(b)
    y1 = SpecialCoefficients.of(b).splitting(field)[0]
    group = GroupElement(row_op.g, field.one, field.one, y1)
    cert = SpecialFormCertificate(chart, group)
    return cert.apply(a), cert


def require_special(a: SheafMatrix):
    if not a.is_special():
        raise NotSpecialForm("linear entries must be (x1, x2); use to_special_form first")


def tangent_and_normal(a: SheafMatrix, b: Direction) -> tuple[bool, NormalCoords]:
    """Normal coordinates of B at a special A:

        n1 = xi00 - a01*xi0 - a02*eta0,   n2 = eta00 - b01*xi0 - b02*eta0.

    B is tangent to X8 iff both vanish.
    """
    s = SpecialCoefficients.of(a)
    n = NormalCoords(
        b.xi00 - s.a01 * b.xi0 - s.a02 * b.eta0,
        b.eta00 - s.b01 * b.xi0 - s.b02 * b.eta0,
    )
    return n.is_zero(), n


def normal_coords(a: SheafMatrix, b: Direction) -> NormalCoords:
    return tangent_and_normal(a, b)[1]


def tangent_system(a: SheafMatrix) -> Matrix:
    """The two tangent equations at a special A as a 2x18 coefficient matrix."""
    s = SpecialCoefficients.of(a)
    field = a.field
    r1 = [0] * 18
    r2 = [0] * 18
    # positions: xi0 = 0, eta0 = 3, xi00 = 6, eta00 = 12
    r1[6], r1[0], r1[3] = 1, -s.a01, -s.a02
    r2[12], r2[0], r2[3] = 1, -s.b01, -s.b02
    return Matrix.from_rows(field, [r1, r2])


def tangent_basis(a: SheafMatrix) -> list[Direction]:
    """A basis of the 16-dimensional tangent space of X8 at a special A."""
    return [Direction.from_vector(a.field, v) for v in tangent_system(a).kernel_basis()]


@lru_cache(maxsize=1)
def _jacobian_functions():
    import sympy

    syms = sympy.symbols("z1_0:3 z2_0:3 q1_0:6 q2_0:6")
    z1, z2 = sympy.Matrix(syms[0:3]), sympy.Matrix(syms[3:6])
    p = z1.cross(z2)
    mons = [sympy.Mul(*[p[i] ** k for i, k in enumerate(e)]) for e in monomials(3, 2)]
    f1 = sum(c * m for c, m in zip(syms[6:12], mons))
    f2 = sum(c * m for c, m in zip(syms[12:18], mons))
    rows = [[sympy.expand(sympy.diff(f, v)) for v in syms] for f in (f1, f2)]
    # pure-Python arithmetic with integer coefficients: works for Fraction and F_p inputs
    return [[sympy.lambdify(syms, e, modules=[{}]) for e in row] for row in rows]


def x8_jacobian_oracle(a: SheafMatrix) -> Matrix:
    """Jacobian at A of f_i(A) = q_i(p(A)), with p(A) = z1 x z2, over all 18 coordinates.

    Computed by symbolic differentiation, independently of the tangent system.
    """
    if not is_in_X8(a):
        raise NotInX8("Jacobian oracle requires A in X8")
    v = a.to_vector()
    fns = _jacobian_functions()
    field = a.field
    return Matrix.from_rows(field, [[field(fn(*v)) for fn in row] for row in fns])


def quotient_invariants(a: SheafMatrix) -> tuple[FormX, ProjectivePoint]:
    """(det A up to scale, p(A)): the image of A in M."""
    if not is_in_X(a):
        raise NotInX("matrix is not in X")
    return a.det().monic(), common_zero(a)
