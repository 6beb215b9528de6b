"""The resolution matrix Phi(A, B) of an R-bundle and the geometry of its support.

For a special A (z1 = x1, z2 = x2) and a direction B, the matrix on D(p) is

    e11 = u1 + xi0*u0          e12 = u1*y1 + u2*y2 + xi00*x0*u0
    e21 = u2 + eta0*u0         e22 = u1*z1 + u2*z2 + eta00*x0*u0

Its determinant cuts out a curve C = C0 + C1 with C0 on D0 and C1 a conic
on D1.  Only xi0, eta0, xi00, eta00 of B survive, because x1*u0 = x2*u0 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum
from itertools import product

from .dspace import BigradedForm, D0Form, dp_vars, lift_x, restrict, u_form_to_line
from .errors import DegenerateConic, TangentDirection
from .fields import sqrt
from .linalg import Matrix, rank
from .moduli import (
    Direction,
    GroupElement,
    ProjectivePoint,
    SheafMatrix,
    SpecialCoefficients,
    _cross,
    normal_coords,
    require_special,
)
from .polys import BinaryForm, FormU, u_vars

U2 = (2, 0, 0)
U0U1 = (1, 1, 0)
U0U2 = (1, 0, 1)
U1_2 = (0, 2, 0)
U1U2 = (0, 1, 1)
U2_2 = (0, 0, 2)


class BoundaryClass(str, Enum):
    TWO_POINTS = "TwoPoints"
    ONE_POINT = "OnePoint"
    WHOLE_LINE = "WholeLine"


class ConicClass(str, Enum):
    SMOOTH = "Smooth"
    TWO_LINES = "TwoLines"
    DOUBLE_LINE = "DoubleLine"


class StabilizerClass(str, Enum):
    ORDER_TWO = "OrderTwo"
    MULTIPLICATIVE_GROUP = "MultiplicativeGroup"
    TRIVIAL = "Trivial"
    CONTAINS_L_TRANSITIVE = "ContainsLTransitive"


@dataclass(frozen=True)
class PhiMatrix:
    e11: BigradedForm
    e21: BigradedForm
    e12: BigradedForm
    e22: BigradedForm

    @property
    def field(self):
        return self.e11.field

    def entries(self):
        return (self.e11, self.e21, self.e12, self.e22)

    def restrict(self, target: str) -> tuple:
        return tuple(restrict(e, target) for e in self.entries())

    def det(self) -> BigradedForm:
        return self.e11 * self.e22 - self.e21 * self.e12

    def on_D1(self):
        """The 2x2 matrix of u-forms obtained by restricting to D1."""
        return self.restrict("D1")

    def evaluate_D1(self, point) -> tuple:
        return tuple(f.evaluate(point) for f in self.on_D1())

    def __str__(self):
        return f"[[{self.e11}, {self.e12}], [{self.e21}, {self.e22}]]"


def _phi_entries(a: SheafMatrix, b: Direction) -> PhiMatrix:
    field = a.field
    x0, x1, x2, u0, u1, u2 = dp_vars(field)
    y1, y2, z1, z2 = (lift_x(f) for f in SpecialCoefficients.of(a).splitting(field))
    return PhiMatrix(
        u1 + u0 * b.xi0,
        u2 + u0 * b.eta0,
        u1 * y1 + u2 * y2 + x0 * u0 * b.xi00,
        u1 * z1 + u2 * z2 + x0 * u0 * b.eta00,
    )


def build_phi(a: SheafMatrix, b: Direction, allow_tangent: bool = False) -> PhiMatrix:
    """Phi(A, B) for a special A.  A tangent B is rejected unless ``allow_tangent``
    (its cokernel is then not locally free at q)."""
    require_special(a)
    if not allow_tangent and normal_coords(a, b).is_zero():
        raise TangentDirection("B is tangent to X8; the cokernel is not an R-bundle")
    return _phi_entries(a, b)


def _binary_roots(f: BinaryForm) -> list[ProjectivePoint]:
    """Zeros of a binary quadric that are defined over its field (empty if f = 0)."""
    field = f.field
    c11, c12, c22 = f.coefficient((2, 0)), f.coefficient((1, 1)), f.coefficient((0, 2))
    if f.is_zero():
        return []
    if not c11:
        # u2 * (c12*u1 + c22*u2)
        roots = {ProjectivePoint((field.one, field.zero))}
        if c12:
            roots.add(ProjectivePoint((-c22, c12)))
        return sorted(roots, key=str)
    disc = c12 * c12 - 4 * c11 * c22
    r = sqrt(disc)
    if r is None:
        return []
    # u1/u2 = (-c12 +- r) / (2 c11)
    return sorted({ProjectivePoint(((-c12 + s) / (2 * c11), field.one)) for s in (r, -r)}, key=str)


def classify_boundary(f: BinaryForm) -> BoundaryClass:
    if f.is_zero():
        return BoundaryClass.WHOLE_LINE
    c11, c12, c22 = f.coefficient((2, 0)), f.coefficient((1, 1)), f.coefficient((0, 2))
    if c12 * c12 - 4 * c11 * c22:
        return BoundaryClass.TWO_POINTS
    return BoundaryClass.ONE_POINT


def conic_matrix(c1: FormU) -> Matrix:
    """Twice the symmetric Gram matrix of a ternary quadric."""
    c = c1.coefficient
    return Matrix.from_rows(c1.field, [
        [2 * c(U2), c(U0U1), c(U0U2)],
        [c(U0U1), 2 * c(U1_2), c(U1U2)],
        [c(U0U2), c(U1U2), 2 * c(U2_2)],
    ])


def classify_conic(c1: FormU) -> ConicClass:
    if c1.is_zero():
        raise DegenerateConic("the conic is identically zero")
    if c1.field.characteristic == 2:
        raise ValueError("conic classification needs odd characteristic")
    return {3: ConicClass.SMOOTH, 2: ConicClass.TWO_LINES, 1: ConicClass.DOUBLE_LINE}[rank(conic_matrix(c1))]


@dataclass(frozen=True)
class SupportReport:
    c0: D0Form
    c1: FormU
    boundary: BinaryForm
    boundary_class: BoundaryClass
    boundary_roots: tuple
    conic_class: ConicClass
    contains_L: bool
    q: ProjectivePoint


def _first_column_zero(phi: PhiMatrix) -> ProjectivePoint:
    l1, l2 = phi.on_D1()[:2]
    v = _cross(l1.coeff_vector(1), l2.coeff_vector(1))
    if not any(v):
        raise ValueError("first column of Phi is dependent on D1")
    return ProjectivePoint(v)


def support_report(phi: PhiMatrix) -> SupportReport:
    r11, r21, r12, r22 = phi.restrict("D0")
    c0 = r11 * r22 - r21 * r12
    s11, s21, s12, s22 = phi.on_D1()
    c1 = s11 * s22 - s21 * s12
    boundary = c0.to_line()
    return SupportReport(
        c0=c0,
        c1=c1,
        boundary=boundary,
        boundary_class=classify_boundary(boundary),
        boundary_roots=tuple(_binary_roots(boundary)),
        conic_class=classify_conic(c1),
        contains_L=all(e[0] > 0 for e in c1.terms),
        q=_first_column_zero(phi),
    )


def singular_locus_D1(phi: PhiMatrix) -> list[ProjectivePoint]:
    """Points of D1 where all four entries of Phi vanish: q, when the second column vanishes there."""
    q = _first_column_zero(phi)
    _, _, m12, m22 = phi.on_D1()
    if m12.evaluate(q.coords) or m22.evaluate(q.coords):
        return []
    return [q]


@dataclass(frozen=True)
class AutomorphismL:
    """The automorphism of D(p) given by u0 -> alpha*u0, u1 -> u1 + beta*u0,
    u2 -> u2 + gamma*u0, fixing x.  It is the identity on D0 and on L."""

    alpha: object
    beta: object
    gamma: object

    def __post_init__(self):
        if not self.alpha:
            raise ValueError("alpha must be nonzero")

    @classmethod
    def identity(cls, field):
        return cls(field.one, field.zero, field.zero)

    @property
    def field(self):
        from .fields import field_of

        return field_of(self.alpha)

    def _u_images(self, u0, u1, u2):
        return (u0 * self.alpha, u1 + u0 * self.beta, u2 + u0 * self.gamma)

    def pullback(self, f):
        """phi^* f for a BigradedForm, a FormU or a PhiMatrix."""
        if isinstance(f, PhiMatrix):
            return PhiMatrix(*(self.pullback(e) for e in f.entries()))
        if isinstance(f, BigradedForm):
            v = dp_vars(f.field)
            return f.substitute(v[:3] + self._u_images(*v[3:]), BigradedForm)
        if isinstance(f, FormU):
            return f.substitute(self._u_images(*u_vars(f.field)), FormU)
        raise TypeError(f"cannot pull back {type(f).__name__}")

    def then(self, other: AutomorphismL) -> AutomorphismL:
        """The automorphism whose pullback is ``other.pullback(self.pullback(f))``."""
        return AutomorphismL(
            self.alpha * other.alpha,
            self.beta * other.alpha + other.beta,
            self.gamma * other.alpha + other.gamma,
        )

    def inverse(self) -> AutomorphismL:
        inv = 1 / self.alpha
        return AutomorphismL(inv, -self.beta * inv, -self.gamma * inv)

    def on_point(self, point) -> ProjectivePoint:
        """Image of a point of D1 under the underlying map (u -> N u)."""
        u0, u1, u2 = point
        return ProjectivePoint((self.alpha * u0, u1 + self.beta * u0, u2 + self.gamma * u0))

    def is_identity(self) -> bool:
        return self.alpha == 1 and not self.beta and not self.gamma

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma)


def clear_y1(a: SheafMatrix) -> tuple[SheafMatrix, GroupElement]:
    """Column operation col2 - y1*col1 making a01 = a11 = a12 = 0."""
    field = a.field
    y1 = SpecialCoefficients.of(a).splitting(field)[0]
    gh = GroupElement(Matrix.identity(field, 2), field.one, field.one, y1)
    return gh.act(a), gh


def equivalent(a: SheafMatrix, b1: Direction, b2: Direction):
    """(alpha, phi) with phi^* Phi(A, B1) = Phi(A, B2) when n(B2) = alpha*n(B1), else None."""
    require_special(a)
    n1, n2 = normal_coords(a, b1), normal_coords(a, b2)
    if n1.is_zero() or n2.is_zero():
        raise TangentDirection("both directions must be normal to X8")
    alpha = n2.ratio_to(n1)
    if alpha is None:
        return None
    a0, gh = clear_y1(a)
    d1, d2 = gh.act(b1), gh.act(b2)
    phi = AutomorphismL(alpha, d2.xi0 - alpha * d1.xi0, d2.eta0 - alpha * d1.eta0)
    if phi.pullback(build_phi(a0, d1)) != build_phi(a0, d2):
        raise ArithmeticError("witness automorphism does not identify the two resolutions")
    return alpha, phi


@dataclass
class OrbitReport:
    stabilizer_class: StabilizerClass
    case: str
    stabilizer_generators: list
    orbit_description: str
    dimension: int
    sample_elements: list = dc_field(default_factory=list)
    center: ProjectivePoint | None = None
    p_B: ProjectivePoint | None = None
    stabilizer_size: int | None = None
    orbit_sizes: list | None = None
    _params: dict = dc_field(default_factory=dict, repr=False)

    @property
    def orbit_count(self):
        return None if self.orbit_sizes is None else len(self.orbit_sizes)

    def members(self, field):
        """All stabilizer elements over a finite field, from the solved equations."""
        kind = self._params["kind"]
        nonzero = field.nonzero_elements()
        els = field.elements()
        if kind == "finite":
            return list(self._params["elements"])
        if kind == "scaling":
            b, g = self._params["bg"]
            return [AutomorphismL(a, (a - 1) * b, (a - 1) * g) for a in nonzero]
        if kind == "tangent":
            s, t, rho, kappa = self._params["stk"]
            alphas = nonzero if self._params["all_alpha"] else [field.one, -field.one]
            return [AutomorphismL(a, be, ga) for a in alphas for be, ga in _line_points(
                s, t, -(a - 1) * rho / (2 * kappa), els)]
        if kind == "containsL":
            c00, c01, c02 = self._params["c"]
            out = []
            for a in nonzero:
                if c01 or c02:
                    pts = _line_points(c01, c02, c00 - a * c00, els)
                else:
                    pts = list(product(els, els))
                out.extend(AutomorphismL(a, be, ga) for be, ga in pts)
            return out
        raise AssertionError(kind)


def _line_points(s, t, sigma, els):
    """All (beta, gamma) with s*beta + t*gamma = sigma, (s, t) != (0, 0)."""
    if s:
        return [((sigma - t * g) / s, g) for g in els]
    return [(b, sigma / t) for b in els]


def predicted_stabilizer_size(report: OrbitReport, p: int) -> int:
    """Number of F_p-points of the stabilizer, from the case analysis alone."""
    kind = report._params["kind"]
    if kind == "finite":
        return len(report._params["elements"])
    if kind == "scaling":
        return p - 1
    if kind == "tangent":
        return (p - 1) * p if report._params["all_alpha"] else 2 * p
    c00, c01, c02 = report._params["c"]
    return (p - 1) * p if (c01 or c02) else (p - 1) * p * p


def _quad(c11, c12, c22, b, g):
    return c11 * b * b + c12 * b * g + c22 * g * g


def stabilizer_orbits(c1: FormU, boundary: BinaryForm | None = None) -> OrbitReport:
    """Stabilizer of the conic C1 in the group of automorphisms fixing L, by elimination.

    Pulling back along (alpha, beta, gamma) fixes the u1^2, u1u2, u2^2
    coefficients and changes the others to

        u0u1: alpha*c01 + 2*beta*c11 + gamma*c12
        u0u2: alpha*c02 + beta*c12 + 2*gamma*c22
        u0^2: alpha^2*c00 + alpha*beta*c01 + alpha*gamma*c02 + Q(beta, gamma)

    where Q = c11*u1^2 + c12*u1*u2 + c22*u2^2 is the restriction to L.
    """
    if c1.is_zero():
        raise DegenerateConic("the conic is identically zero")
    field = c1.field
    if field.characteristic == 2:
        raise ValueError("stabilizer computation needs odd characteristic")
    if boundary is not None and u_form_to_line(c1) != boundary:
        raise ValueError("boundary data does not match the conic on L")
    one, zero = field.one, field.zero
    ident = AutomorphismL(one, zero, zero)
    c = c1.coefficient
    c00, c01, c02 = c(U2), c(U0U1), c(U0U2)
    c11, c12, c22 = c(U1_2), c(U1U2), c(U2_2)

    if not (c11 or c12 or c22):
        p_b = ProjectivePoint((zero, c02, -c01)) if (c01 or c02) else None
        samples = []
        if c01 or c02:
            # alpha = -1: beta*c01 + gamma*c02 = 2*c00
            sb, sg = _line_points(c01, c02, 2 * c00, [zero])[0]
            samples.append(AutomorphismL(-one, sb, sg))
            desc = ("C1 = L + L1; the stabilizer (dimension 2) acts transitively on L1 minus L and "
                    "the vertex; one class per intersection point p_B")
        else:
            desc = "C1 = 2L; every automorphism fixing L preserves it"
        report = OrbitReport(
            StabilizerClass.CONTAINS_L_TRANSITIVE, "contains-L", [], desc,
            dimension=2 if (c01 or c02) else 3, sample_elements=samples, p_B=p_b,
            _params={"kind": "containsL", "c": (c00, c01, c02)},
        )
        return _finish(report, c1)

    disc = c12 * c12 - 4 * c11 * c22
    if disc:
        # (beta, gamma) = (alpha - 1) * (b, g) with M (b, g) = -(c01, c02)
        det_m = 4 * c11 * c22 - c12 * c12
        b = -(2 * c22 * c01 - c12 * c02) / det_m
        g = -(2 * c11 * c02 - c12 * c01) / det_m
        center = ProjectivePoint((one, b, g))
        if c00 != _quad(c11, c12, c22, b, g):
            gen = AutomorphismL(-one, -2 * b, -2 * g)
            report = OrbitReport(
                StabilizerClass.ORDER_TWO, "smooth-transverse", [gen],
                "two elements: identity and the central symmetry about the pole of L; "
                "orbits on C1 minus L have two points",
                dimension=0, center=center, _params={"kind": "finite", "elements": [ident, gen]},
            )
        else:
            report = OrbitReport(
                StabilizerClass.MULTIPLICATIVE_GROUP, "two-lines-transverse", [],
                "isomorphic to k*, scaling about the vertex; two orbits, one per line minus the vertex",
                dimension=1, center=center,
                sample_elements=[AutomorphismL(-one, -2 * b, -2 * g)],
                _params={"kind": "scaling", "bg": (b, g)},
            )
        return _finish(report, c1)

    # Q = kappa*(s*u1 + t*u2)^2
    if c11:
        kappa, s, t = c11, one, c12 / (2 * c11)
    else:
        kappa, s, t = c22, zero, one
    r = c01 * t - c02 * s
    if r:
        report = OrbitReport(
            StabilizerClass.TRIVIAL, "smooth-tangent", [],
            "trivial stabilizer; every point of C1 minus L is its own orbit",
            dimension=0, _params={"kind": "finite", "elements": [ident]},
        )
        return _finish(report, c1)
    rho = c01 / s if s else c02 / t
    tangent_point = ProjectivePoint((zero, t, -s))
    all_alpha = c00 == rho * rho / (4 * kappa)
    sigma = -(-one - 1) * rho / (2 * kappa)
    sb, sg = _line_points(s, t, sigma, [zero])[0]
    report = OrbitReport(
        StabilizerClass.CONTAINS_L_TRANSITIVE,
        "double-line" if all_alpha else "singular-tangent",
        [],
        ("C1 is a double line; the stabilizer has dimension 2" if all_alpha else
         "two lines meeting on L; a one-dimensional group (alpha = +-1 times a translation) "
         "acting transitively on C1 minus L"),
        dimension=2 if all_alpha else 1,
        sample_elements=[AutomorphismL(-one, sb, sg)],
        p_B=tangent_point,
        _params={"kind": "tangent", "stk": (s, t, rho, kappa), "all_alpha": all_alpha},
    )
    return _finish(report, c1)


def _finish(report: OrbitReport, c1: FormU) -> OrbitReport:
    field = c1.field
    if field.characteristic == 0:
        return report
    members = report.members(field)
    report.stabilizer_size = len(members)
    report.orbit_sizes = sorted(len(o) for o in _orbits(c1, members))
    return report


def nonsingular_affine_points(c1: FormU) -> list[ProjectivePoint]:
    """F_p-points of C1 with u0 = 1 where the gradient of c1 does not vanish."""
    field = c1.field
    grads = [_derivative(c1, i) for i in range(3)]
    out = []
    for a, b in product(field.elements(), repeat=2):
        pt = (field.one, a, b)
        if not c1.evaluate(pt) and any(g.evaluate(pt) for g in grads):
            out.append(ProjectivePoint(pt))
    return out


def _derivative(f: FormU, i: int) -> FormU:
    terms = []
    for e, cf in f.terms.items():
        if e[i]:
            e2 = list(e)
            e2[i] -= 1
            terms.append((tuple(e2), cf * e[i]))
    return FormU(f.field, 3, terms)


def _orbits(c1: FormU, members) -> list[set]:
    pts = nonsingular_affine_points(c1)
    remaining = set(pts)
    orbits = []
    while remaining:
        p0 = remaining.pop()
        orbit = {p0} | {m.on_point(p0.coords) for m in members}
        remaining -= orbit
        orbits.append(orbit)
    return orbits
