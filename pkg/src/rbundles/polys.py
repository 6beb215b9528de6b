"""Sparse multivariate polynomials over an exact field.

A :class:`Poly` is a mapping from exponent tuples to nonzero coefficients.
Subclasses may override :meth:`Poly._normalize_monomial` to work in a
quotient ring whose ideal is spanned by monomials and binomial rewrites;
every arithmetic result is routed through it.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

X_NAMES = ("x0", "x1", "x2")
U_NAMES = ("u0", "u1", "u2")


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples of the given total degree, in lex order with x0 > x1 > ... .

    For three variables this gives [x0, x1, x2] in degree 1 and
    [x0^2, x0x1, x0x2, x1^2, x1x2, x2^2] in degree 2.
    """
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


class Poly:
    __slots__ = ("field", "nvars", "terms")

    names: tuple[str, ...] | None = None

    def __init__(self, field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        acc: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exps, c in items:
                exps = self._normalize_monomial(tuple(exps))
                if exps is None:
                    continue
                c = field(c)
                if not c:
                    continue
                if exps in acc:
                    s = acc[exps] + c
                    if s:
                        acc[exps] = s
                    else:
                        del acc[exps]
                else:
                    acc[exps] = c
        self.terms = acc

    def _normalize_monomial(self, exps):
        return exps

    def _new(self, terms) -> Poly:
        return type(self)(self.field, self.nvars, terms)

    @classmethod
    def variable(cls, field, nvars: int, i: int):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): 1})

    @classmethod
    def constant(cls, field, nvars: int, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def from_coeffs(cls, field, nvars: int, degree: int, coeffs):
        basis = monomials(nvars, degree)
        coeffs = list(coeffs)
        if len(coeffs) != len(basis):
            raise ValueError(f"expected {len(basis)} coefficients, got {len(coeffs)}")
        return cls(field, nvars, zip(basis, coeffs))

    def coeff_vector(self, degree: int) -> tuple:
        if any(sum(e) != degree for e in self.terms):
            raise ValueError(f"not homogeneous of degree {degree}")
        return tuple(self.coefficient(e) for e in monomials(self.nvars, degree))

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.field.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if degree is not None:
            return degs <= {degree}
        return len(degs) <= 1

    def _check(self, other):
        if self.nvars != other.nvars or self.field != other.field:
            raise TypeError("incompatible polynomial rings")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = self._new({(0,) * self.nvars: other})
        self._check(other)
        return self._new(list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = self._new({(0,) * self.nvars: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field(other)
            return self._new({e: c * v for e, v in self.terms.items()})
        self._check(other)
        out = []
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return self._new(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        inv = 1 / self.field(scalar)
        return self * inv

    def __pow__(self, n: int):
        out = self._new({(0,) * self.nvars: 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def evaluate(self, point):
        s = self.field.zero
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            s = s + t
        return s

    def substitute(self, images, target=None):
        """Ring homomorphism sending variable i to images[i].

        ``target`` is the class of the result (defaults to the images' class),
        so a substitution may map into a quotient ring.
        """
        if len(images) != self.nvars:
            raise ValueError("wrong number of images")
        ref = images[0]
        cls = target or type(ref)
        one = cls(self.field, ref.nvars, {(0,) * ref.nvars: 1})
        out = cls(self.field, ref.nvars)
        powers: dict = {}
        for e, c in self.terms.items():
            t = one * c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = cls(self.field, ref.nvars, images[i].terms) ** k
                    t = t * powers[key]
            out = out + t
        return out

    def map_coeffs(self, field, fn=None) -> Poly:
        """The same polynomial with coefficients moved to another field."""
        fn = fn or field
        return type(self)(field, self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def sorted_terms(self):
        """Terms by decreasing total degree, then lex-decreasing exponents."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading_coefficient(self):
        st = self.sorted_terms()
        return st[0][1] if st else self.field.zero

    def monic(self):
        """Scaled so the first coefficient in the documented order is 1."""
        lc = self.leading_coefficient()
        return self if not lc else self / lc

    def to_str(self, names=None) -> str:
        names = names or self.names or tuple(f"t{i}" for i in range(self.nvars))
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = str(c)
            if mono:
                if cs == "1":
                    term = mono
                elif cs == "-1":
                    term = "-" + mono
                else:
                    term = f"({cs})*{mono}" if "/" in cs else f"{cs}*{mono}"
            else:
                term = cs
            parts.append(term)
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"{type(self).__name__}({self.to_str()})"


class FormX(Poly):
    """A form in x0, x1, x2."""

    __slots__ = ()
    names = X_NAMES

    def __init__(self, field, nvars: int = 3, terms=None):
        super().__init__(field, nvars, terms)


class FormU(Poly):
    """A form in u0, u1, u2 (coordinates of the plane D1)."""

    __slots__ = ()
    names = U_NAMES

    def __init__(self, field, nvars: int = 3, terms=None):
        super().__init__(field, nvars, terms)


class BinaryForm(Poly):
    """A form in the two coordinates u1, u2 of the line L."""

    __slots__ = ()
    names = ("u1", "u2")

    def __init__(self, field, nvars: int = 2, terms=None):
        super().__init__(field, nvars, terms)


def x_vars(field) -> tuple[FormX, FormX, FormX]:
    return tuple(FormX.variable(field, 3, i) for i in range(3))


def u_vars(field) -> tuple[FormU, FormU, FormU]:
    return tuple(FormU.variable(field, 3, i) for i in range(3))


def linear_form(field, coeffs) -> FormX:
    return FormX.from_coeffs(field, 3, 1, coeffs)


def quadratic_form(field, coeffs) -> FormX:
    return FormX.from_coeffs(field, 3, 2, coeffs)


def parse_form(field, text: str, names=X_NAMES, cls=FormX) -> Poly:
    """Parse a small polynomial expression such as ``"x2*(x0+x2)"``.

    Only ``+ - * ^ ( )``, integer/rational literals and the given variable
    names are accepted.
    """
    import ast

    env_vars = {n: cls.variable(field, len(names), i) for i, n in enumerate(names)}
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a * (1 / field(b))
            if isinstance(node.op, ast.Pow) and isinstance(b, int):
                return a**b
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id in env_vars:
            return env_vars[node.id]
        raise ValueError(f"cannot parse {text!r}")

    out = ev(tree)
    if not isinstance(out, Poly):
        out = cls(field, len(names), {(0,) * len(names): out})
    return out
