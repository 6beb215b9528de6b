"""Built-in example matrices: one per boundary type of C0 on L, plus stabilizer cases."""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ
from .moduli import Direction, SheafMatrix


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    rows: tuple[str, str, str, str]  # z1, q1, z2, q2 as written row by row
    boundary_class: str
    boundary: str
    description: str

    def matrix(self, field=QQ) -> SheafMatrix:
        return SheafMatrix.parse(field, *self.rows)


EXAMPLES = (
    CorpusEntry("nodal", ("x1", "x2*(x0+x2)", "x2", "x1*x0"), "TwoPoints", "u1^2 - u2^2",
                "irreducible cubic with an ordinary double point"),
    CorpusEntry("cusp", ("x1", "x2^2", "x2", "x1*x0"), "OnePoint", "u1^2",
                "cuspidal cubic"),
    CorpusEntry("three-lines-through-point", ("x1", "0", "x2", "x2*(x1+x2)"), "WholeLine", "0",
                "three concurrent lines"),
    CorpusEntry("line-and-double-line", ("x1", "0", "x2", "x2^2"), "WholeLine", "0",
                "a line and a double line through p"),
    CorpusEntry("triple-line", ("x1", "0", "x2", "x1^2"), "WholeLine", "0",
                "a triple line through p"),
    CorpusEntry("tangent-line-conic", ("x1", "x0*x2", "x2", "x1*x2"), "OnePoint", "-u2^2",
                "a line tangent to a smooth conic at p"),
    CorpusEntry("double-line", ("x1", "0", "x2", "x0*x1"), "OnePoint", "u1^2",
                "p on the double component of a line plus double line"),
    CorpusEntry("simple-three-lines", ("x1", "0", "x2", "x2*x0"), "TwoPoints", "u1*u2",
                "three lines with simple intersections"),
    CorpusEntry("line-plus-conic", ("x1", "x0*x1", "x2", "x1^2"), "TwoPoints", "-u1*u2",
                "a line meeting a smooth conic transversally at p"),
)

# Two normal directions used for every example: n = (1, 0) and n = (0, 1).
DEFAULT_DIRECTIONS = ({"xi00": 1}, {"eta00": 1})


@dataclass(frozen=True)
class StabilizerCase:
    name: str
    example: str
    direction: dict
    stabilizer_class: str
    conic: str
    f7_count: int


STABILIZER_CASES = (
    StabilizerCase("smooth-transverse", "nodal", {"xi00": 1}, "OrderTwo", "u1^2 - u2^2 - u0*u2", 2),
    StabilizerCase("two-lines-transverse", "nodal", {"xi0": 1, "eta0": -1, "xi00": 1, "eta00": -1},
                   "MultiplicativeGroup", "u1^2 - u2^2", 6),
    StabilizerCase("smooth-tangent", "cusp", {"xi00": 1}, "Trivial", "u1^2 - u0*u2", 1),
    StabilizerCase("singular-tangent", "cusp", {"eta00": 1}, "ContainsLTransitive", "u1^2 + u0*u1", 14),
    StabilizerCase("contains-L", "three-lines-through-point", {"xi00": 1}, "ContainsLTransitive",
                   "-u0*u2", 42),
)


def example(name: str) -> CorpusEntry:
    for e in EXAMPLES:
        if e.name == name:
            return e
    raise KeyError(name)


def direction(kw: dict, field=QQ) -> Direction:
    return Direction.named(field, **kw)
