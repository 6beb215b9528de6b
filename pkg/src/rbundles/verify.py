"""Brute-force oracles over small prime fields.

Each sample draws from its own generator seeded by ``f"{seed}-{index}"``,
so a sweep gives the same report whether it runs serially or on a process
pool (worker count from the ``RBUNDLES_WORKERS`` environment variable).
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import product

from .corpus import STABILIZER_CASES, example
from .fields import GF, QQ
from .moduli import Direction, SheafMatrix, is_in_X, normal_coords
from .polys import FormU, linear_form, quadratic_form
from .rbundle import (
    AutomorphismL,
    build_phi,
    clear_y1,
    equivalent,
    predicted_stabilizer_size,
    stabilizer_orbits,
    support_report,
)

ORACLES = ("singular", "equiv", "stabilizer")


@dataclass(frozen=True)
class SweepConfig:
    p: int = 5
    samples: int = 200
    seed: int = 0
    oracles: tuple = ORACLES
    rational: bool = False  # run over Q instead of F_p (equivalence sweep only)

    def __post_init__(self):
        GF(self.p)
        if self.p < 3:
            raise ValueError("p must be an odd prime")
        if self.samples < 1:
            raise ValueError("sample count must be positive")
        bad = set(self.oracles) - set(ORACLES)
        if bad:
            raise ValueError(f"unknown oracles {sorted(bad)}")

    @property
    def field(self):
        return QQ if self.rational else GF(self.p)


@dataclass
class SweepReport:
    name: str
    p: int | None
    samples: int
    passes: int = 0
    failures: int = 0
    first_counterexample: dict | None = None
    details: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name, "p": self.p, "samples": self.samples,
            "passes": self.passes, "failures": self.failures,
            "first_counterexample": self.first_counterexample, "details": self.details,
        }


def sample_rng(seed, index: int) -> random.Random:
    return random.Random(f"{seed}-{index}")


def random_special(field, rng: random.Random) -> SheafMatrix:
    """A uniformly drawn special matrix in X8 (ten coefficients, det != 0)."""
    while True:
        a01, a02, a11, a12, a22, b01, b02, b11, b12, b22 = (field.random(rng) for _ in range(10))
        a = SheafMatrix(
            linear_form(field, (0, 1, 0)),
            linear_form(field, (0, 0, 1)),
            quadratic_form(field, (0, a01, a02, a11, a12, a22)),
            quadratic_form(field, (0, b01, b02, b11, b12, b22)),
        )
        if is_in_X(a):
            return a


def random_direction(field, rng: random.Random) -> Direction:
    return Direction.from_vector(field, [field.random(rng) for _ in range(18)])


def make_tangent(a: SheafMatrix, b: Direction) -> Direction:
    """B with xi00, eta00 replaced so that the tangent system holds."""
    n = normal_coords(a, b)
    return b - Direction.named(a.field, xi00=n.n1, eta00=n.n2)


def random_normal(a, field, rng) -> Direction:
    while True:
        b = random_direction(field, rng)
        if not normal_coords(a, b).is_zero():
            return b


def random_tangent(a, field, rng) -> Direction:
    return make_tangent(a, random_direction(field, rng))


def dp_points(field):
    """All F_p-points of D(p) in P2 x P2 (2p^2 + 2p + 1 of them)."""
    zero, one = field.zero, field.one
    els = field.elements()
    pts = []
    # D1 minus L: x = p, u0 = 1
    for u1, u2 in product(els, repeat=2):
        pts.append(((one, zero, zero), (one, u1, u2)))
    # u0 = 0: x on the line through p in the direction (u1, u2)
    for u in [(zero, one, c) for c in els] + [(zero, zero, one)]:
        for x in [(one, s * u[1], s * u[2]) for s in els] + [(zero, u[1], u[2])]:
            pts.append((x, u))
    return pts


def _phi_zeros(phi, points) -> list:
    out = []
    for x, u in points:
        pt = x + u
        if all(not e.evaluate(pt) for e in phi.entries()):
            out.append((x, u))
    return out


def _singular_sample(args):
    p, seed, index = args
    field = GF(p)
    rng = sample_rng(seed, index)
    a = random_special(field, rng)
    b = random_tangent(a, field, rng) if index % 2 == 0 else random_normal(a, field, rng)
    tangent = normal_coords(a, b).is_zero()
    phi = build_phi(a, b, allow_tangent=True)
    zeros = _phi_zeros(phi, dp_points(field))
    q = _expected_q(phi)
    ok = bool(zeros) == tangent and (not zeros or zeros == [((1, 0, 0), q)])
    return index, ok, tangent, len(zeros), None if ok else {"A": a.rows(), "B": b.rows(), "zeros": len(zeros)}


def _expected_q(phi):
    """The expected unique zero on D1 when B is tangent: q = [1 : -xi0 : -eta0]."""
    e11, e21 = phi.on_D1()[:2]
    xi0, eta0 = e11.coefficient((1, 0, 0)), e21.coefficient((1, 0, 0))
    return (1, -xi0, -eta0)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("RBUNDLES_WORKERS", "1")))
    except ValueError:
        return 1


def _run(fn, args_list):
    n = _workers()
    if n > 1 and len(args_list) > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(fn, args_list, chunksize=max(1, len(args_list) // (4 * n))))
    else:
        results = [fn(a) for a in args_list]
    return sorted(results, key=lambda r: r[0])


def ff_singular_sweep(cfg: SweepConfig) -> SweepReport:
    """Phi(A, B) has a common zero on D(p)(F_p) exactly when B is tangent; the zero is q."""
    results = _run(_singular_sample, [(cfg.p, cfg.seed, i) for i in range(cfg.samples)])
    report = SweepReport("singular", cfg.p, cfg.samples)
    tangent_count = 0
    for index, ok, tangent, _, info in results:
        tangent_count += tangent
        if ok:
            report.passes += 1
        else:
            report.failures += 1
            if report.first_counterexample is None:
                report.first_counterexample = {"index": index, **info}
    report.details = {"tangent_samples": tangent_count, "points_per_sample": 2 * cfg.p ** 2 + 2 * cfg.p + 1}
    return report


def _equiv_sample(args):
    p, rational, seed, index = args
    field = QQ if rational else GF(p)
    rng = sample_rng(seed, index)
    a = random_special(field, rng)
    b1 = random_normal(a, field, rng)
    alpha = field.random_nonzero(rng)
    t = random_tangent(a, field, rng)
    b2 = b1.scale(alpha) + t
    res = equivalent(a, b1, b2)
    ok_pos = res is not None and res[0] == alpha
    if ok_pos:
        phi = res[1]
        ok_pos = (phi.beta == b2.xi0 - alpha * b1.xi0 and phi.gamma == b2.eta0 - alpha * b1.eta0
                  and _pullback_matches(a, b1, b2, phi))
    # a direction whose normal coordinates are not proportional to those of b1
    n1 = normal_coords(a, b1)
    while True:
        b3 = random_normal(a, field, rng)
        n3 = normal_coords(a, b3)
        if n1.n1 * n3.n2 - n1.n2 * n3.n1:
            break
    ok_neg = equivalent(a, b1, b3) is None
    info = None if (ok_pos and ok_neg) else {"A": a.rows(), "B1": b1.rows(), "B2": b2.rows(), "B3": b3.rows()}
    return index, ok_pos, ok_neg, info


def _pullback_matches(a, b1, b2, phi: AutomorphismL) -> bool:
    """Recheck phi^* Phi(A, B1) = Phi(A, B2) entry by entry in the ring of D(p)."""
    a0, gh = clear_y1(a)
    p1, p2 = build_phi(a0, gh.act(b1)), build_phi(a0, gh.act(b2))
    return all(x == y for x, y in zip(phi.pullback(p1).entries(), p2.entries()))


def ff_equivalence_sweep(cfg: SweepConfig) -> SweepReport:
    results = _run(_equiv_sample, [(cfg.p, cfg.rational, cfg.seed, i) for i in range(cfg.samples)])
    report = SweepReport("equiv", None if cfg.rational else cfg.p, cfg.samples)
    witnesses = absences = 0
    for index, ok_pos, ok_neg, info in results:
        witnesses += ok_pos
        absences += ok_neg
        if ok_pos and ok_neg:
            report.passes += 1
        else:
            report.failures += 1
            if report.first_counterexample is None:
                report.first_counterexample = {"index": index, **info}
    report.details = {"witnesses_verified": witnesses, "correct_absences": absences}
    return report


def _proportional(f: FormU, g: FormU) -> bool:
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    e, c = next(iter(g.terms.items()))
    lam = f.coefficient(e) / c
    return bool(lam) and f == g * lam


def ff_stabilizer_count(c1: FormU, p: int) -> tuple[int, list[AutomorphismL]]:
    """All (alpha, beta, gamma) in F_p* x F_p x F_p whose pullback maps c1 to a multiple of itself."""
    field = GF(p)
    c1 = c1.map_coeffs(field) if c1.field != field else c1
    els = field.elements()
    out = []
    for alpha in field.nonzero_elements():
        for beta, gamma in product(els, repeat=2):
            phi = AutomorphismL(alpha, beta, gamma)
            if _proportional(phi.pullback(c1), c1):
                out.append(phi)
    return len(out), out


def _stabilizer_sample(args):
    p, seed, index = args
    field = GF(p)
    rng = sample_rng(seed, index)
    a = random_special(field, rng)
    b = random_normal(a, field, rng)
    c1 = support_report(build_phi(a, b)).c1
    count, elems = ff_stabilizer_count(c1, p)
    report = stabilizer_orbits(c1)
    predicted = set(m.as_tuple() for m in report.members(field))
    ok = count == predicted_stabilizer_size(report, p) and predicted == {e.as_tuple() for e in elems}
    return index, ok, report.case, None if ok else {"c1": str(c1), "count": count, "class": report.case}


def ff_stabilizer_sweep(cfg: SweepConfig) -> SweepReport:
    """Brute-force stabilizer counts against the case analysis, on random conics C1."""
    results = _run(_stabilizer_sample, [(cfg.p, cfg.seed, i) for i in range(cfg.samples)])
    report = SweepReport("stabilizer", cfg.p, cfg.samples)
    cases: dict = {}
    for index, ok, case, info in results:
        cases[case] = cases.get(case, 0) + 1
        if ok:
            report.passes += 1
        else:
            report.failures += 1
            if report.first_counterexample is None:
                report.first_counterexample = {"index": index, **info}
    corpus = {}
    for case in STABILIZER_CASES:
        ok, count = _check_corpus_case(case, cfg.p)
        corpus[case.name] = count
        if not ok:
            report.failures += 1
            if report.first_counterexample is None:
                report.first_counterexample = {"case": case.name, "count": count}
    report.details = {"cases": dict(sorted(cases.items())), "corpus_counts": corpus}
    return report


def _check_corpus_case(case, p: int) -> tuple[bool, int]:
    field = GF(p)
    a = example(case.example).matrix(field)
    c1 = support_report(build_phi(a, Direction.named(field, **case.direction))).c1
    count, elems = ff_stabilizer_count(c1, p)
    report = stabilizer_orbits(c1)
    ok = (
        report.stabilizer_class.value == case.stabilizer_class
        and count == predicted_stabilizer_size(report, p)
        and {m.as_tuple() for m in report.members(field)} == {e.as_tuple() for e in elems}
    )
    return ok, count


def run_sweeps(cfg: SweepConfig) -> list[SweepReport]:
    runners = {"singular": ff_singular_sweep, "equiv": ff_equivalence_sweep, "stabilizer": ff_stabilizer_sweep}
    return [runners[name](cfg) for name in ORACLES if name in cfg.oracles]
