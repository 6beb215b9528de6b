"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

import random

import pytest

from rbundles import cli
from rbundles.corpus import DEFAULT_DIRECTIONS, EXAMPLES, direction, example
from rbundles.dspace import dim_bigraded
from rbundles.fields import QQ
from rbundles.hilbert import (
    HilbertPoly,
    chi_additivity_H,
    chi_additivity_HF,
    chi_line_bundle,
    flat_family_check,
    flat_family_probes,
    h0_line_bundle,
    hilbert_function_coker,
    restriction_hilbert_polys,
)
from rbundles.linalg import same_row_space
from rbundles.moduli import normal_coords, tangent_system, x8_jacobian_oracle
from rbundles.rbundle import build_phi, equivalent, support_report
from rbundles.verify import (
    SweepConfig,
    ff_equivalence_sweep,
    ff_singular_sweep,
    random_normal,
    random_special,
    random_tangent,
)

VANISHING_LIST = [(0, -2), (-1, 0), (0, -1), (0, 0), (1, -1), (-1, 1), (1, 0), (0, 1), (-1, -1), (1, 1), (1, 2)]


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, detail
    return emit


def criterion_1():
    rng = random.Random(101)
    n = 60
    good = sum(same_row_space(x8_jacobian_oracle(a), tangent_system(a))
               for a in (random_special(QQ, rng) for _ in range(n)))
    return good == n, f"{good}/{n} Jacobian kernels equal the tangent system"


def criterion_2():
    sweeps = [ff_singular_sweep(SweepConfig(p=p, samples=200, seed=42)) for p in (5, 7)]
    rng = random.Random(202)
    ident = 0
    for _ in range(50):
        a = random_special(QQ, rng)
        b = random_normal(a, QQ, rng)
        n = normal_coords(a, b)
        if build_phi(a, b).evaluate_D1((QQ.one, -b.xi0, -b.eta0)) == (0, 0, n.n1, n.n2):
            ident += 1
    ok = all(s.ok for s in sweeps) and ident == 50
    detail = ", ".join(f"F{s.p}: {s.failures} failures" for s in sweeps) + f", Q identities {ident}/50"
    return ok, detail


def criterion_3():
    ff = ff_equivalence_sweep(SweepConfig(p=7, samples=100, seed=42))
    qq = ff_equivalence_sweep(SweepConfig(samples=20, seed=42, rational=True))
    w, c = ff.details["witnesses_verified"], ff.details["correct_absences"]
    qw, qc = qq.details["witnesses_verified"], qq.details["correct_absences"]
    ok = (w, c, qw, qc) == (100, 100, 20, 20)
    return ok, f"F7 witnesses {w}/100, absences {c}/100; Q witnesses {qw}/20, absences {qc}/20"


def criterion_4():
    out = cli.cmd_examples(7)
    rows = {r["name"]: r for r in out["examples"]}
    stab = {s["name"]: s for s in out["stabilizers"]}
    expected_boundaries = {
        "nodal": ("u1^2 - u2^2", "TwoPoints"),
        "cusp": ("u1^2", "OnePoint"),
        "three-lines-through-point": ("0", "WholeLine"),
        "tangent-line-conic": ("-u2^2", "OnePoint"),
        "double-line": ("u1^2", "OnePoint"),
        "simple-three-lines": ("u1*u2", "TwoPoints"),
        "line-plus-conic": ("-u1*u2", "TwoPoints"),
    }
    ok = all((rows[k]["boundary"], rows[k]["boundary_class"]) == v for k, v in expected_boundaries.items())
    ok &= all(d["contains_L"] for d in rows["three-lines-through-point"]["directions"])
    ok &= stab["smooth-transverse"]["stabilizer_class"] == "OrderTwo" and stab["smooth-transverse"]["F7_count"] == 2
    ok &= stab["two-lines-transverse"]["stabilizer_class"] == "MultiplicativeGroup"
    ok &= stab["two-lines-transverse"]["F7_count"] == 6
    ok &= stab["smooth-tangent"]["stabilizer_class"] == "Trivial" and stab["smooth-tangent"]["F7_count"] == 1
    counts = {k: (s["stabilizer_class"], s["F7_count"]) for k, s in stab.items()}
    return ok, f"boundaries as expected; stabilizers {counts}"


def criterion_5():
    h0 = [h0_line_bundle(a, b) for a, b in VANISHING_LIST]
    chi = [chi_line_bundle(a, b) for a, b in VANISHING_LIST]
    dims = all(dim_bigraded(a, b) == chi_line_bundle(a, b) for a in range(5) for b in range(5))
    return h0 == chi and dims, f"h0 = {h0}; dim = chi on [0,4]^2: {dims}"


def criterion_6():
    polys = set()
    h0 = set()
    for e in EXAMPLES:
        for kw in DEFAULT_DIRECTIONS:
            phi = build_phi(e.matrix(), direction(kw))
            d0, d1 = restriction_hilbert_polys(phi)
            polys.add((str(d0), str(d1)))
            h0.add(hilbert_function_coker(phi, 0, 0))
    chis = (chi_additivity_H() == HilbertPoly.linear(1, 3), chi_additivity_HF() == HilbertPoly.linear(1, 6))
    ok = polys == {("4m + 1", "2m + 2")} and h0 == {1} and all(chis)
    return ok, f"restrictions {sorted(polys)}, h0 {sorted(h0)}, chi(E(mH)) = {chi_additivity_H()}, " \
               f"chi(E(m(H+F))) = {chi_additivity_HF()}"


def criterion_7():
    ts = [1, 2, -1]
    ok = True
    dims = set()
    for name in ("nodal", "cusp"):
        a = example(name).matrix()
        b = direction(DEFAULT_DIRECTIONS[0])
        ok &= flat_family_check(a, b, ts)
        dims |= {p.dims for p in flat_family_probes(a, b, ts)}
    ok &= dims == {(4, 7, 10, 13)}
    return ok, f"fiber dimensions {sorted(dims)}"


def criterion_8():
    rng = random.Random(808)
    refl = sym = trans = absent = 0
    for _ in range(50):
        a = random_special(QQ, rng)
        b1 = random_normal(a, QQ, rng)
        b2 = b1.scale(QQ.random_nonzero(rng)) + random_tangent(a, QQ, rng)
        b3 = b2.scale(QQ.random_nonzero(rng)) + random_tangent(a, QQ, rng)
        r11 = equivalent(a, b1, b1)
        refl += r11[0] == 1 and r11[1].is_identity()
        (a12, f12), (a21, f21) = equivalent(a, b1, b2), equivalent(a, b2, b1)
        sym += a21 == 1 / a12 and f21 == f12.inverse()
        (a23, f23), (a13, f13) = equivalent(a, b2, b3), equivalent(a, b1, b3)
        trans += a13 == a12 * a23 and f13 == f12.then(f23)
        other = random_normal(a, QQ, rng)
        absent += (equivalent(a, b1, other) is None) == (equivalent(a, other, b1) is None)
    ok = refl == sym == trans == absent == 50
    return ok, f"reflexive {refl}/50, symmetric {sym}/50, transitive {trans}/50, absence symmetric {absent}/50"


CRITERIA = [
    (1, "tangent-space equivalence", criterion_1),
    (2, "local freeness iff normal", criterion_2),
    (3, "equivalence classes match normal directions", criterion_3),
    (4, "example corpus table", criterion_4),
    (5, "cohomology table", criterion_5),
    (6, "Hilbert polynomials", criterion_6),
    (7, "flat family", criterion_7),
    (8, "equivalence relation algebra", criterion_8),
]


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(report, number, title, fn):
    ok, detail = fn()
    report(number, title, ok, detail)


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})")
    raise SystemExit(1 if failed else 0)
