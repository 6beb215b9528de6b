"""Command-line interface.

Input documents are JSON::

    {"field": "Q" | {"Fp": p},
     "A":  {"z1": [3], "z2": [3], "q1": [6], "q2": [6]},
     "B":  {"l1": [3], "l2": [3], "c1": [6], "c2": [6]},      (optional)
     "B2": {...}}                                            (optional)

Linear coefficients are in the order [x0, x1, x2], quadratic ones in the
order [x0^2, x0x1, x0x2, x1^2, x1x2, x2^2].  Rationals may be given as ints
or as strings "num/den"; output uses strings for Q and ints for F_p.

Exit codes: 0 success, 1 malformed input, 2 failed mathematical
precondition, 3 oracle failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import corpus
from .errors import NotInX, PreconditionError
from .fields import GF, QQ, field_from_tag
from .hilbert import (
    chi_additivity_H,
    chi_additivity_HF,
    chi_line_bundle,
    flat_family_probes,
    h0_line_bundle,
    hilbert_function_coker,
    restriction_hilbert_polys,
)
from .moduli import Direction, SheafMatrix, is_in_X, is_in_X8, quotient_invariants, tangent_and_normal, to_special_form
from .rbundle import build_phi, equivalent, stabilizer_orbits, support_report
from .verify import ORACLES, SweepConfig, ff_stabilizer_count, run_sweeps

COHOMOLOGY_TWISTS = ((0, -2), (-1, 0), (0, -1), (0, 0), (1, -1), (-1, 1), (1, 0), (0, 1), (-1, -1), (1, 1), (1, 2))

A_KEYS = (("z1", 3), ("z2", 3), ("q1", 6), ("q2", 6))
B_KEYS = (("l1", 3), ("l2", 3), ("c1", 6), ("c2", 6))


class MalformedInput(ValueError):
    pass


@dataclass
class InputDocument:
    field: object
    A: SheafMatrix
    B: Direction | None = None
    B2: Direction | None = None


def _scalar(field, value, where: str):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise MalformedInput(f"{where}: expected an integer or a \"num/den\" string, got {value!r}")
    try:
        return field(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"{where}: {exc}") from None


def _parse_block(field, doc, name: str, keys, cls):
    block = doc.get(name)
    if not isinstance(block, dict):
        raise MalformedInput(f"{name}: expected an object with keys {[k for k, _ in keys]}")
    extra = set(block) - {k for k, _ in keys}
    if extra:
        raise MalformedInput(f"{name}: unknown keys {sorted(extra)}")
    coeffs = []
    for key, length in keys:
        arr = block.get(key)
        if not isinstance(arr, list) or len(arr) != length:
            raise MalformedInput(f"{name}.{key}: expected an array of length {length}")
        coeffs.append([_scalar(field, v, f"{name}.{key}[{i}]") for i, v in enumerate(arr)])
    return cls.from_coeffs(field, *coeffs)


def parse_input(doc) -> InputDocument:
    if not isinstance(doc, dict):
        raise MalformedInput("document: expected a JSON object")
    extra = set(doc) - {"field", "A", "B", "B2", "name"}
    if extra:
        raise MalformedInput(f"document: unknown keys {sorted(extra)}")
    try:
        field = field_from_tag(doc.get("field", "Q"))
    except ValueError as exc:
        raise MalformedInput(f"field: {exc}") from None
    out = InputDocument(field, _parse_block(field, doc, "A", A_KEYS, SheafMatrix))
    for name in ("B", "B2"):
        if name in doc:
            setattr(out, name, _parse_block(field, doc, name, B_KEYS, Direction))
    return out


def _coeff_block(m, keys, field) -> dict:
    v = [field.to_json(c) for c in m.to_vector()]
    out, i = {}, 0
    for key, length in keys:
        out[key] = v[i:i + length]
        i += length
    return out


def serialize_input(doc: InputDocument) -> dict:
    out = {"field": doc.field.tag(), "A": _coeff_block(doc.A, A_KEYS, doc.field)}
    for name in ("B", "B2"):
        d = getattr(doc, name)
        if d is not None:
            out[name] = _coeff_block(d, B_KEYS, doc.field)
    return out


def _s(field, x):
    return field.to_json(x)


def _point(field, p) -> list:
    return [_s(field, c) for c in p]


def _matrix_rows(field, m) -> list:
    return [[_s(field, c) for c in row] for row in m.entries]


def _special_report(a: SheafMatrix):
    special, cert = to_special_form(a)
    field = a.field
    g = cert.group
    return special, cert, {
        "matrix": [[str(special.z1), str(special.q1)], [str(special.z2), str(special.q2)]],
        "coefficients": _coeff_block(special, A_KEYS, field),
        "certificate": {
            "chart": _matrix_rows(field, cert.chart),
            "g": _matrix_rows(field, g.g),
            "lambda": _s(field, g.lam),
            "mu": _s(field, g.mu),
            "z": str(g.z),
            "identity": cert.is_identity(),
        },
    }


def support_json(field, rep) -> dict:
    return {
        "c0": str(rep.c0),
        "c1": str(rep.c1),
        "boundary": str(rep.boundary),
        "boundary_class": rep.boundary_class.value,
        "boundary_roots": [_point(field, r) for r in rep.boundary_roots],
        "conic_class": rep.conic_class.value,
        "contains_L": rep.contains_L,
        "q": _point(field, rep.q),
    }


def orbit_json(field, rep) -> dict:
    aut = lambda m: [_s(field, c) for c in m.as_tuple()]  # noqa: E731
    return {
        "stabilizer_class": rep.stabilizer_class.value,
        "case": rep.case,
        "dimension": rep.dimension,
        "generators": [aut(m) for m in rep.stabilizer_generators],
        "sample_elements": [aut(m) for m in rep.sample_elements],
        "description": rep.orbit_description,
        "center": _point(field, rep.center) if rep.center else None,
        "p_B": _point(field, rep.p_B) if rep.p_B else None,
        "stabilizer_size": rep.stabilizer_size,
        "orbit_sizes": rep.orbit_sizes,
    }


def cmd_analyze(doc: InputDocument) -> dict:
    field, a = doc.field, doc.A
    out: dict = {"input": serialize_input(doc), "in_X": is_in_X(a)}
    if not out["in_X"]:
        raise NotInX("z1, z2 are dependent or det A vanishes identically")
    out["in_X8"] = is_in_X8(a)
    det, p = quotient_invariants(a)
    out["det"] = str(det)
    out["p"] = _point(field, p)
    special, cert, out["special_form"] = _special_report(a)
    b = cert.apply(doc.B) if doc.B is not None else Direction.named(field, xi00=1)
    out["direction_in_special_chart"] = _coeff_block(b, B_KEYS, field)
    out["direction_defaulted"] = doc.B is None
    tangent, n = tangent_and_normal(special, b)
    out["normal_coords"] = [_s(field, n.n1), _s(field, n.n2)]
    out["is_tangent"] = tangent
    phi = build_phi(special, b)
    out["phi"] = [[str(phi.e11), str(phi.e12)], [str(phi.e21), str(phi.e22)]]
    rep = support_report(phi)
    out["support"] = support_json(field, rep)
    if field.characteristic != 2:
        out["stabilizer"] = orbit_json(field, stabilizer_orbits(rep.c1))
    d0, d1 = restriction_hilbert_polys(phi)
    out["hilbert"] = {"D0": str(d0), "D1": str(d1), "h0": hilbert_function_coker(phi, 0, 0)}
    return out


def cmd_equiv(doc: InputDocument) -> dict:
    if doc.B is None or doc.B2 is None:
        raise MalformedInput("B, B2: the equiv command needs both directions")
    field = doc.field
    special, cert = to_special_form(doc.A)
    b1, b2 = cert.apply(doc.B), cert.apply(doc.B2)
    res = equivalent(special, b1, b2)
    out = {
        "input": serialize_input(doc),
        "normal_coords": {
            "B": [_s(field, c) for c in tangent_and_normal(special, b1)[1]],
            "B2": [_s(field, c) for c in tangent_and_normal(special, b2)[1]],
        },
        "equivalent": res is not None,
    }
    if res is not None:
        alpha, phi = res
        out["alpha"] = _s(field, alpha)
        out["witness"] = {"alpha": _s(field, phi.alpha), "beta": _s(field, phi.beta), "gamma": _s(field, phi.gamma)}
        out["witness_verified"] = True
    return out


def cmd_hilbert(doc: InputDocument, max_m: int) -> dict:
    field = doc.field
    special, cert = to_special_form(doc.A)
    b = cert.apply(doc.B) if doc.B is not None else Direction.named(field, xi00=1)
    phi = build_phi(special, b)
    d0, d1 = restriction_hilbert_polys(phi)
    probes = flat_family_probes(special, b, [1, 2, -1])
    return {
        "input": serialize_input(doc),
        "coker_HF": {str(m): hilbert_function_coker(phi, m, m) for m in range(max_m + 1)},
        "restriction": {"D0": str(d0), "D1": str(d1)},
        "chi_additivity": {"H": str(chi_additivity_H()), "H+F": str(chi_additivity_HF())},
        "flat_family": [
            {"t": _s(field, pr.t), "dims": list(pr.dims), "poly": str(pr.poly)} for pr in probes
        ],
    }


def cmd_cohomology_table() -> dict:
    rows = []
    for a, b in COHOMOLOGY_TWISTS:
        chi = chi_line_bundle(a, b)
        h0 = h0_line_bundle(a, b)
        rows.append({"a": a, "b": b, "chi": str(chi), "h0": h0, "h0_equals_chi": Fraction(h0) == chi})
    return {"twists": rows, "all_match": all(r["h0_equals_chi"] for r in rows)}


def cmd_examples(p: int = 7) -> dict:
    rows = []
    for e in corpus.EXAMPLES:
        a = e.matrix()
        dirs = []
        for kw in corpus.DEFAULT_DIRECTIONS:
            phi = build_phi(a, Direction.named(QQ, **kw))
            rep = support_report(phi)
            d0, d1 = restriction_hilbert_polys(phi)
            dirs.append({"B": kw, "c1": str(rep.c1), "conic_class": rep.conic_class.value,
                         "contains_L": rep.contains_L, "D0": str(d0), "D1": str(d1)})
        rep = support_report(build_phi(a, Direction.named(QQ, **corpus.DEFAULT_DIRECTIONS[0])))
        rows.append({
            "name": e.name,
            "det": str(a.det()),
            "boundary": str(rep.boundary),
            "boundary_class": rep.boundary_class.value,
            "expected_boundary_class": e.boundary_class,
            "directions": dirs,
        })
    stab = []
    for case in corpus.STABILIZER_CASES:
        a = corpus.example(case.example).matrix()
        c1 = support_report(build_phi(a, Direction.named(QQ, **case.direction))).c1
        count, _ = ff_stabilizer_count(c1.map_coeffs(GF(p)), p)
        stab.append({
            "name": case.name,
            "example": case.example,
            "c1": str(c1),
            "stabilizer_class": stabilizer_orbits(c1).stabilizer_class.value,
            f"F{p}_count": count,
        })
    return {"examples": rows, "stabilizers": stab}


def cmd_verify(prime: int, samples: int, seed: int, oracle: str) -> tuple[dict, bool]:
    oracles = ORACLES if oracle == "all" else (oracle,)
    cfg = SweepConfig(prime, samples, seed, oracles)
    reports = run_sweeps(cfg)
    return {"config": {"prime": prime, "samples": samples, "seed": seed, "oracles": list(oracles)},
            "reports": [r.to_dict() for r in reports]}, all(r.ok for r in reports)


def _summary(cmd: str, out: dict) -> str:
    if cmd == "analyze":
        s = out["support"]
        return (f"in X8: {out['in_X8']}; n = {out['normal_coords']}; boundary {s['boundary']} "
                f"({s['boundary_class']}); C1: {s['c1']} ({s['conic_class']}); q = {s['q']}")
    if cmd == "equiv":
        return f"equivalent: {out['equivalent']}" + (f", alpha = {out['alpha']}" if out["equivalent"] else "")
    if cmd == "examples":
        lines = [f"{r['name']:<28}{r['boundary_class']:<12}{r['boundary']}" for r in out["examples"]]
        lines += [f"{s['name']:<28}{s['stabilizer_class']:<22}{s['c1']}" for s in out["stabilizers"]]
        return "\n".join(lines)
    if cmd == "verify":
        return "\n".join(f"{r['name']}: {r['passes']} passed, {r['failures']} failed" for r in out["reports"])
    if cmd == "cohomology-table":
        return "\n".join(f"({r['a']},{r['b']}): chi={r['chi']} h0={r['h0']}" for r in out["twists"])
    return json.dumps(out.get("coker_HF", {}))


def _load(path: str) -> InputDocument:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"file: invalid JSON ({exc})") from None
    return parse_input(doc)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rbundles", description=__doc__.split("\n")[0])
    ap.add_argument("--verbose", action="store_true", help="human-readable summary on stderr")
    sub = ap.add_subparsers(dest="cmd", required=True)
    sub.add_parser("analyze").add_argument("file")
    sub.add_parser("equiv").add_argument("file")
    h = sub.add_parser("hilbert")
    h.add_argument("file")
    h.add_argument("--max-m", type=int, default=3)
    sub.add_parser("cohomology-table")
    v = sub.add_parser("verify")
    v.add_argument("--prime", type=int, default=5)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--oracle", choices=("all",) + ORACLES, default="all")
    e = sub.add_parser("examples")
    e.add_argument("--prime", type=int, default=7, help="prime for the stabilizer counts")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    ok = True
    try:
        if args.cmd == "analyze":
            out = cmd_analyze(_load(args.file))
        elif args.cmd == "equiv":
            out = cmd_equiv(_load(args.file))
        elif args.cmd == "hilbert":
            out = cmd_hilbert(_load(args.file), args.max_m)
        elif args.cmd == "cohomology-table":
            out = cmd_cohomology_table()
        elif args.cmd == "examples":
            out = cmd_examples(args.prime)
        else:
            try:
                out, ok = cmd_verify(args.prime, args.samples, args.seed, args.oracle)
            except ValueError as exc:
                raise MalformedInput(f"verify: {exc}") from None
    except MalformedInput as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    if args.verbose:
        print(_summary(args.cmd, out), file=sys.stderr)
    return 0 if ok else 3


if __name__ == "__main__":
    sys.exit(main())
