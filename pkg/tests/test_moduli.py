import random

import pytest

from rbundles.errors import DependentForms, NotInX, NotInX8, NotSpecialForm
from rbundles.fields import GF, QQ
from rbundles.linalg import Matrix, same_row_space
from rbundles.moduli import (
    Direction,
    GroupElement,
    ProjectivePoint,
    SheafMatrix,
    SpecialCoefficients,
    change_coordinates,
    common_zero,
    group_act,
    is_in_X,
    is_in_X8,
    quotient_invariants,
    tangent_and_normal,
    tangent_basis,
    tangent_system,
    to_special_form,
    x8_jacobian_oracle,
)
from rbundles.polys import linear_form, parse_form
from rbundles.verify import random_direction, random_special, random_tangent


def M(*rows, field=QQ):
    return SheafMatrix.parse(field, *rows)


def random_group_element(field, rng):
    while True:
        g = [[field.random(rng) for _ in range(2)] for _ in range(2)]
        if g[0][0] * g[1][1] - g[0][1] * g[1][0]:
            break
    z = linear_form(field, [field.random(rng) for _ in range(3)])
    return GroupElement.rows(field, g, field.random_nonzero(rng), field.random_nonzero(rng), z)


def random_chart(field, rng):
    while True:
        t = Matrix.from_rows(field, [[field.random(rng) for _ in range(3)] for _ in range(3)])
        if t.det():
            return t


def test_membership_in_X(nodal):
    assert is_in_X(nodal)
    assert not is_in_X(M("x1", "x2^2", "x1", "x0^2"))
    assert not is_in_X(M("x1", "x1*x0", "x2", "x2*x0"))


def test_common_zero():
    assert common_zero(M("x1", "0", "x2", "x0^2")).coords == (1, 0, 0)
    assert common_zero(M("x0", "0", "x1", "x2^2")).coords == (0, 0, 1)
    assert common_zero(M("x0+x1", "0", "x1", "x2^2")).coords == (0, 0, 1)
    with pytest.raises(DependentForms):
        common_zero(M("x1", "0", "2*x1", "x2^2"))


def test_projective_normalization():
    assert ProjectivePoint((0, 2, 4)).coords == (0, 1, 2)
    with pytest.raises(ValueError):
        ProjectivePoint((0, 0, 0))


def test_membership_in_X8(nodal, cusp):
    assert is_in_X8(nodal) and is_in_X8(cusp)
    assert not is_in_X8(M("x1", "x0^2", "x2", "x1*x0"))
    with pytest.raises(NotInX):
        is_in_X8(M("x1", "x1*x0", "x2", "x2*x0"))


def test_group_action_examples(nodal, cusp):
    assert group_act(GroupElement.identity(QQ), nodal) == nodal
    g = GroupElement.rows(QQ, [[2, 0], [0, 1]])
    assert group_act(g, nodal) == M("2*x1", "2*x2*(x0+x2)", "x2", "x1*x0")
    h = GroupElement.rows(QQ, [[1, 0], [0, 1]], z=parse_form(QQ, "x0"))
    assert group_act(h, cusp) == M("x1", "x2^2 - x0*x1", "x2", "x0*x1 - x0*x2")


def test_group_action_scales_det_and_keeps_point():
    rng = random.Random(7)
    for _ in range(20):
        a = random_special(QQ, rng)
        gh = random_group_element(QQ, rng)
        b = gh.act(a)
        assert b.det() == a.det() * (gh.g.det() / (gh.lam * gh.mu))
        assert common_zero(b) == common_zero(a)
        assert gh.inverse().act(b) == a


def test_special_form_nodal_is_fixed(nodal):
    special, cert = to_special_form(nodal)
    assert special == nodal and cert.is_identity()


def test_special_form_row_swap():
    a = M("x2", "x1*(x0+x1)", "x1", "x2^2")
    special, cert = to_special_form(a)
    assert special.is_special()
    assert cert.group.g == Matrix.from_rows(QQ, [[0, 1], [1, 0]])
    s = SpecialCoefficients.of(special)
    assert s.a01 == s.a11 == s.a12 == 0
    assert special == M("x1", "x2^2", "x2", "x0*x1 + x1^2")
    assert cert.undo(special) == a


def test_special_form_moves_point_to_origin():
    a = M("x0", "x1*x2", "x1", "x0*x2 + x1^2")
    assert common_zero(a).coords == (0, 0, 1)
    special, cert = to_special_form(a)
    assert special.is_special()
    assert cert.chart == Matrix.from_rows(QQ, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    assert cert.undo(special) == a


def test_special_form_clears_y1_and_is_idempotent():
    rng = random.Random(11)
    for field in (QQ, GF(7)):
        for _ in range(15):
            a = random_special(field, rng)
            b = change_coordinates(random_group_element(field, rng).act(a), random_chart(field, rng))
            if not is_in_X(b):
                continue
            special, cert = to_special_form(b)
            s = SpecialCoefficients.of(special)
            assert s.a01 == s.a11 == s.a12 == 0
            assert cert.undo(special) == b
            again, cert2 = to_special_form(special)
            assert again == special and cert2.is_identity()


def test_not_in_x8_rejected():
    with pytest.raises(NotInX8):
        to_special_form(M("x1", "x0^2", "x2", "x1*x0"))


def test_splitting_identity():
    rng = random.Random(5)
    for _ in range(10):
        a = random_special(QQ, rng)
        y1, y2, z1, z2 = SpecialCoefficients.of(a).splitting(QQ)
        assert a.q1 == a.z1 * y1 + a.z2 * y2
        assert a.q2 == a.z1 * z1 + a.z2 * z2


def test_tangent_and_normal_examples(cusp, nodal):
    tangent, n = tangent_and_normal(cusp, Direction.named(QQ, xi0=1, eta00=1))
    assert tangent and n.is_zero()
    tangent, n = tangent_and_normal(cusp, Direction.named(QQ, xi00=1))
    assert not tangent and (n.n1, n.n2) == (1, 0)
    tangent, n = tangent_and_normal(nodal, Direction.zero(QQ))
    assert tangent and n.is_zero()
    with pytest.raises(NotSpecialForm):
        tangent_and_normal(M("x2", "x1^2", "x1", "x0*x2"), Direction.zero(QQ))


def test_normal_coords_depend_only_on_class_mod_tangent():
    rng = random.Random(2)
    for _ in range(20):
        a = random_special(QQ, rng)
        b = random_direction(QQ, rng)
        t = random_tangent(a, QQ, rng)
        assert tangent_and_normal(a, b + t)[1] == tangent_and_normal(a, b)[1]


@pytest.mark.parametrize("rows", [
    ("x1", "x2*(x0+x2)", "x2", "x1*x0"),
    ("x1", "x2^2", "x2", "x1*x0"),
    ("x1", "0", "x2", "x2*x0"),
])
def test_jacobian_kernel_is_tangent_space(rows):
    a = M(*rows)
    j = x8_jacobian_oracle(a)
    assert j.rank() == 2
    assert same_row_space(j, tangent_system(a))
    assert len(tangent_basis(a)) == 16


def test_jacobian_by_hand(nodal):
    # df1 = xi00 - a01*xi0 - a02*eta0 with a01 = 0, a02 = 1
    row = x8_jacobian_oracle(nodal).row(0)
    assert row[6] == 1 and row[3] == -1 and sum(1 for c in row if c) == 2


def test_jacobian_at_non_special_points():
    rng = random.Random(9)
    for _ in range(5):
        a = random_special(QQ, rng)
        b = change_coordinates(random_group_element(QQ, rng).act(a), random_chart(QQ, rng))
        if not is_in_X(b):
            continue
        special, cert = to_special_form(b)
        j = x8_jacobian_oracle(b)
        for d in tangent_basis(special):
            assert not any(j @ cert.undo(d).to_vector())


def test_jacobian_over_prime_field():
    rng = random.Random(4)
    for _ in range(10):
        a = random_special(GF(7), rng)
        assert same_row_space(x8_jacobian_oracle(a), tangent_system(a))


def test_quotient_invariants(cusp, three_lines):
    det, p = quotient_invariants(cusp)
    assert str(det) == "x0*x1^2 - x2^3" and p.coords == (1, 0, 0)
    det, _ = quotient_invariants(three_lines)
    assert det == parse_form(QQ, "x1*x2*(x1+x2)")


def test_quotient_invariants_are_orbit_invariant():
    rng = random.Random(13)
    for _ in range(20):
        a = random_special(QQ, rng)
        gh = random_group_element(QQ, rng)
        assert quotient_invariants(gh.act(a)) == quotient_invariants(a)
        assert is_in_X8(gh.act(a))


def test_direction_named_rejects_unknown():
    with pytest.raises(TypeError):
        Direction.named(QQ, zeta=1)
    d = Direction.named(QQ, xi0=1, eta0=2, xi00=3, eta00=4)
    assert (d.xi0, d.eta0, d.xi00, d.eta00) == (1, 2, 3, 4)
    assert Direction.from_vector(QQ, d.to_vector()) == d
