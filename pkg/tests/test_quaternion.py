import math

import pytest
from oracle import BASIS_TABLE, table_conj, table_mul

from quatorb.errors import DomainError
from quatorb.quaternion import (
    BASIS,
    E0,
    E1,
    E2,
    E3,
    P1,
    P2,
    P3,
    PureQuaternion,
    Quaternion,
    UnitQuaternion,
    ZERO,
    conj,
    cross,
    embed,
    im,
    inner,
    inverse,
    mul,
    norm,
    re,
    renormalize,
    rotate,
)


def components(q):
    return q.tolist()


def random_quat(rng, scale=1.0):
    c = rng.standard_normal(4) * scale
    return Quaternion(*c)


def random_pure(rng):
    return PureQuaternion(*rng.standard_normal(3))


def random_unit(rng):
    return renormalize(random_quat(rng))


class TestMul:
    def test_basis_table(self):
        for (i, j), (sign, k) in BASIS_TABLE.items():
            expected = [0.0] * 4
            expected[k] = float(sign)
            assert components(mul(BASIS[i], BASIS[j])) == expected

    def test_identity(self, rng):
        for _ in range(20):
            a = random_quat(rng)
            assert mul(E0, a) == a
            assert mul(a, E0) == a

    def test_e1_times_e2(self):
        assert mul(E1, E2) == E3

    def test_bilinear_expansion(self):
        # (1 + e1)(1 + e2) = 1 + e1 + e2 + e3
        got = mul(Quaternion(1, 1, 0, 0), Quaternion(1, 0, 1, 0))
        assert got == Quaternion(1, 1, 1, 1)

    def test_against_table_oracle_exact(self, rng):
        # integer components keep both routes exact
        for _ in range(200):
            a = [float(v) for v in rng.integers(-9, 10, 4)]
            b = [float(v) for v in rng.integers(-9, 10, 4)]
            expected = table_mul(a, b)
            assert components(mul(Quaternion(*a), Quaternion(*b))) == expected

    def test_associativity(self, rng):
        for _ in range(300):
            a, b, c = (random_quat(rng) for _ in range(3))
            lhs = mul(mul(a, b), c)
            rhs = mul(a, mul(b, c))
            scale = a.norm() * b.norm() * c.norm()
            assert (lhs - rhs).norm() <= 1e-14 * max(scale, 1e-30)

    def test_norm_multiplicative(self, rng):
        for _ in range(300):
            a, b = random_quat(rng), random_quat(rng)
            assert abs(mul(a, b).norm() - a.norm() * b.norm()) \
                <= 1e-12 * max(a.norm() * b.norm(), 1e-30)


class TestConj:
    def test_basis(self):
        assert conj(E0) == E0
        assert conj(E2) == -E2

    def test_definition(self):
        assert conj(Quaternion(1, 2, 3, 4)) == Quaternion(1, -2, -3, -4)

    def test_antihomomorphism(self, rng):
        for _ in range(100):
            a, b = random_quat(rng), random_quat(rng)
            lhs = conj(mul(a, b))
            rhs = mul(conj(b), conj(a))
            assert (lhs - rhs).norm() <= 1e-13 * max(a.norm() * b.norm(), 1.0)

    def test_involution(self, rng):
        a = random_quat(rng)
        assert conj(conj(a)) == a

    def test_oracle(self, rng):
        a = [float(v) for v in rng.integers(-5, 6, 4)]
        assert components(conj(Quaternion(*a))) == table_conj(a)


class TestInner:
    def test_orthonormal_basis(self):
        assert inner(E0, E1) == 0.0
        assert inner(E2, E2) == 1.0

    def test_componentwise(self):
        assert inner(Quaternion(1, 2, 0, 0), Quaternion(3, 1, 0, 0)) == 5.0

    def test_translation_identities(self, rng):
        for _ in range(300):
            a, b, q = (random_quat(rng) for _ in range(3))
            assert abs(inner(a, mul(q, b)) - inner(mul(conj(q), a), b)) <= 1e-12
            assert abs(inner(a, mul(b, q)) - inner(mul(a, conj(q)), b)) <= 1e-12


class TestCross:
    def test_basis(self):
        assert cross(P1, P2) == P3

    def test_self_is_zero(self, rng):
        xi = random_pure(rng)
        assert cross(xi, xi) == PureQuaternion(0, 0, 0)

    def test_bilinearity_example(self):
        assert cross(P1 + P2, P2) == P3

    def test_commutator_relation(self, rng):
        # xi eta - eta xi = 2 xi x eta
        for _ in range(100):
            xi, eta = random_pure(rng), random_pure(rng)
            comm = mul(embed(xi), embed(eta)) - mul(embed(eta), embed(xi))
            expected = embed(2.0 * cross(xi, eta))
            assert (comm - expected).norm() <= 1e-13

    def test_pure_product_decomposition_exact(self, rng):
        # xi eta = -<xi, eta> e0 + xi x eta, exactly in floating point
        for _ in range(300):
            xi, eta = random_pure(rng), random_pure(rng)
            prod = mul(embed(xi), embed(eta))
            assert prod.w == -xi.dot(eta)
            assert im(prod) == cross(xi, eta)


class TestRotate:
    def test_identity_rotation(self, rng):
        xi = random_pure(rng)
        assert rotate(UnitQuaternion(1, 0, 0, 0), xi) == xi

    def test_pi_rotation_about_axis3(self):
        got = rotate(UnitQuaternion(0, 0, 0, 1), P1)
        assert (got - PureQuaternion(-1, 0, 0)).norm() == 0.0

    def test_isometry(self, rng):
        for _ in range(200):
            s, xi = random_unit(rng), random_pure(rng)
            assert abs(rotate(s, xi).norm() - xi.norm()) <= 1e-12

    def test_composition(self, rng):
        for _ in range(200):
            s, sp, xi = random_unit(rng), random_unit(rng), random_pure(rng)
            once = rotate(s, rotate(sp, xi))
            both = rotate(renormalize(mul(s, sp)), xi)
            assert (once - both).norm() <= 1e-12

    def test_rejects_non_unit(self):
        with pytest.raises(DomainError):
            rotate(Quaternion(1, 1, 0, 0), P1)


class TestInverseAndParts:
    def test_unit_pure(self):
        assert inverse(E3) == -E3

    def test_scalar(self):
        assert inverse(2.0 * E0) == 0.5 * E0

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            inverse(ZERO)

    def test_left_right_inverse(self, rng):
        for _ in range(100):
            a = random_quat(rng)
            if a.norm() < 1e-3:
                continue
            assert (mul(a, inverse(a)) - E0).norm() <= 1e-12
            assert (mul(inverse(a), a) - E0).norm() <= 1e-12

    def test_im_re_embed(self):
        a = Quaternion(1, 2, 0, 0)
        assert im(a) == PureQuaternion(2, 0, 0)
        assert re(a) == 1.0
        assert embed(PureQuaternion(2, 0, 0)).w == 0.0
        assert a == re(a) * E0 + embed(im(a))

    def test_norm_function(self):
        assert norm(Quaternion(3, 0, 4, 0)) == 5.0
        assert norm(PureQuaternion(0, 3, 4)) == 5.0


class TestUnitQuaternion:
    def test_accepts_unit(self):
        s = UnitQuaternion(0.5, 0.5, 0.5, 0.5)
        assert abs(s.norm() - 1.0) == 0.0

    def test_rejects_non_unit(self):
        with pytest.raises(DomainError):
            UnitQuaternion(1.0, 1e-5, 0.0, 0.0)

    def test_never_silently_normalizes(self):
        with pytest.raises(DomainError):
            UnitQuaternion(2.0, 0.0, 0.0, 0.0)

    def test_explicit_renormalize(self):
        s = renormalize(Quaternion(2.0, 0.0, 0.0, 0.0))
        assert isinstance(s, UnitQuaternion)
        assert s.w == 1.0

    def test_renormalize_zero_rejected(self):
        with pytest.raises(DomainError):
            renormalize(ZERO)

    def test_inverse_is_conjugate(self, rng):
        s = random_unit(rng)
        assert s.inverse() == UnitQuaternion(s.w, -s.x, -s.y, -s.z)

    def test_is_a_quaternion(self, rng):
        s = random_unit(rng)
        assert isinstance(s, Quaternion)


class TestValidation:
    def test_nan_rejected(self):
        with pytest.raises(DomainError):
            Quaternion(float("nan"), 0, 0, 0)

    def test_inf_rejected(self):
        with pytest.raises(DomainError):
            PureQuaternion(0, float("inf"), 0)

    def test_int_components_coerced(self):
        q = Quaternion(1, 0, 0, 0)
        assert isinstance(q.w, float)


class TestSerialization:
    def test_quaternion_roundtrip(self):
        q = Quaternion(1.5, -2.0, 0.25, 3.0)
        assert q.tolist() == [1.5, -2.0, 0.25, 3.0]
        assert Quaternion.from_sequence(q.tolist()) == q

    def test_pure_roundtrip(self):
        p = PureQuaternion(0.5, -1.0, 2.0)
        assert p.tolist() == [0.5, -1.0, 2.0]
        assert PureQuaternion.from_sequence(p.tolist()) == p
